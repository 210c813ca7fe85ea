#include "vakm/center.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

#include "vakm/linalg.hpp"

namespace vakm {

namespace {

// indices whose adjoint action is diagonal on the chosen basis:
// [x_i, x_j] proportional to x_j for every j
std::vector<int> cartan_indices(const LiePresentation& g) {
  std::vector<int> out;
  for (int i = 0; i < g.dim(); ++i) {
    bool diag = true;
    for (int j = 0; diag && j < g.dim(); ++j)
      for (int p = 0; p < g.dim(); ++p)
        if (p != j && g.c[size_t(i)][size_t(j)][size_t(p)] != 0) {
          diag = false;
          break;
        }
    if (diag) out.push_back(i);
  }
  return out;
}

bool weight_zero(const LiePresentation& g, const std::vector<int>& cart,
                 const VWord& w) {
  for (int h : cart) {
    Rat s = 0;
    for (const VMode& m : w) s += g.c[size_t(h)][size_t(m.lie)][size_t(m.lie)];
    if (s != 0) return false;
  }
  return true;
}

Scalar constant_of(const KElement& f) {
  if (f.is_zero()) return Scalar(0);
  if (f.poly_degree() != 0)
    throw Error(Errc::bad_argument, "state carries a function part");
  return f.poly()[0];
}

// Rows of the stacked maps x_(m), mlo <= m <= mhi, over the given columns.
// Columns must all have weight zero; diagonal zero modes are skipped since
// they scale each word by its weight.
SMat condition_matrix(const LiePresentation* g, const std::vector<VWord>& cols,
                      const std::vector<int>& cart, int mlo, int mhi) {
  std::map<std::tuple<int, int, VWord>, size_t> rowid;
  SMat m;
  for (size_t j = 0; j < cols.size(); ++j) {
    VState st = basis_state(g, cols[j]);
    for (int x = 0; x < g->dim(); ++x) {
      bool diag = std::find(cart.begin(), cart.end(), x) != cart.end();
      for (int mm = mlo; mm <= mhi; ++mm) {
        if (mm == 0 && diag) continue;
        VState img = mode_action(x, mm, st);
        for (const auto& [w, f] : img.words()) {
          auto key = std::make_tuple(x, mm, w);
          auto it = rowid.find(key);
          if (it == rowid.end()) {
            it = rowid.emplace(key, m.size()).first;
            m.emplace_back(cols.size(), Scalar(0));
          }
          m[it->second][j] = constant_of(f);
        }
      }
    }
  }
  return m;
}

std::vector<SVec> kernel_of(const SMat& m, size_t ncols) {
  if (m.empty()) {
    std::vector<SVec> id;
    for (size_t j = 0; j < ncols; ++j) {
      SVec e(ncols, Scalar(0));
      e[j] = Scalar(1);
      id.push_back(std::move(e));
    }
    return id;
  }
  return nullspace_basis(m);
}

// ---- polynomials in the level symbol, ascending coefficients ----

std::vector<Rat> poly_trim(std::vector<Rat> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  a = poly_trim(std::move(a));
  while (a.size() >= b.size()) {
    Rat q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    a = poly_trim(std::move(a));
  }
  return a;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    auto r = poly_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rat eval_poly(const std::vector<Rat>& p, const Rat& x) {
  Rat v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// coefficients of a scalar as a polynomial in the level symbol, recovered
// from point evaluations; two spare points certify the degree bound
std::vector<Rat> level_poly(const Scalar& s) {
  const int dmax = 4;
  std::vector<Rat> val;
  for (int k = 0; k <= dmax + 2; ++k) {
    Scalar e = s.substitute({{kSymLevel, Rat(k)}});
    if (!e.is_rational())
      throw Error(Errc::unsupported, "obstruction is not polynomial in the level");
    val.push_back(e.rational_value());
  }
  SMat a(size_t(dmax) + 1, SVec(size_t(dmax) + 1));
  SVec b(size_t(dmax) + 1);
  for (int i = 0; i <= dmax; ++i) {
    Rat p = 1;
    for (int j = 0; j <= dmax; ++j) {
      a[size_t(i)][size_t(j)] = Scalar(p);
      p *= i;
    }
    b[size_t(i)] = Scalar(val[size_t(i)]);
  }
  SVec x;
  solve(a, b, x);
  std::vector<Rat> p;
  for (const Scalar& c : x) p.push_back(c.rational_value());
  p = poly_trim(std::move(p));
  for (int k = dmax + 1; k <= dmax + 2; ++k)
    if (eval_poly(p, Rat(k)) != val[size_t(k)])
      throw Error(Errc::unsupported, "obstruction degree exceeds the sampling window");
  return p;
}

}  // namespace

CenterBasis center_basis(const LiePresentation& g, const Scalar& level,
                         int degree) {
  CenterBasis out;
  out.degree = degree;
  out.level = level;
  out.algebra = std::make_shared<LiePresentation>(g.at_level(level));
  const LiePresentation* gl = out.algebra.get();

  auto cart = cartan_indices(*gl);
  std::vector<VWord> cols;
  for (auto& w : pbw_words(gl, degree))
    if (weight_zero(*gl, cart, w)) cols.push_back(w);
  if (cols.empty()) return out;

  // any kernel vector is supported on weight-zero words: diagonal zero
  // modes scale each word by its weight
  SMat m = condition_matrix(gl, cols, cart, 0, degree);
  auto null = kernel_of(m, cols.size());
  if (null.empty()) return out;

  SMat b(null.begin(), null.end());
  rref(b);
  for (const SVec& row : b) {
    VState st(gl);
    for (size_t j = 0; j < cols.size(); ++j)
      if (!row[j].is_zero()) st.add_word(cols[j], row[j]);
    if (!st.is_zero()) out.states.push_back(std::move(st));
  }
  return out;
}

bool is_central(const VState& v) {
  if (v.is_zero()) return true;
  if (v.has_opart())
    throw Error(Errc::bad_argument, "central test needs a plain state");
  const LiePresentation* g = v.algebra();
  for (int x = 0; x < g->dim(); ++x)
    for (int m = 0; m <= v.degree(); ++m)
      if (!mode_action(x, m, v).is_zero()) return false;
  return true;
}

std::vector<long> graded_dimension_center(const LiePresentation& g,
                                          const Scalar& level, int dmax) {
  std::vector<long> dims;
  for (int d = 0; d <= dmax; ++d)
    dims.push_back(long(center_basis(g, level, d).states.size()));
  return dims;
}

std::vector<long> op_graded_dimension(const LiePresentation& g, int dmax) {
  std::vector<long> dim(size_t(dmax) + 1, 0);
  dim[0] = 1;
  for (int di : g.exponents)
    for (int gen = di + 1; gen <= dmax; ++gen)
      for (int d = gen; d <= dmax; ++d) dim[size_t(d)] += dim[size_t(d - gen)];
  return dim;
}

VState commutative_product(const VState& a, const VState& b,
                           const TruncatedSeries& s) {
  if (!is_central(a) || !is_central(b))
    throw Error(Errc::not_central, "not central");
  if (s.order() < 1 || !s.coeff(0).is_zero() || !s.coeff(1).invertible())
    throw Error(Errc::not_a_coordinate, "product coordinate must vanish at the origin with invertible slope");
  TruncatedSeries ds = s.derivative();
  for (int i = 1; i <= ds.order(); ++i)
    if (!ds.coeff(i).is_zero())
      throw Error(Errc::unsupported,
                  "coordinate derivative must be constant for a representable product");
  return nth_product(a, b, -1).scaled(ds.coeff(0).inv());
}

// Level at which the degree-2 invariant line becomes central: the positive
// modes applied to the invariant give coordinates polynomial in the level
// symbol, and their common root is the critical value.
Scalar critical_level(const LiePresentation& g) {
  LiePresentation gs = g.at_level(Scalar::level());
  auto cart = cartan_indices(gs);
  std::vector<VWord> cols;
  for (auto& w : pbw_words(&gs, 2))
    if (weight_zero(gs, cart, w)) cols.push_back(w);

  SMat m0 = condition_matrix(&gs, cols, cart, 0, 0);
  auto inv = kernel_of(m0, cols.size());
  if (inv.size() != 1)
    throw Error(Errc::unsupported, "degree-2 invariant space is not a line");

  VState v(&gs);
  for (size_t j = 0; j < cols.size(); ++j)
    if (!inv[0][j].is_zero()) v.add_word(cols[j], inv[0][j]);

  std::vector<std::vector<Rat>> conds;
  for (int x = 0; x < gs.dim(); ++x)
    for (int mm = 1; mm <= 2; ++mm) {
      VState img = mode_action(x, mm, v);
      for (const auto& [w, f] : img.words()) {
        auto p = level_poly(constant_of(f));
        if (!p.empty()) conds.push_back(std::move(p));
      }
    }
  if (conds.empty())
    throw Error(Errc::unsupported, "no level obstruction in degree 2");

  std::vector<Rat> common = conds[0];
  for (size_t i = 1; i < conds.size(); ++i)
    common = poly_gcd(std::move(common), conds[i]);
  if (common.size() != 2)
    throw Error(Errc::unsupported, "level obstruction has no simple common root");
  return Scalar(-common[0]);
}

}  // namespace vakm
