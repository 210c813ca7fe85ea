#include "vakm/actions.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace vakm {

namespace {

const SigmaConfig& one_point() {
  static SigmaConfig cfg = SigmaConfig::origin();
  return cfg;
}

std::vector<Scalar> poly_derivative(const std::vector<Scalar>& p) {
  std::vector<Scalar> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(Scalar(long(i)) * p[i]);
  return d;
}

bool poly_zero(const std::vector<Scalar>& p) {
  return std::all_of(p.begin(), p.end(),
                     [](const Scalar& c) { return c.is_zero(); });
}

// prefix modes of w before position i applied to st, right to left
VState rebuild_prefix(const VWord& w, size_t i, VState st) {
  for (size_t j = i; j-- > 0;) st = mode_action(w[j].lie, -w[j].n, st);
  return st;
}

VState suffix_state(const LiePresentation* g, const VWord& w, size_t i) {
  return basis_state(g, VWord(w.begin() + long(i) + 1, w.end()));
}

}  // namespace

DerElement::DerElement(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
  if (!c_.empty() && !c_[0].is_zero())
    throw Error(Errc::bad_argument, "vector field must vanish at the origin");
}

DerElement der_bracket(const DerElement& f, const DerElement& g) {
  auto df = poly_derivative(f.coeffs());
  auto dg = poly_derivative(g.coeffs());
  size_t n = f.coeffs().size() + g.coeffs().size();
  std::vector<Scalar> out(n, Scalar(0));
  for (size_t i = 0; i < f.coeffs().size(); ++i)
    for (size_t j = 0; j < dg.size(); ++j)
      out[i + j] = out[i + j] + f.coeffs()[i] * dg[j];
  for (size_t i = 0; i < g.coeffs().size(); ++i)
    for (size_t j = 0; j < df.size(); ++j)
      out[i + j] = out[i + j] - g.coeffs()[i] * df[j];
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return DerElement(std::move(out));
}

// ---- torsor-side action: Taylor shift of f through each mode ----

VState l_phi(const DerElement& f, const VState& v) {
  const LiePresentation* g = v.algebra();
  VState out(g);
  if (poly_zero(f.coeffs())) return out;
  KElement fk = KElement::from_poly(one_point(), f.coeffs());
  int fdeg = int(f.coeffs().size()) - 1;

  // d^k f / k! as t-power coefficients, k = 1..fdeg
  std::vector<std::vector<Scalar>> dsh(size_t(fdeg) + 1);
  dsh[0] = f.coeffs();
  for (int k = 1; k <= fdeg; ++k) {
    dsh[size_t(k)] = poly_derivative(dsh[size_t(k) - 1]);
    for (Scalar& c : dsh[size_t(k)]) c = c * Scalar(Rat(1, unsigned(k)));
  }

  for (const auto& [w, p] : v.words()) {
    KElement dp = fk * p.derivative();
    if (!dp.is_zero()) out.add_word(w, dp);
    for (size_t i = 0; i < w.size(); ++i) {
      int m = -w[i].n;
      for (int k = 1; k <= fdeg; ++k) {
        // z^m picks up m * (d^k f / k!) z^{m+k-1}
        VState chain = mode_action(w[i].lie, m + k - 1, suffix_state(g, w, i));
        chain = rebuild_prefix(w, i, std::move(chain));
        if (chain.is_zero()) continue;
        KElement mult =
            KElement::from_poly(one_point(), dsh[size_t(k)]).scaled(Scalar(m)) * p;
        for (const auto& [w2, p2] : chain.words()) {
          KElement q = p2 * mult;
          if (!q.is_zero()) out.add_word(w2, q);
        }
      }
    }
  }
  return out;
}

// ---- pairing-kernel action: two-variable re-expansion over dual numbers ----

VState l_psi(const DerElement& f, const VState& v) {
  const LiePresentation* g = v.algebra();
  VState out(g);
  if (poly_zero(f.coeffs())) return out;
  size_t n = f.coeffs().size();

  // rows[j] = t2-coefficients of w^j in f(t1) - f(t2), w = t1 - t2
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n, Scalar(0)));
  for (size_t p = 0; p < n; ++p) {
    if (f.coeffs()[p].is_zero()) continue;
    for (size_t j = 1; j <= p; ++j)
      rows[j][p - j] = rows[j][p - j] + f.coeffs()[p] * Scalar(binom(long(p), long(j)));
  }

  KElement fk = KElement::from_poly(one_point(), f.coeffs());
  for (const auto& [w, p] : v.words()) {
    KElement dp = fk * p.derivative();
    if (!dp.is_zero()) out.add_word(w, dp);
    for (size_t i = 0; i < w.size(); ++i) {
      int m = -w[i].n;
      // (s1-s2)^m - (t1-t2)^m = e m (t1-t2)^{m-1} (f(t1)-f(t2)) + O(e^2)
      for (size_t j = 1; j < n; ++j) {
        if (poly_zero(rows[j])) continue;
        VState chain =
            mode_action(w[i].lie, m - 1 + int(j), suffix_state(g, w, i));
        chain = rebuild_prefix(w, i, std::move(chain));
        if (chain.is_zero()) continue;
        KElement mult =
            KElement::from_poly(one_point(), rows[j]).scaled(Scalar(m)) * p;
        for (const auto& [w2, p2] : chain.words()) {
          KElement q = p2 * mult;
          if (!q.is_zero()) out.add_word(w2, q);
        }
      }
    }
  }
  return out;
}

// ---- finite coordinate change and the canonical connection ----

namespace {

using TState = std::map<VWord, TruncatedSeries>;

void tadd(TState& m, const VWord& w, const TruncatedSeries& s) {
  if (s.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, s);
    return;
  }
  TruncatedSeries sum = it->second + s;
  if (sum.is_zero())
    m.erase(it);
  else
    it->second = sum;
}

// Laurent window in z with series-in-t coefficients
struct ZSer {
  int lo = 0;
  std::vector<TruncatedSeries> c;
};

// z-coefficients of (s(t+z)-s(t))^m for every m met in the states; index
// n >= 1 holds the kernel for depth n, i.e. power -n, window capped at hi
struct PhiKernels {
  std::vector<ZSer> neg;  // neg[n], n >= 1
};

// structural zeros are skipped so they cannot shrink tracked orders
std::vector<TruncatedSeries> zmul(const std::vector<TruncatedSeries>& a,
                                  const std::vector<TruncatedSeries>& b,
                                  size_t keep, int zorder) {
  std::vector<TruncatedSeries> out;
  for (size_t i = 0; i < keep; ++i) {
    TruncatedSeries acc = TruncatedSeries("t", zorder);
    bool set = false;
    for (size_t j = 0; j <= i && j < a.size(); ++j) {
      if (i - j >= b.size()) continue;
      if (a[j].is_zero() || b[i - j].is_zero()) continue;
      TruncatedSeries term = a[j] * b[i - j];
      acc = set ? acc + term : term;
      set = true;
    }
    out.push_back(set ? acc : TruncatedSeries("t", zorder));
  }
  return out;
}

PhiKernels build_kernels(const TruncatedSeries& s, int maxn, int hi) {
  // w(z) = (s(t+z)-s(t))/z as z-coefficients sigma_{k+1} = d^{k+1}s/(k+1)!
  size_t len = size_t(hi + maxn) + 1;
  std::vector<TruncatedSeries> wser;
  TruncatedSeries d = s;
  Rat fact = 1;
  for (size_t k = 1; k <= len; ++k) {
    if (d.order() < 1) throw Error(Errc::window_too_small, "coordinate series order too small");
    d = d.derivative();
    fact *= long(k);
    wser.push_back(d.scaled(Scalar(Rat(1) / fact)));
  }
  // series inverse of w in z; constant term s'(t) must stay invertible
  std::vector<TruncatedSeries> winv{wser[0].mul_inverse()};
  for (size_t i = 1; i < len; ++i) {
    TruncatedSeries acc = TruncatedSeries("t", winv[0].order());
    for (size_t j = 0; j < i; ++j) {
      if (winv[j].is_zero() || wser[i - j].is_zero()) continue;
      acc = acc - winv[j] * wser[i - j];
    }
    winv.push_back(acc * winv[0]);
  }
  PhiKernels out;
  out.neg.resize(size_t(maxn) + 1);
  std::vector<TruncatedSeries> pw = winv;
  for (int nn = 1; nn <= maxn; ++nn) {
    if (nn > 1) pw = zmul(pw, winv, len, winv[0].order());
    out.neg[size_t(nn)] = ZSer{-nn, std::vector<TruncatedSeries>(
                                        pw.begin(), pw.begin() + long(hi + nn) + 1)};
  }
  return out;
}

Scalar constant_part(const KElement& f) {
  if (f.is_zero()) return Scalar(0);
  if (f.poly_degree() != 0)
    throw Error(Errc::bad_argument, "expected a constant coefficient");
  return f.poly()[0];
}

void phi_rec(const LiePresentation* g, const PhiKernels& ker, const VWord& w,
             long i, const VState& st, const TruncatedSeries& coeff, int hi,
             TState& out) {
  if (st.is_zero()) return;
  if (i < 0) {
    for (const auto& [w2, p2] : st.words()) {
      Scalar c2 = constant_part(p2);
      if (!c2.is_zero()) tadd(out, w2, coeff.scaled(c2));
    }
    return;
  }
  const ZSer& z = ker.neg[size_t(w[size_t(i)].n)];
  for (int q = z.lo; q <= hi; ++q) {
    const TruncatedSeries& cq = z.c[size_t(q - z.lo)];
    if (cq.is_zero()) continue;
    phi_rec(g, ker, w, i - 1, mode_action(w[size_t(i)].lie, q, st), coeff * cq,
            hi, out);
  }
}

TState phi_map(const LiePresentation* g, const PhiKernels& ker,
               const TState& v, int hi) {
  TState out;
  for (const auto& [w, p] : v)
    phi_rec(g, ker, w, long(w.size()) - 1, VState::vacuum(g), p, hi, out);
  return out;
}

// (jac? jac*T : T) + d/dt
TState nabla(const LiePresentation* g, const TState& v,
             const TruncatedSeries* jac) {
  TState out;
  for (const auto& [w, p] : v) {
    VState tw = translation(basis_state(g, w));
    TruncatedSeries pc = jac ? p * *jac : p;
    for (const auto& [w2, c2] : tw.words())
      tadd(out, w2, pc.scaled(constant_part(c2)));
    if (p.order() < 1)
      throw Error(Errc::window_too_small, "series order exhausted");
    tadd(out, w, p.derivative());
  }
  return out;
}

int min_order(const TState& a, int acc) {
  for (const auto& [w, p] : a) acc = std::min(acc, p.order());
  return acc;
}

TState truncate_all(const TState& a, int order) {
  TState out;
  for (const auto& [w, p] : a) {
    TruncatedSeries q = p.truncated(order);
    if (!q.is_zero()) out.emplace(w, q);
  }
  return out;
}

}  // namespace

bool connection_check(const VState& v, const TruncatedSeries& s) {
  if (s.order() < 1 || !s.coeff(0).is_zero() || !s.coeff(1).invertible())
    throw Error(Errc::not_a_coordinate,
                "coordinate must vanish at the origin with invertible slope");
  const LiePresentation* g = v.algebra();
  if (v.is_zero()) return true;

  int deg = v.degree();
  int maxn = deg + 1;  // nabla raises depth once before the change
  int hi = deg + 1;
  PhiKernels ker = build_kernels(s, maxn, hi);

  TState tv;
  for (const auto& [w, p] : v.words()) {
    for (int i = 0; i < p.cfg().n(); ++i)
      if (p.pole_order(i) > 0)
        throw Error(Errc::bad_argument, "state coefficients must be polynomial");
    tadd(tv, w, TruncatedSeries::from_poly("t", p.poly(), s.order()));
  }

  TruncatedSeries sprime = s.derivative();
  TState lhs = nabla(g, phi_map(g, ker, tv, hi), nullptr);
  TState rhs = phi_map(g, ker, nabla(g, tv, &sprime), hi);

  int cmp = min_order(lhs, min_order(rhs, s.order()));
  if (cmp < 0) throw Error(Errc::window_too_small, "no common comparison order");
  lhs = truncate_all(lhs, cmp);
  rhs = truncate_all(rhs, cmp);
  if (lhs.size() != rhs.size()) return false;
  for (const auto& [w, p] : lhs) {
    auto it = rhs.find(w);
    if (it == rhs.end() || !(it->second == p)) return false;
  }
  return true;
}

}  // namespace vakm
