#include "vakm/kelement.hpp"

#include <algorithm>

namespace vakm {

SigmaConfig SigmaConfig::origin() {
  SigmaConfig cfg;
  cfg.pts.push_back({Scalar(0), -1});
  return cfg;
}

SigmaConfig SigmaConfig::symbolic(int n) {
  if (n < 1 || n > 3) throw Error(Errc::bad_argument, "point count must be 1..3");
  SigmaConfig cfg;
  for (int i = 1; i <= n; ++i) cfg.pts.push_back({Scalar::point(i), i});
  return cfg;
}

SigmaConfig SigmaConfig::standard(int n) {
  return n == 1 ? origin() : symbolic(n);
}

SigmaConfig SigmaConfig::numeric(const std::vector<Rat>& centers) {
  SigmaConfig cfg;
  for (const auto& c : centers) cfg.pts.push_back({Scalar(c), -1});
  for (size_t i = 0; i < centers.size(); ++i)
    for (size_t j = i + 1; j < centers.size(); ++j)
      if (centers[i] == centers[j])
        throw Error(Errc::points_not_disjoint, "points not disjoint");
  return cfg;
}

Scalar SigmaConfig::gap(int i, int j) const {
  Scalar d = center(i) - center(j);
  if (!d.invertible()) throw Error(Errc::points_not_disjoint, "points not disjoint");
  return d;
}

SigmaConfig SigmaConfig::without(int j) const {
  SigmaConfig cfg(*this);
  cfg.pts.erase(cfg.pts.begin() + j);
  return cfg;
}

std::string SigmaConfig::label(int i) const {
  const Point& p = pts[size_t(i)];
  if (p.center.is_zero()) return "t";
  if (p.sym >= 0) return std::string("t-") + symbol_name(p.sym);
  return "t-(" + p.center.to_string() + ")";
}

KElement::KElement(SigmaConfig cfg)
    : cfg_(std::move(cfg)), pp_(size_t(cfg_.n())) {}

KElement KElement::constant(const SigmaConfig& cfg, const Scalar& c) {
  KElement x(cfg);
  if (!c.is_zero()) x.poly_.push_back(c);
  return x;
}

KElement KElement::from_poly(const SigmaConfig& cfg, std::vector<Scalar> coeffs) {
  KElement x(cfg);
  x.poly_ = std::move(coeffs);
  x.trim();
  return x;
}

KElement KElement::t_power(const SigmaConfig& cfg, int d) {
  if (d < 0) {
    // negative powers of t require the origin among the marked points
    for (int i = 0; i < cfg.n(); ++i)
      if (cfg.center(i).is_zero()) return pole(cfg, i, -d);
    throw Error(Errc::bad_argument, "negative t-power without origin point");
  }
  KElement x(cfg);
  x.poly_.assign(size_t(d + 1), Scalar(0));
  x.poly_.back() = Scalar(1);
  return x;
}

KElement KElement::pole(const SigmaConfig& cfg, int i, int m, const Scalar& c) {
  if (i < 0 || i >= cfg.n() || m < 1)
    throw Error(Errc::bad_argument, "bad pole location");
  KElement x(cfg);
  if (!c.is_zero()) {
    x.pp_[size_t(i)].assign(size_t(m), Scalar(0));
    x.pp_[size_t(i)].back() = c;
  }
  return x;
}

void KElement::trim() {
  while (!poly_.empty() && poly_.back().is_zero()) poly_.pop_back();
  for (auto& pp : pp_)
    while (!pp.empty() && pp.back().is_zero()) pp.pop_back();
}

int KElement::poly_degree() const { return int(poly_.size()) - 1; }

int KElement::pole_order(int i) const { return int(pp_[size_t(i)].size()); }

bool KElement::is_zero() const {
  if (!poly_.empty()) return false;
  for (const auto& pp : pp_)
    if (!pp.empty()) return false;
  return true;
}

KElement KElement::operator+(const KElement& o) const {
  if (!(cfg_ == o.cfg_))
    throw Error(Errc::bad_argument, "mismatched point configurations");
  KElement r(cfg_);
  r.poly_.assign(std::max(poly_.size(), o.poly_.size()), Scalar(0));
  for (size_t i = 0; i < poly_.size(); ++i) r.poly_[i] = r.poly_[i] + poly_[i];
  for (size_t i = 0; i < o.poly_.size(); ++i) r.poly_[i] = r.poly_[i] + o.poly_[i];
  for (size_t p = 0; p < pp_.size(); ++p) {
    r.pp_[p].assign(std::max(pp_[p].size(), o.pp_[p].size()), Scalar(0));
    for (size_t i = 0; i < pp_[p].size(); ++i) r.pp_[p][i] = r.pp_[p][i] + pp_[p][i];
    for (size_t i = 0; i < o.pp_[p].size(); ++i)
      r.pp_[p][i] = r.pp_[p][i] + o.pp_[p][i];
  }
  r.trim();
  return r;
}

KElement KElement::operator-() const {
  KElement r(*this);
  for (auto& c : r.poly_) c = -c;
  for (auto& pp : r.pp_)
    for (auto& c : pp) c = -c;
  return r;
}

KElement KElement::operator-(const KElement& o) const { return *this + (-o); }

KElement KElement::scaled(const Scalar& s) const {
  if (s.is_zero()) return KElement(cfg_);
  KElement r(*this);
  for (auto& c : r.poly_) c = c * s;
  for (auto& pp : r.pp_)
    for (auto& c : pp) c = c * s;
  r.trim();
  return r;
}

namespace {

// p given by t-power coefficients; returns coefficients in u = t - a
std::vector<Scalar> taylor_shift(const std::vector<Scalar>& p, const Scalar& a) {
  // synthetic division by (t - a), repeated
  std::vector<Scalar> work = p, out;
  out.reserve(p.size());
  for (size_t round = 0; round < p.size(); ++round) {
    Scalar rem(0);
    for (size_t j = work.size(); j-- > 0;) {
      Scalar next = work[j] + rem * a;
      rem = next;
      work[j] = next;
    }
    // after one pass work[0] is p evaluated ... use classic Horner variant
    out.push_back(work[0]);
    work.erase(work.begin());
  }
  return out;
}

}  // namespace

KElement KElement::operator*(const KElement& o) const {
  if (!(cfg_ == o.cfg_))
    throw Error(Errc::bad_argument, "mismatched point configurations");
  KElement r(cfg_);

  auto add_poly = [&r](const std::vector<Scalar>& c) {
    if (r.poly_.size() < c.size()) r.poly_.resize(c.size(), Scalar(0));
    for (size_t i = 0; i < c.size(); ++i) r.poly_[i] = r.poly_[i] + c[i];
  };
  auto add_pole = [&r](int pt, int m, const Scalar& c) {
    auto& pp = r.pp_[size_t(pt)];
    if (int(pp.size()) < m) pp.resize(size_t(m), Scalar(0));
    pp[size_t(m - 1)] = pp[size_t(m - 1)] + c;
  };

  // polynomial x polynomial
  if (!poly_.empty() && !o.poly_.empty()) {
    std::vector<Scalar> c(poly_.size() + o.poly_.size() - 1, Scalar(0));
    for (size_t i = 0; i < poly_.size(); ++i)
      for (size_t j = 0; j < o.poly_.size(); ++j)
        c[i + j] = c[i + j] + poly_[i] * o.poly_[j];
    add_poly(c);
  }

  // polynomial x principal part: expand the polynomial around the pole
  auto poly_times_pp = [&](const std::vector<Scalar>& poly,
                           const std::vector<std::vector<Scalar>>& pps) {
    for (int pt = 0; pt < cfg_.n(); ++pt) {
      const auto& pp = pps[size_t(pt)];
      if (pp.empty() || poly.empty()) continue;
      std::vector<Scalar> b = taylor_shift(poly, cfg_.center(pt));
      std::vector<Scalar> upoly;  // regular part, coefficients in u
      for (int m = 1; m <= int(pp.size()); ++m) {
        const Scalar& c = pp[size_t(m - 1)];
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
          int d = int(j) - m;
          if (d < 0) {
            add_pole(pt, -d, c * b[j]);
          } else {
            if (upoly.size() <= size_t(d)) upoly.resize(size_t(d) + 1, Scalar(0));
            upoly[size_t(d)] = upoly[size_t(d)] + c * b[j];
          }
        }
      }
      if (!upoly.empty()) {
        // shift back from u = t - a to t
        add_poly(taylor_shift(upoly, -cfg_.center(pt)));
      }
    }
  };
  poly_times_pp(poly_, o.pp_);
  poly_times_pp(o.poly_, pp_);

  // principal x principal
  for (int p1 = 0; p1 < cfg_.n(); ++p1) {
    for (int m = 1; m <= int(pp_[size_t(p1)].size()); ++m) {
      const Scalar& c1 = pp_[size_t(p1)][size_t(m - 1)];
      if (c1.is_zero()) continue;
      for (int p2 = 0; p2 < cfg_.n(); ++p2) {
        for (int l = 1; l <= int(o.pp_[size_t(p2)].size()); ++l) {
          const Scalar& c2 = o.pp_[size_t(p2)][size_t(l - 1)];
          if (c2.is_zero()) continue;
          Scalar c = c1 * c2;
          if (p1 == p2) {
            add_pole(p1, m + l, c);
            continue;
          }
          // 1/((t-a)^m (t-b)^l) by expanding each factor at the other pole
          Scalar dab = cfg_.gap(p1, p2);  // a - b
          Scalar dba = -dab;
          for (int p = 1; p <= m; ++p) {
            Scalar coef(binom(-l, m - p));
            Scalar pw(1);
            for (int q = 0; q < l + (m - p); ++q) pw = pw * dab;
            add_pole(p1, p, c * coef * pw.inv());
          }
          for (int q = 1; q <= l; ++q) {
            Scalar coef(binom(-m, l - q));
            Scalar pw(1);
            for (int p = 0; p < m + (l - q); ++p) pw = pw * dba;
            add_pole(p2, q, c * coef * pw.inv());
          }
        }
      }
    }
  }

  r.trim();
  return r;
}

KElement KElement::derivative() const {
  KElement r(cfg_);
  if (poly_.size() > 1) {
    r.poly_.resize(poly_.size() - 1);
    for (size_t i = 1; i < poly_.size(); ++i) r.poly_[i - 1] = Scalar(long(i)) * poly_[i];
  }
  for (size_t pt = 0; pt < pp_.size(); ++pt) {
    if (pp_[pt].empty()) continue;
    r.pp_[pt].assign(pp_[pt].size() + 1, Scalar(0));
    for (int m = 1; m <= int(pp_[pt].size()); ++m)
      r.pp_[pt][size_t(m)] = Scalar(-m) * pp_[pt][size_t(m - 1)];
  }
  r.trim();
  return r;
}

Scalar KElement::residue(int i) const { return coeff_pole(i, 1); }

Scalar KElement::coeff_pole(int i, int m) const {
  const auto& pp = pp_[size_t(i)];
  if (m < 1 || m > int(pp.size())) return Scalar(0);
  return pp[size_t(m - 1)];
}

std::string KElement::to_string() const {
  std::string s;
  bool lead = true;
  for (size_t d = 0; d < poly_.size(); ++d)
    s += coeff_term_str(poly_[d], "t", int(d), lead);
  if (s.empty()) s = "0";
  for (int i = 0; i < cfg_.n(); ++i) {
    if (pp_[size_t(i)].empty()) continue;
    std::string lst;
    for (size_t m = 0; m < pp_[size_t(i)].size(); ++m) {
      if (m) lst += ", ";
      lst += pp_[size_t(i)][m].to_string();
    }
    std::string nm = cfg_.point_symbol(i) >= 0 ? symbol_name(cfg_.point_symbol(i))
                     : cfg_.center(i).is_zero() ? std::string("0")
                                                : cfg_.center(i).to_string();
    s += " | " + nm + ": [" + lst + "]";
  }
  return s;
}

KElement phi_basis(const SigmaConfig& cfg, int m, int i) {
  if (i < 0 || i >= cfg.n()) throw Error(Errc::bad_argument, "phi basis index out of range");
  KElement r = KElement::one(cfg);
  for (int l = 0; l < cfg.n(); ++l) {
    int e = m + (l < i ? 1 : 0);
    if (e == 0) continue;
    KElement f(cfg);
    if (e > 0) {
      // (t - a_l)^e
      std::vector<Scalar> lin{-cfg.center(l), Scalar(1)};
      f = KElement::from_poly(cfg, lin);
      KElement acc = f;
      for (int j = 1; j < e; ++j) acc = acc * f;
      f = acc;
    } else {
      f = KElement::pole(cfg, l, -e);
    }
    r = r * f;
  }
  return r;
}

KElement reg_basis(const SigmaConfig& cfg, int d) {
  if (d < 0) throw Error(Errc::bad_argument, "regular degree must be >= 0");
  return phi_basis(cfg, d / cfg.n(), d % cfg.n());
}

std::vector<Scalar> decompose_regular(const SigmaConfig& cfg,
                                      std::vector<Scalar> p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  std::vector<Scalar> out(p.size(), Scalar(0));
  while (!p.empty()) {
    int d = int(p.size()) - 1;
    Scalar c = p.back();
    out[size_t(d)] = c;
    const std::vector<Scalar> basis = reg_basis(cfg, d).poly();
    for (size_t j = 0; j < basis.size(); ++j) p[j] = p[j] - c * basis[j];
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  }
  return out;
}

Scalar residue_sigma(const KElement& g, const KElement& f) {
  KElement w = g * f.derivative();
  Scalar r(0);
  for (int i = 0; i < w.cfg().n(); ++i) r = r + w.residue(i);
  return r;
}

int LaurentLocal::depth() const {
  int d = int(principal.size());
  while (d > 0 && principal[size_t(d - 1)].is_zero()) --d;
  return d;
}

Scalar LaurentLocal::coeff(int d) const {
  if (d < 0) {
    size_t m = size_t(-d);
    if (m > principal.size()) return Scalar(0);
    return principal[m - 1];
  }
  return tail.coeff(d);
}

LaurentLocal LaurentLocal::operator+(const LaurentLocal& o) const {
  LaurentLocal r{principal, tail + o.tail};
  if (r.principal.size() < o.principal.size())
    r.principal.resize(o.principal.size(), Scalar(0));
  for (size_t i = 0; i < o.principal.size(); ++i)
    r.principal[i] = r.principal[i] + o.principal[i];
  return r;
}

LaurentLocal LaurentLocal::operator*(const LaurentLocal& o) const {
  int p1 = depth(), p2 = o.depth();
  int m1 = tail.order(), m2 = o.tail.order();
  // coefficient d of the product needs factors up to d+p2 and d+p1
  int valid = std::min(m1 - p2, m2 - p1);
  if (valid < 0) throw Error(Errc::window_too_small, "tail order too small for product");
  LaurentLocal r{std::vector<Scalar>(size_t(p1 + p2), Scalar(0)),
                 TruncatedSeries(tail.var(), valid)};
  for (int d = -(p1 + p2); d <= valid; ++d) {
    Scalar acc(0);
    for (int p = -p1; p <= m1; ++p) {
      int q = d - p;
      if (q < -p2 || q > m2) continue;
      acc = acc + coeff(p) * o.coeff(q);
    }
    if (d < 0)
      r.principal[size_t(-d - 1)] = acc;
    else
      r.tail = r.tail.with_coeff(d, acc);
  }
  return r;
}

bool LaurentLocal::same_through(const LaurentLocal& o, int order) const {
  int dmax = std::max(depth(), o.depth());
  if (order > tail.order() || order > o.tail.order())
    throw Error(Errc::window_too_small, "comparison past tail order");
  for (int d = -dmax; d <= order; ++d)
    if (!(coeff(d) == o.coeff(d))) return false;
  return true;
}

std::string LaurentLocal::to_string() const {
  std::string s;
  bool lead = true;
  for (int m = depth(); m >= 1; --m)
    s += coeff_term_str(principal[size_t(m - 1)], tail.var(), -m, lead);
  std::string t = tail.to_string();
  if (s.empty()) return t;
  return s + " + " + t;
}

LaurentLocal local_expansion(const KElement& g, int i, int order) {
  const SigmaConfig& cfg = g.cfg();
  if (i < 0 || i >= cfg.n()) throw Error(Errc::bad_argument, "expansion point out of range");
  LaurentLocal r{g.principal(i), TruncatedSeries(cfg.label(i), order)};
  // polynomial part re-expanded around a_i
  if (!g.poly().empty()) {
    std::vector<Scalar> b = taylor_shift(g.poly(), cfg.center(i));
    for (size_t d = 0; d < b.size() && int(d) <= order; ++d)
      r.tail = r.tail.with_coeff(int(d), r.tail.coeff(int(d)) + b[d]);
  }
  // principal parts at the other points are regular here
  for (int j = 0; j < cfg.n(); ++j) {
    if (j == i) continue;
    const auto& pp = g.principal(j);
    if (pp.empty()) continue;
    Scalar d0 = cfg.gap(i, j);  // a_i - a_j
    for (int m = 1; m <= int(pp.size()); ++m) {
      const Scalar& c = pp[size_t(m - 1)];
      if (c.is_zero()) continue;
      Scalar pw = d0.inv();
      for (int rep = 1; rep < m; ++rep) pw = pw * d0.inv();
      // (u + d0)^(-m) = sum_q binom(-m, q) d0^(-m-q) u^q
      for (int q = 0; q <= order; ++q) {
        r.tail = r.tail.with_coeff(q, r.tail.coeff(q) + c * Scalar(binom(-m, q)) * pw);
        pw = pw * d0.inv();
      }
    }
  }
  return r;
}

KElement ran_merge(const KElement& x, int j, int i) {
  const SigmaConfig& cfg = x.cfg();
  if (i == j || i < 0 || j < 0 || i >= cfg.n() || j >= cfg.n())
    throw Error(Errc::bad_argument, "bad merge indices");
  int sj = cfg.point_symbol(j), si = cfg.point_symbol(i);
  if (sj < 0 || si < 0)
    throw Error(Errc::unsupported, "merge needs symbolic points");
  SigmaConfig merged = cfg.without(j);
  KElement r(merged);
  std::vector<Scalar> poly;
  poly.reserve(x.poly().size());
  for (const auto& c : x.poly()) poly.push_back(c.rename(sj, si));
  r = r + KElement::from_poly(merged, std::move(poly));
  for (int p = 0; p < cfg.n(); ++p) {
    const auto& pp = x.principal(p);
    if (pp.empty()) continue;
    // poles at the collided point land on the target; later indices shift down
    int tgt = (p == j ? i : p);
    if (tgt > j) --tgt;
    for (int m = 1; m <= int(pp.size()); ++m) {
      Scalar c = pp[size_t(m - 1)].rename(sj, si);
      if (!c.is_zero()) r = r + KElement::pole(merged, tgt, m, c);
    }
  }
  return r;
}

}  // namespace vakm
