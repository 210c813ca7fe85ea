#include "vakm/oper.hpp"

#include <algorithm>
#include <utility>

#include "vakm/error.hpp"

namespace vakm {

namespace {

TruncatedSeries series_pow(const TruncatedSeries& b, int e) {
  TruncatedSeries r =
      TruncatedSeries::from_poly(b.var(), {Scalar(1)}, b.order());
  for (int i = 0; i < e; ++i) r = r * b;
  return r;
}

}  // namespace

OperFrame oper_transform(const OperFrame& frame,
                         const TruncatedSeries& old_of_new) {
  if (frame.exponents.size() != frame.components.size())
    throw Error(Errc::bad_argument, "frame needs one component per exponent");
  for (const TruncatedSeries& c : frame.components)
    if (c.var() != frame.coordinate)
      throw Error(Errc::bad_argument,
                  "component variable does not match the frame coordinate");
  if (old_of_new.order() < 1 || !old_of_new.coeff(0).is_zero() ||
      !old_of_new.coeff(1).invertible())
    throw Error(Errc::not_a_coordinate,
                "coordinate change must vanish at the origin with invertible "
                "slope");
  TruncatedSeries jac = old_of_new.derivative();
  OperFrame out;
  out.coordinate = old_of_new.var();
  out.exponents = frame.exponents;
  out.components.reserve(frame.components.size());
  for (size_t idx = 0; idx < frame.components.size(); ++idx) {
    int d = frame.exponents[idx];
    if (d < 1) throw Error(Errc::bad_argument, "exponents must be >= 1");
    TruncatedSeries comp =
        frame.components[idx].compose(old_of_new) * series_pow(jac, d + 1);
    if (d == 1)
      comp = comp - old_of_new.schwarzian().scaled(Scalar::rational(1, 2));
    out.components.push_back(std::move(comp));
  }
  return out;
}

TruncatedSeries frame_change_series(const Scalar& at,
                                    const TruncatedSeries& s) {
  int n = s.order();
  std::vector<Scalar> co(size_t(n) + 1, Scalar(0));
  // coefficient of z^k in s(at + z) - s(at), by the binomial expansion
  for (int k = 1; k <= n; ++k) {
    Scalar ck(0);
    Scalar pw(1);
    for (int j = k; j <= n; ++j) {
      ck = ck + s.coeff(j) * Scalar(binom(j, k)) * pw;
      pw = pw * at;
    }
    co[size_t(k)] = ck;
  }
  return TruncatedSeries::from_poly("z", std::move(co), n);
}

Scalar gamma_pairing(int h, const KElement& omega, int v, const KElement& f) {
  if (h != v) return Scalar(0);
  KElement w = omega * f;
  Scalar r(0);
  for (int i = 0; i < w.cfg().n(); ++i) r = r + w.residue(i);
  return r;
}

OpFunction OpFunction::one() {
  OpFunction f;
  f.terms_.emplace(OpMono{}, Scalar(1));
  return f;
}

OpFunction OpFunction::generator(int i, int m) {
  if (i < 0) throw Error(Errc::bad_argument, "generator component must be >= 0");
  OpFunction f;
  f.terms_.emplace(OpMono{OpGen{i, m}}, Scalar(1));
  return f;
}

void OpFunction::add_term(OpMono mono, const Scalar& c) {
  if (c.is_zero()) return;
  std::sort(mono.begin(), mono.end());
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(std::move(mono), c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

OpFunction OpFunction::operator+(const OpFunction& o) const {
  OpFunction r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

OpFunction OpFunction::operator-(const OpFunction& o) const {
  OpFunction r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, Scalar(0) - c);
  return r;
}

OpFunction OpFunction::operator*(const OpFunction& o) const {
  OpFunction r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      OpMono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      r.add_term(std::move(m), ca * cb);
    }
  return r;
}

OpFunction OpFunction::scaled(const Scalar& c) const {
  OpFunction r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

long op_degree(const std::vector<int>& exponents, const OpFunction& f) {
  long best = -1;
  for (const auto& [mono, c] : f.terms()) {
    long d = 0;
    for (const OpGen& g : mono) {
      if (g.i < 0 || size_t(g.i) >= exponents.size())
        throw Error(Errc::bad_argument, "generator component out of range");
      d += exponents[size_t(g.i)] - g.m;
    }
    best = std::max(best, d);
  }
  return best;
}

Scalar op_function_eval(const OpFunction& f,
                        const std::vector<KElement>& point) {
  Scalar total(0);
  std::map<std::pair<int, int>, Scalar> cache;
  for (const auto& [mono, c] : f.terms()) {
    Scalar val = c;
    for (const OpGen& g : mono) {
      if (g.i < 0 || size_t(g.i) >= point.size())
        throw Error(Errc::bad_argument,
                    "point assigns no value to this generator");
      auto key = std::pair<int, int>(g.i, g.m);
      auto it = cache.find(key);
      if (it == cache.end()) {
        const KElement& p = point[size_t(g.i)];
        const SigmaConfig& cfg = p.cfg();
        KElement form = KElement::one(cfg);
        if (g.m >= 0) {
          form = KElement::t_power(cfg, g.m);
        } else {
          if (!cfg.center(0).is_zero())
            throw Error(Errc::unsupported,
                        "inverse coordinate powers need the first point at "
                        "the origin");
          form = KElement::pole(cfg, 0, -g.m);
        }
        it = cache.emplace(key, gamma_pairing(g.i, form, g.i, p)).first;
      }
      val = val * it->second;
    }
    total = total + val;
  }
  return total;
}

}  // namespace vakm
