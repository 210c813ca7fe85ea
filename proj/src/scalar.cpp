#include "vakm/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace vakm {

const char* symbol_name(int i) {
  static const char* names[kNumSymbols] = {"k", "a1", "a2", "a3"};
  return names[i];
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kNumSymbols; ++i) r.e[i] = int16_t(e[i] + o.e[i]);
  return r;
}

Poly::Poly(const Rat& c) {
  if (c != 0) t_.push_back({Monomial{}, c});
}

Poly Poly::symbol(int i) {
  if (i < 0 || i >= kNumSymbols) throw Error(Errc::bad_argument, "symbol index out of range");
  Poly p;
  Monomial m;
  m.e[i] = 1;
  p.t_.push_back({m, Rat(1)});
  return p;
}

Poly Poly::from_terms(std::vector<Term>&& t) {
  std::sort(t.begin(), t.end(),
            [](const Term& a, const Term& b) { return b.m < a.m; });
  Poly p;
  for (auto& term : t) {
    if (term.c == 0) continue;
    if (!p.t_.empty() && p.t_.back().m == term.m) {
      p.t_.back().c += term.c;
      if (p.t_.back().c == 0) p.t_.pop_back();
    } else {
      p.t_.push_back(std::move(term));
    }
  }
  return p;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_[0].m.is_one());
}

const Rat& Poly::constant_value() const {
  static const Rat zero(0);
  if (t_.empty()) return zero;
  return t_[0].c;
}

int Poly::degree(int var) const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, int(t.m.e[var]));
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Term> t;
  t.reserve(t_.size() + o.t_.size());
  t.insert(t.end(), t_.begin(), t_.end());
  t.insert(t.end(), o.t_.begin(), o.t_.end());
  return from_terms(std::move(t));
}

Poly Poly::operator-() const {
  Poly p(*this);
  for (auto& t : p.t_) t.c = -t.c;
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::map<Monomial, Rat> acc;
  for (const auto& a : t_)
    for (const auto& b : o.t_) acc[a.m * b.m] += a.c * b.c;
  std::vector<Term> t;
  t.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) t.push_back({m, c});
  // map iterates ascending; from_terms resorts descending
  return from_terms(std::move(t));
}

Poly Poly::scaled(const Rat& c) const {
  if (c == 0) return Poly();
  Poly p(*this);
  for (auto& t : p.t_) t.c *= c;
  return p;
}

Poly Poly::substitute(int var, const Rat& value) const {
  std::vector<Term> t;
  for (const auto& term : t_) {
    Rat c = term.c;
    for (int j = 0; j < term.m.e[var]; ++j) c *= value;
    Monomial m = term.m;
    m.e[var] = 0;
    t.push_back({m, c});
  }
  return from_terms(std::move(t));
}

Poly Poly::rename(int var, int other) const {
  std::vector<Term> t;
  for (const auto& term : t_) {
    Monomial m = term.m;
    m.e[other] = int16_t(m.e[other] + m.e[var]);
    m.e[var] = 0;
    t.push_back({m, term.c});
  }
  return from_terms(std::move(t));
}

const Rat& Poly::lead_coeff() const { return t_.front().c; }

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string monomial_str(const Monomial& m) {
  std::string s;
  for (int i = 0; i < kNumSymbols; ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += symbol_name(i);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : t_) {
    Rat c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string ms = monomial_str(t.m);
    if (ms.empty()) {
      s += rat_str(c);
    } else if (c == 1) {
      s += ms;
    } else if (c.get_den() == 1) {
      s += rat_str(c) + ms;
    } else {
      s += rat_str(c) + " " + ms;
    }
  }
  return s;
}

// ---- multivariate gcd via primitive pseudo-remainder sequences ----

namespace {

// coefficient vectors in one chosen variable; entries are polynomials in the
// remaining symbols
using UniPoly = std::vector<Poly>;

void utrim(UniPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

UniPoly to_uni(const Poly& p, int v) {
  UniPoly u(size_t(p.degree(v) + 1));
  for (const auto& t : p.terms()) {
    Monomial m = t.m;
    int d = m.e[v];
    m.e[v] = 0;
    std::vector<Poly::Term> one;
    one.push_back({m, t.c});
    u[size_t(d)] = u[size_t(d)] + Poly::from_terms(std::move(one));
  }
  utrim(u);
  return u;
}

Poly from_uni(const UniPoly& u, int v) {
  Poly r;
  Poly vp = Poly::symbol(v);
  Poly vpow(1L);
  for (size_t i = 0; i < u.size(); ++i) {
    if (i > 0) vpow = vpow * vp;
    if (!u[i].is_zero()) r = r + u[i] * vpow;
  }
  return r;
}

UniPoly umul_scalar(UniPoly u, const Poly& c) {
  for (auto& x : u) x = x * c;
  utrim(u);
  return u;
}

UniPoly usub(UniPoly a, const UniPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  utrim(a);
  return a;
}

// c * v^s * b
UniPoly ushift_mul(const UniPoly& b, int s, const Poly& c) {
  UniPoly r(b.size() + size_t(s));
  for (size_t i = 0; i < b.size(); ++i) r[i + size_t(s)] = b[i] * c;
  utrim(r);
  return r;
}

Poly ucontent(const UniPoly& u) {
  Poly g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

UniPoly udiv_scalar(UniPoly u, const Poly& d) {
  for (auto& x : u)
    if (!x.is_zero()) x = divexact(x, d);
  return u;
}

// divides out the rational content; keeps integer growth polynomial along the
// remainder sequence (gcds are only defined up to scalars anyway)
UniPoly ustrip(UniPoly u) {
  mpz_class g(0), l(1);
  for (const auto& c : u)
    for (const auto& t : c.terms()) {
      g = gcd(g, t.c.get_num());
      l = lcm(l, t.c.get_den());
    }
  if (g == 0) return u;
  Rat s(l, g);
  s.canonicalize();
  if (s != 1)
    for (auto& x : u) x = x.scaled(s);
  return u;
}

UniPoly prem(UniPoly r, const UniPoly& b) {
  const Poly& lcb = b.back();
  const bool unit_lead = lcb.is_constant() && lcb.constant_value() == Rat(1);
  while (!r.empty() && r.size() >= b.size()) {
    int s = int(r.size() - b.size());
    Poly lcr = r.back();
    if (unit_lead)
      r = ustrip(usub(std::move(r), ushift_mul(b, s, lcr)));
    else
      r = ustrip(usub(umul_scalar(std::move(r), lcb), ushift_mul(b, s, lcr)));
  }
  return r;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rat(1) / p.lead_coeff());
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(1L);
  // a common factor can only involve shared variables
  int v = -1;
  for (int i = 0; i < kNumSymbols && v < 0; ++i)
    if (a.degree(i) > 0 && b.degree(i) > 0) v = i;
  if (v < 0) return Poly(1L);
  const Poly* hi = &a;
  const Poly* lo = &b;
  if (hi->degree(v) < lo->degree(v)) std::swap(hi, lo);
  UniPoly A = to_uni(*hi, v), B = to_uni(*lo, v);
  // content handling stays on the divisor side; the dividend is typically the
  // large operand and its content is only probed until the running gcd
  // collapses to a constant
  Poly cb = ucontent(B);
  B = ustrip(udiv_scalar(std::move(B), cb));
  Poly cg(1L);
  if (!cb.is_constant()) {
    Poly g = cb;
    for (const auto& c : A) {
      g = gcd(g, c);
      if (g.is_constant()) break;
    }
    cg = g;
  }
  A = ustrip(std::move(A));
  // primitive remainder sequence; full content strips are rationed because the
  // sequence is short and the final strip already removes accumulated factors
  int step = 0;
  while (true) {
    UniPoly R = prem(A, B);
    if (R.empty()) {
      Poly g = from_uni(udiv_scalar(std::move(B), ucontent(B)), v);
      return make_monic(cg * g);
    }
    if (R.size() == 1) return make_monic(cg);
    A = std::move(B);
    if (++step % 5 == 0) {
      Poly cr = ucontent(R);
      B = udiv_scalar(std::move(R), cr);
    } else {
      B = ustrip(std::move(R));
    }
  }
}

bool try_divexact(const Poly& a, const Poly& b, Poly& q) {
  if (b.is_zero()) throw Error(Errc::bad_argument, "division by zero polynomial");
  if (a.is_zero()) {
    q = Poly();
    return true;
  }
  if (b.is_constant()) {
    q = a.scaled(Rat(1) / b.constant_value());
    return true;
  }
  const auto& bt = b.terms();
  // leading monomials must divide under lex order; cheap reject
  for (int i = 0; i < kNumSymbols; ++i)
    if (a.terms().front().m.e[i] < bt.front().m.e[i]) return false;
  struct MonoDesc {
    bool operator()(const Monomial& x, const Monomial& y) const { return y < x; }
  };
  std::map<Monomial, Rat, MonoDesc> r;
  for (const auto& t : a.terms()) r.emplace(t.m, t.c);
  std::vector<Poly::Term> qt;
  while (!r.empty()) {
    auto lead = r.begin();
    Monomial qm;
    for (int i = 0; i < kNumSymbols; ++i) {
      int d = lead->first.e[i] - bt.front().m.e[i];
      if (d < 0) return false;
      qm.e[i] = int16_t(d);
    }
    Rat qc = lead->second / bt.front().c;
    qt.push_back({qm, qc});
    for (const auto& t : bt) {
      Monomial m;
      for (int i = 0; i < kNumSymbols; ++i) m.e[i] = int16_t(qm.e[i] + t.m.e[i]);
      auto [it, inserted] = r.emplace(m, Rat(0));
      it->second -= qc * t.c;
      if (it->second == 0) r.erase(it);
    }
  }
  q = Poly::from_terms(std::move(qt));
  return true;
}

Poly divexact(const Poly& a, const Poly& b) {
  Poly q;
  if (!try_divexact(a, b, q))
    throw Error(Errc::bad_argument, "inexact polynomial division");
  return q;
}

// ---- RatFunc ----

namespace {

// deterministic order on factors; any strict total order works
bool poly_before(const Poly& a, const Poly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  for (size_t i = 0; i < ta.size(); ++i) {
    if (!(ta[i].m == tb[i].m)) return tb[i].m < ta[i].m;
    if (ta[i].c != tb[i].c) return ta[i].c < tb[i].c;
  }
  return false;
}

Poly poly_pow(const Poly& p, int e) {
  Poly r(1L);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(Errc::bad_argument, "zero denominator");
  Rat lc = den.lead_coeff();
  num_ = lc == 1 ? num : num.scaled(Rat(1) / lc);
  Poly d = lc == 1 ? den : den.scaled(Rat(1) / lc);
  if (!d.is_constant()) den_.push_back({d, 1});
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // cancel whole factors by exact-divisibility tests; a full gcd is never
  // needed because equality and zero tests do not rely on coprimality
  std::vector<Factor> work = std::move(den_);
  den_.clear();
  for (auto& f : work) {
    if (f.p.is_constant()) continue;  // monic constant is 1
    Poly q;
    while (f.e > 0 && try_divexact(num_, f.p, q)) {
      num_ = std::move(q);
      --f.e;
    }
    if (f.e > 0) den_.push_back(std::move(f));
  }
  std::sort(den_.begin(), den_.end(),
            [](const Factor& a, const Factor& b) { return poly_before(a.p, b.p); });
  // merge equal factors
  std::vector<Factor> merged;
  for (auto& f : den_) {
    if (!merged.empty() && merged.back().p == f.p)
      merged.back().e += f.e;
    else
      merged.push_back(std::move(f));
  }
  den_ = std::move(merged);
}

Poly RatFunc::den() const {
  Poly d(1L);
  for (const auto& f : den_) d = d * poly_pow(f.p, f.e);
  return d;
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  // representations need not be fully cancelled; compare cross products
  return num_ * o.den() == o.num_ * den();
}

Rat RatFunc::constant_value() const {
  if (!is_constant()) throw Error(Errc::bad_argument, "not a constant");
  return num_.constant_value();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  RatFunc r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else {
    // union of the factor lists with exponent max; both complements divide it
    std::vector<Factor> lcm = den_;
    for (const auto& f : o.den_) {
      bool found = false;
      for (auto& g : lcm)
        if (g.p == f.p) {
          g.e = std::max(g.e, f.e);
          found = true;
          break;
        }
      if (!found) lcm.push_back(f);
    }
    auto complement = [&lcm](const std::vector<Factor>& d) {
      Poly m(1L);
      for (const auto& g : lcm) {
        int have = 0;
        for (const auto& f : d)
          if (f.p == g.p) {
            have = f.e;
            break;
          }
        if (g.e > have) m = m * poly_pow(g.p, g.e - have);
      }
      return m;
    };
    r.num_ = num_ * complement(den_) + o.num_ * complement(o.den_);
    r.den_ = std::move(lcm);
  }
  r.reduce();
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc r;
  r.num_ = num_ * o.num_;
  r.den_ = den_;
  for (const auto& f : o.den_) {
    bool found = false;
    for (auto& g : r.den_)
      if (g.p == f.p) {
        g.e += f.e;
        found = true;
        break;
      }
    if (!found) r.den_.push_back(f);
  }
  r.reduce();
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw Error(Errc::not_invertible, "not invertible");
  RatFunc r;
  Rat lc = num_.lead_coeff();
  r.num_ = den().scaled(Rat(1) / lc);
  Poly d = lc == 1 ? num_ : num_.scaled(Rat(1) / lc);
  if (!d.is_constant()) r.den_.push_back({std::move(d), 1});
  r.reduce();
  return r;
}

namespace {

Rat rat_pow(const Rat& x, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

RatFunc RatFunc::map_parts(const std::function<Poly(const Poly&)>& apply) const {
  RatFunc r;
  Rat scale(1);
  for (const auto& f : den_) {
    Poly q = apply(f.p);
    if (q.is_zero()) throw Error(Errc::pole_at_substitution, "pole at substitution");
    if (q.is_constant()) {
      scale /= rat_pow(q.constant_value(), f.e);
      continue;
    }
    Rat lc = q.lead_coeff();
    if (lc != 1) {
      q = q.scaled(Rat(1) / lc);
      scale /= rat_pow(lc, f.e);
    }
    r.den_.push_back({std::move(q), f.e});
  }
  r.num_ = apply(num_).scaled(scale);
  r.reduce();
  return r;
}

RatFunc RatFunc::substitute(const std::map<int, Rat>& bindings) const {
  return map_parts([&bindings](const Poly& p) {
    Poly q = p;
    for (const auto& [var, val] : bindings) q = q.substitute(var, val);
    return q;
  });
}

RatFunc RatFunc::rename(int var, int other) const {
  return map_parts([var, other](const Poly& p) { return p.rename(var, other); });
}

std::string RatFunc::to_string() const {
  if (den_.empty()) return num_.to_string();
  auto wrap = [](const Poly& p) {
    std::string s = p.to_string();
    if (p.terms().size() > 1 || s.find(' ') != std::string::npos) return "(" + s + ")";
    return s;
  };
  return wrap(num_) + "/" + wrap(den());
}

// ---- Scalar ----

Scalar Scalar::point(int i) {
  if (i < 1 || i >= kNumSymbols) throw Error(Errc::bad_argument, "point index out of range");
  return Scalar(RatFunc::symbol(i));
}

Scalar Scalar::eps() {
  Scalar s;
  s.c_[1] = RatFunc(1L);
  return s;
}

Scalar Scalar::eps2() {
  Scalar s;
  s.c_[2] = RatFunc(1L);
  return s;
}

Scalar Scalar::rational(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return Scalar(r);
}

bool Scalar::is_zero() const {
  for (const auto& p : c_)
    if (!p.is_zero()) return false;
  return true;
}

bool Scalar::has_nilpotent() const {
  return !c_[1].is_zero() || !c_[2].is_zero() || !c_[3].is_zero();
}

bool Scalar::is_rational() const {
  return !has_nilpotent() && c_[0].is_constant();
}

Rat Scalar::rational_value() const {
  if (!is_rational()) throw Error(Errc::bad_argument, "not a rational constant");
  return c_[0].constant_value();
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  // eps1^2 = eps2^2 = 0, eps1 eps2 central and nonzero
  Scalar r;
  r.c_[0] = c_[0] * o.c_[0];
  r.c_[1] = c_[0] * o.c_[1] + c_[1] * o.c_[0];
  r.c_[2] = c_[0] * o.c_[2] + c_[2] * o.c_[0];
  r.c_[3] = c_[0] * o.c_[3] + c_[3] * o.c_[0] + c_[1] * o.c_[2] + c_[2] * o.c_[1];
  return r;
}

Scalar Scalar::inv() const {
  if (!invertible()) throw Error(Errc::not_invertible, "not invertible");
  RatFunc i0 = c_[0].inv();
  RatFunc i0sq = i0 * i0;
  Scalar r;
  r.c_[0] = i0;
  r.c_[1] = -(c_[1] * i0sq);
  r.c_[2] = -(c_[2] * i0sq);
  // (n)^2 = 2 c1 c2 eps1 eps2 for n = c1 e1 + c2 e2 + c3 e1e2
  r.c_[3] = -(c_[3] * i0sq) + RatFunc(2L) * c_[1] * c_[2] * i0sq * i0;
  return r;
}

Scalar Scalar::substitute(const std::map<int, Rat>& bindings) const {
  Scalar r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i].substitute(bindings);
  return r;
}

Scalar Scalar::rename(int var, int other) const {
  Scalar r;
  for (int i = 0; i < 4; ++i) r.c_[i] = c_[i].rename(var, other);
  return r;
}

Scalar Scalar::eps_coeff(int which) const {
  Scalar r;
  r.c_[0] = c_[which];
  return r;
}

Scalar Scalar::drop_nilpotent() const {
  Scalar r;
  r.c_[0] = c_[0];
  return r;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  static const char* names[4] = {"", "ε", "ε2", "ε1ε2"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (c_[i].is_zero()) continue;
    if (i == 0) {
      s = c_[0].to_string();
      continue;
    }
    std::string part = "(" + c_[i].to_string() + ")·" + names[i];
    if (s.empty())
      s = part;
    else
      s += " + " + part;
  }
  return s;
}

Rat binom(long n, long j) {
  if (j < 0) return Rat(0);
  Rat r(1);
  for (long i = 0; i < j; ++i) {
    r *= Rat(n - i);
    r /= Rat(i + 1);
  }
  return r;
}

Rat factorial(long n) {
  Rat r(1);
  for (long i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

}  // namespace vakm
