#pragma once

// Exact coefficient field for the whole engine: rational functions in the
// level symbol k and marked point symbols a1..a3 over Q, extended by two
// square-zero elements eps1, eps2 (eps1*eps2 survives).  Everything is
// immutable value semantics; canonical forms make operator== decidable.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vakm {

using Rat = mpq_class;

enum class Errc {
  not_invertible,
  pole_at_substitution,
  points_not_disjoint,
  not_a_coordinate,
  truncation_mismatch,
  not_central,
  unsupported,
  parse_error,
  window_too_small,
  bad_argument,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Symbol universe is fixed: index 0 is k, indices 1..3 are a1..a3.
inline constexpr int kNumSymbols = 4;
inline constexpr int kSymLevel = 0;
const char* symbol_name(int i);

struct Monomial {
  std::array<int16_t, kNumSymbols> e{};
  bool operator==(const Monomial&) const = default;
  // pure lex order, symbol 0 most significant
  bool operator<(const Monomial& o) const { return e < o.e; }
  bool is_one() const;
  Monomial operator*(const Monomial& o) const;
};

class Poly {
 public:
  struct Term {
    Monomial m;
    Rat c;
    bool operator==(const Term& o) const { return m == o.m && c == o.c; }
  };

  Poly() = default;
  explicit Poly(const Rat& c);
  explicit Poly(long c) : Poly(Rat(c)) {}
  static Poly symbol(int i);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  const Rat& constant_value() const;  // pre: is_constant
  int degree(int var) const;          // -1 for the zero polynomial
  const std::vector<Term>& terms() const { return t_; }

  Poly operator+(const Poly&) const;
  Poly operator-(const Poly&) const;
  Poly operator*(const Poly&) const;
  Poly operator-() const;
  bool operator==(const Poly&) const = default;

  Poly scaled(const Rat&) const;
  // substitute var := value; exact, total on Poly
  Poly substitute(int var, const Rat& value) const;
  // substitute symbol var := symbol other (used by ran-type merges)
  Poly rename(int var, int other) const;
  // leading coefficient in pure lex order
  const Rat& lead_coeff() const;  // pre: nonzero

  std::string to_string() const;

  // internal: takes ownership of sorted, compacted term list
  static Poly from_terms(std::vector<Term>&& t);

 private:
  std::vector<Term> t_;  // sorted descending in lex order, no zero coeffs
};

Poly gcd(const Poly& a, const Poly& b);   // monic-normalized up to constants
Poly divexact(const Poly& a, const Poly& b);

// Denominators are kept as lists of monic factors.  They only ever arise as
// products of small structured polynomials (point gaps, level shifts), so
// cancellation runs factor by factor and never needs a gcd of two large
// polynomials.  Invariant: no factor divides into a gcd with the numerator,
// which makes the reduced pair (num, den product) unique and == decidable.
class RatFunc {
 public:
  RatFunc() = default;  // zero
  RatFunc(const Poly& num, const Poly& den);
  explicit RatFunc(const Rat& c) : num_(Poly(c)) {}
  explicit RatFunc(long c) : RatFunc(Rat(c)) {}
  static RatFunc symbol(int i) { return RatFunc(Poly::symbol(i), Poly(1L)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.empty(); }
  Rat constant_value() const;  // pre: is_constant
  const Poly& num() const { return num_; }
  Poly den() const;  // materialized denominator, monic

  RatFunc operator+(const RatFunc&) const;
  RatFunc operator-(const RatFunc&) const;
  RatFunc operator*(const RatFunc&) const;
  RatFunc operator-() const;
  bool operator==(const RatFunc&) const;

  RatFunc inv() const;  // throws not_invertible on zero
  RatFunc substitute(const std::map<int, Rat>& bindings) const;
  RatFunc rename(int var, int other) const;

  std::string to_string() const;

 private:
  struct Factor {
    Poly p;  // monic, nonconstant
    int e;   // >= 1
    bool operator==(const Factor&) const = default;
  };
  void reduce();
  RatFunc map_parts(const std::function<Poly(const Poly&)>& apply) const;
  Poly num_;
  std::vector<Factor> den_;  // empty means denominator 1
};

// Field element with nilpotent part: c0 + c1*eps1 + c2*eps2 + c3*eps1*eps2.
// eps() refers to eps1; the second nilpotent only appears in the action
// representation checks.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : Scalar(Rat(v)) {}
  Scalar(const Rat& v) { c_[0] = RatFunc(v); }
  explicit Scalar(const RatFunc& body) { c_[0] = body; }

  static Scalar level() { return Scalar(RatFunc::symbol(kSymLevel)); }
  static Scalar point(int i);  // a_i for i in 1..3
  static Scalar eps();
  static Scalar eps2();
  static Scalar rational(long num, long den);

  const RatFunc& body() const { return c_[0]; }
  const RatFunc& part(int i) const { return c_[i]; }  // 0,1,2,3 = 1,e1,e2,e1e2
  bool is_zero() const;
  bool has_nilpotent() const;
  bool is_rational() const;
  Rat rational_value() const;  // pre: rational, no nilpotent part

  Scalar operator+(const Scalar&) const;
  Scalar operator-(const Scalar&) const;
  Scalar operator*(const Scalar&) const;
  Scalar operator-() const;
  bool operator==(const Scalar&) const = default;

  bool invertible() const { return !c_[0].is_zero(); }
  Scalar inv() const;  // throws not_invertible unless body nonzero
  Scalar substitute(const std::map<int, Rat>& bindings) const;
  Scalar rename(int var, int other) const;
  // coefficient extraction for dual-number computations
  Scalar eps_coeff(int which) const;  // 1, 2 or 3; returns that slot as a body scalar
  Scalar drop_nilpotent() const;

  std::string to_string() const;

 private:
  std::array<RatFunc, 4> c_{};
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

// exact binomial coefficient, n may be negative (binom(-m, j) with sign)
Rat binom(long n, long j);
Rat factorial(long n);

}  // namespace vakm
