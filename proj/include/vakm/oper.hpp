#pragma once

// Projective frames and the function ring of their moduli.
//
// An OperFrame stores the component series of a connection in one fixed
// coordinate, one component per exponent of the underlying algebra.  Changing
// coordinate scales the exponent-d component by the (d+1)-st power of the
// Jacobian, and the exponent-1 component additionally absorbs -1/2 times the
// Schwarzian of the change.  OpFunction is the polynomial ring on the abstract
// coefficient functionals v_{i,m}; evaluation pairs each generator against a
// marked-point datum through residues.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "vakm/kelement.hpp"
#include "vakm/scalar.hpp"
#include "vakm/series.hpp"

namespace vakm {

struct OperFrame {
  std::string coordinate;
  std::vector<int> exponents;
  // components[i] is a series in `coordinate`, attached to exponents[i]
  std::vector<TruncatedSeries> components;
};

// Rewrites `frame` through old = old_of_new(new).  The variable of the result
// is the variable of `old_of_new`.  Throws not_a_coordinate unless the change
// vanishes at the origin with invertible slope.
OperFrame oper_transform(const OperFrame& frame,
                         const TruncatedSeries& old_of_new);

// Displacement series of the coordinate s around the locus `at`:
//   sum_{k >= 1} (1/k!) (d^k s)(at) z^k
// as a series in z of the same order as s.  Composing two coordinate changes
// composes their displacement series, with the outer locus moved to s(at).
TruncatedSeries frame_change_series(const Scalar& at, const TruncatedSeries& s);

// Dual-basis pairing: delta_{h,v} times the total residue of omega * f.
// `omega` is the coefficient of dt in a meromorphic form.
Scalar gamma_pairing(int h, const KElement& omega, int v, const KElement& f);

// Generator v_{i,m}: pairs component i of a point against the form t^m dt.
struct OpGen {
  int i = 0;
  int m = 0;
  friend auto operator<=>(const OpGen&, const OpGen&) = default;
};

using OpMono = std::vector<OpGen>;  // kept sorted

// Polynomial in the commuting generators OpGen with Scalar coefficients.
class OpFunction {
 public:
  OpFunction() = default;
  static OpFunction one();
  static OpFunction generator(int i, int m);

  bool is_zero() const { return terms_.empty(); }
  const std::map<OpMono, Scalar>& terms() const { return terms_; }
  // sorts the monomial and folds the coefficient in, dropping zeros
  void add_term(OpMono mono, const Scalar& c);

  OpFunction operator+(const OpFunction& o) const;
  OpFunction operator-(const OpFunction& o) const;
  OpFunction operator*(const OpFunction& o) const;
  OpFunction scaled(const Scalar& c) const;
  bool operator==(const OpFunction& o) const { return terms_ == o.terms_; }

 private:
  std::map<OpMono, Scalar> terms_;
};

// Top degree under deg v_{i,m} = exponents[i] - m, or -1 for zero.  The shift
// puts the first disk generator of component i in degree exponents[i] + 1, so
// graded dimensions match the graded dimensions of the center.
long op_degree(const std::vector<int>& exponents, const OpFunction& f);

// Evaluates f at the point assigning the function factor point[i] to
// component i: v_{i,m} becomes the total residue of point[i] * t^m.
Scalar op_function_eval(const OpFunction& f,
                        const std::vector<KElement>& point);

}  // namespace vakm
