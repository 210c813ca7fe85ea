#pragma once

// Truncated power series with Scalar coefficients.  Orders are tracked
// strictly: arithmetic truncates to the smaller order, derivative loses one
// order.  Polynomial inputs that are exact should be padded via from_poly
// with enough margin before strict operations.

#include <string>
#include <vector>

#include "vakm/scalar.hpp"

namespace vakm {

class TruncatedSeries {
 public:
  TruncatedSeries(std::string var, int order);
  static TruncatedSeries from_poly(std::string var, std::vector<Scalar> coeffs,
                                   int order);

  const std::string& var() const { return var_; }
  int order() const { return order_; }
  const Scalar& coeff(int i) const;  // 0 <= i <= order
  TruncatedSeries with_coeff(int i, Scalar v) const;

  TruncatedSeries operator+(const TruncatedSeries&) const;
  TruncatedSeries operator-(const TruncatedSeries&) const;
  TruncatedSeries operator*(const TruncatedSeries&) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(const Scalar&) const;
  bool operator==(const TruncatedSeries&) const = default;
  bool is_zero() const;

  TruncatedSeries truncated(int order) const;  // order <= this->order
  TruncatedSeries derivative() const;          // pre: order >= 1
  TruncatedSeries mul_inverse() const;         // pre: coeff(0) invertible
  // substitution of the inner series for the variable; inner constant term
  // must vanish ("not a coordinate" otherwise)
  TruncatedSeries compose(const TruncatedSeries& inner) const;
  // compositional inverse; needs zero constant term and invertible linear term
  TruncatedSeries invert() const;
  // third log-derivative combination f'''/f' - (3/2)(f''/f')^2; order drops by 3
  TruncatedSeries schwarzian() const;

  std::string to_string() const;

 private:
  std::string var_;
  int order_ = 0;
  std::vector<Scalar> c_;  // size order_+1
};

// renders one coefficient of a power-of-variable term, shared with KElement
std::string coeff_term_str(const Scalar& c, const std::string& var, int power,
                           bool& lead);

}  // namespace vakm
