#pragma once

// Two actions of origin-preserving vector fields f(t)d/dt on module states,
// built from unrelated formulas: l_phi expands the coordinate change mode by
// mode through Taylor shifts, l_psi re-expands the two-variable pairing
// kernels.  Their agreement is a theorem, so the implementations share only
// scalar and series arithmetic.  connection_check verifies that T + d/dt
// intertwines with its rescaled form under a finite coordinate change.

#include <vector>

#include "vakm/series.hpp"
#include "vakm/vertex.hpp"

namespace vakm {

// Vector field f(t) d/dt with polynomial f, f(0) = 0.
class DerElement {
 public:
  explicit DerElement(std::vector<Scalar> coeffs);  // t-power coefficients
  const std::vector<Scalar>& coeffs() const { return c_; }

 private:
  std::vector<Scalar> c_;
};

// [f d/dt, g d/dt] = (f g' - g f') d/dt
DerElement der_bracket(const DerElement& f, const DerElement& g);

// First-order action through the mode substitution z^m -> (z + e g(z))^m
// with g(z) = f(t+z) - f(t); coefficient functions ride along with f d/dt.
VState l_phi(const DerElement& f, const VState& v);

// Same action recomputed from the pairing kernels (s1-s2)^m over dual
// numbers, coefficient extraction included.
VState l_psi(const DerElement& f, const VState& v);

// true when (T + d/dt) after the coordinate change s equals the change after
// (s'(t) T + d/dt) on v, compared at the order the series data supports
bool connection_check(const VState& v, const TruncatedSeries& s);

}  // namespace vakm
