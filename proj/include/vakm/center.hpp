#pragma once

// Center of the vacuum module at a fixed level: joint kernel of the
// nonnegative modes degree by degree, graded dimensions on both sides of
// the oper correspondence, and the commutative (-1)-product of central
// states with its coordinate rescaling law.

#include <memory>
#include <vector>

#include "vakm/lie.hpp"
#include "vakm/series.hpp"
#include "vakm/vertex.hpp"

namespace vakm {

// Basis of the degree-d central subspace.  States point at the pinned
// algebra copy (the presentation instantiated at the requested level), so a
// CenterBasis stays valid on its own.
struct CenterBasis {
  int degree = 0;
  Scalar level;
  std::shared_ptr<const LiePresentation> algebra;
  std::vector<VState> states;  // reduced echelon rows over the word basis
};

// Kernel of the stacked maps x_(m), x in basis(g), 0 <= m <= degree, inside
// the span of canonical words of the given degree.  Exact; echelon-normalized
// with respect to the canonical word order.
CenterBasis center_basis(const LiePresentation& g, const Scalar& level,
                         int degree);

// true when every mode x_(m), 0 <= m <= degree(v), kills v.  Plain states
// only; v carries its own algebra and level.
bool is_central(const VState& v);

// dims of center_basis per degree 0..dmax
std::vector<long> graded_dimension_center(const LiePresentation& g,
                                          const Scalar& level, int dmax);

// Graded dimensions of the free commutative algebra with one generator tower
// of degrees d_i+1, d_i+2, ... per exponent d_i of g.
std::vector<long> op_graded_dimension(const LiePresentation& g, int dmax);

// (-1)-product of central states in the coordinate s(t), given as a series
// over "t" with s(0) = 0 and invertible linear term.  Rescales by dt/ds;
// only coordinates with constant derivative are representable, others raise
// "unsupported".  Non-central inputs raise "not central".
VState commutative_product(const VState& a, const VState& b,
                           const TruncatedSeries& s);

}  // namespace vakm
