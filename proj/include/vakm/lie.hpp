#pragma once

// Finite simple Lie algebra presentations with the ad-trace invariant form.
// The level scalar k is carried alongside; the full form on the affine side
// is k times the ad-trace form.

#include <string>
#include <vector>

#include "vakm/scalar.hpp"

namespace vakm {

struct LiePresentation {
  std::vector<std::string> names;
  // c[i][j] is the expansion of [x_i, x_j] over the basis
  std::vector<std::vector<std::vector<Rat>>> c;
  std::vector<std::vector<Rat>> kappa_g;  // tr(ad x_i ad x_j)
  Scalar level = Scalar::level();
  std::vector<int> exponents;  // invariant-generator degrees d_i

  int dim() const { return int(names.size()); }
  std::vector<Rat> bracket(const std::vector<Rat>& x,
                           const std::vector<Rat>& y) const;
  Rat kappa(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  LiePresentation at_level(const Scalar& k) const;
};

// basis (e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h
LiePresentation build_sl2();
// 3x3 traceless matrices, basis (E12, E13, E23, h1, h2, E21, E31, E32)
LiePresentation build_sl3();

// level at which the degree-2 graded piece of the vacuum module acquires an
// invariant vector, found as the root of the symbolic obstruction
Scalar critical_level(const LiePresentation& g);

}  // namespace vakm
