#pragma once

// Dense exact linear algebra over the scalar field.  Pivots must be
// invertible scalars; matrices met in practice are free of nilpotents.

#include <vector>

#include "vakm/scalar.hpp"

namespace vakm {

using SVec = std::vector<Scalar>;
using SMat = std::vector<SVec>;

// reduced row echelon form in place; returns the pivot columns
std::vector<int> rref(SMat& m);

// basis of the right null space
std::vector<SVec> nullspace_basis(const SMat& a);

// particular solution of A x = b; false when the system is inconsistent
bool solve(const SMat& a, const SVec& b, SVec& x);

}  // namespace vakm
