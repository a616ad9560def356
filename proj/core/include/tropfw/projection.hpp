#pragma once

#include <set>

#include "tropfw/polytope.hpp"

namespace tropfw {

// Coordinate projection by Fourier-Motzkin elimination. Equality rows that
// mention an eliminated variable are used as substitution pivots; pure
// inequalities are combined pairwise. The result describes exactly the
// image of the feasible set on the surviving coordinates, which keep their
// original relative order.
HPolytope project_out(const HPolytope& h, const std::set<int>& var_indices);

}  // namespace tropfw
