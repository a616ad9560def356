#pragma once

#include <stdexcept>

#include "tropfw/polytope.hpp"

namespace tropfw {

// Raised when the feasible set has a recession direction; vertex form of an
// unbounded polyhedron is outside this library's contract.
class UnboundedPolytopeError : public std::runtime_error {
 public:
  UnboundedPolytopeError() : std::runtime_error("polyhedron is unbounded") {}
};

// Valid (not necessarily tight) per-coordinate bounds for the feasible set.
// Callers that can derive bounds analytically pass them to skip the 2*dim
// bounding LPs of the general path.
struct BoxHint {
  RatVec lo, hi;
};

// Exact H-to-V conversion by incremental double description: equalities are
// eliminated first, inequalities are inserted one at a time into an
// enclosing simplex, edges crossing the new hyperplane are detected with the
// combinatorial adjacency test on tight sets. Returns exactly the vertex
// set, with affine_dim filled in (-1 when empty).
VPolytope enumerate_vertices(const HPolytope& h);
VPolytope enumerate_vertices(const HPolytope& h, const BoxHint& box);

// Minimal vertex set of conv(points): every non-vertex fails an exact LP
// membership test against the remaining points. Input order is irrelevant;
// output is in canonical sorted order.
std::vector<RatVec> hull_vertices(std::vector<RatVec> points);

}  // namespace tropfw
