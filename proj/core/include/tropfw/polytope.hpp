#pragma once

#include <cstddef>
#include <vector>

#include "tropfw/rational.hpp"

namespace tropfw {

enum class ConstraintKind { LessEq, Equal };

// One row of a constraint system: coeffs . x <= rhs or coeffs . x == rhs.
struct LinearConstraint {
  RatVec coeffs;
  Rational rhs;
  ConstraintKind kind = ConstraintKind::LessEq;

  Rational slack(const RatVec& x) const { return rhs - dot(coeffs, x); }
  bool satisfied_by(const RatVec& x) const {
    Rational s = slack(x);
    return kind == ConstraintKind::Equal ? s == 0 : s >= 0;
  }
};

// Inequality-form polyhedron. The feasible set is closed and convex by
// construction; it is not required to be bounded or nonempty.
struct HPolytope {
  int dim = 0;
  std::vector<LinearConstraint> constraints;

  explicit HPolytope(int d = 0) : dim(d) {}

  void add_le(RatVec coeffs, Rational rhs);
  void add_eq(RatVec coeffs, Rational rhs);
  bool well_formed() const;
  bool contains(const RatVec& x) const;
};

// Vertex-form polytope. affine_dim == -1 encodes the empty set; a single
// point has affine_dim 0. Vertices are pairwise distinct and minimal: none
// is a convex combination of the others.
struct VPolytope {
  std::vector<RatVec> vertices;
  int affine_dim = -1;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
};

// Row rank over the rationals; destroys its argument.
int rank_destructive(RatMatrix& rows);
int rank(RatMatrix rows);

// Rank of {p - points[0]}; a single point gives 0. Throws on empty input.
int affine_dimension(const std::vector<RatVec>& points);

// Lexicographic sort + exact dedup, the canonical order used everywhere a
// vertex list is reported.
void sort_points(std::vector<RatVec>& points);

}  // namespace tropfw
