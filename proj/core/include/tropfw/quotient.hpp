#pragma once

#include <compare>

#include "tropfw/rational.hpp"

namespace tropfw {

// A point of R^n / R.1 held in canonical form: the first coordinate is
// pinned to zero, so two points are equal exactly when their coordinate
// vectors are. n = 1 is rejected, the quotient would be a single point.
class QuotientPoint {
 public:
  explicit QuotientPoint(RatVec canonical_coords);

  int n() const { return static_cast<int>(coords_.size()); }
  const RatVec& coords() const { return coords_; }
  const Rational& operator[](int i) const { return coords_[i]; }

  bool operator==(const QuotientPoint& other) const { return coords_ == other.coords_; }

 private:
  RatVec coords_;
};

// Subtracts raw[0] from every coordinate. Idempotent.
QuotientPoint canonicalize(const RatVec& raw);

// The multiset {u_i - v_i}; the tropical distance is its range.
RatVec difference_set(const QuotientPoint& u, const QuotientPoint& v);

// max(D_uv) - min(D_uv): the tropical (generalized Hilbert projective)
// metric on the quotient.
Rational trop_dist(const QuotientPoint& u, const QuotientPoint& v);

}  // namespace tropfw
