#include "tropfw/quotient.hpp"

#include <stdexcept>

namespace tropfw {

QuotientPoint::QuotientPoint(RatVec canonical_coords) : coords_(std::move(canonical_coords)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("QuotientPoint: need at least two coordinates");
  if (coords_[0] != 0)
    throw std::invalid_argument("QuotientPoint: not in canonical form (first coordinate nonzero)");
}

QuotientPoint canonicalize(const RatVec& raw) {
  if (raw.size() < 2) throw std::invalid_argument("canonicalize: need at least two coordinates");
  RatVec coords(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) coords[i] = raw[i] - raw[0];
  return QuotientPoint(std::move(coords));
}

RatVec difference_set(const QuotientPoint& u, const QuotientPoint& v) {
  if (u.n() != v.n()) throw std::invalid_argument("difference_set: dimension mismatch");
  return vec_sub(u.coords(), v.coords());
}

Rational trop_dist(const QuotientPoint& u, const QuotientPoint& v) {
  RatVec d = difference_set(u, v);
  Rational mx = d[0], mn = d[0];
  for (const auto& x : d) {
    if (x > mx) mx = x;
    if (x < mn) mn = x;
  }
  return mx - mn;
}

}  // namespace tropfw
