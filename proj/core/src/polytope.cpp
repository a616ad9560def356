#include "tropfw/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropfw {

void HPolytope::add_le(RatVec coeffs, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != dim)
    throw std::invalid_argument("constraint length does not match polytope dimension");
  constraints.push_back({std::move(coeffs), std::move(rhs), ConstraintKind::LessEq});
}

void HPolytope::add_eq(RatVec coeffs, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != dim)
    throw std::invalid_argument("constraint length does not match polytope dimension");
  constraints.push_back({std::move(coeffs), std::move(rhs), ConstraintKind::Equal});
}

bool HPolytope::well_formed() const {
  if (dim < 0) return false;
  for (const auto& c : constraints)
    if (static_cast<int>(c.coeffs.size()) != dim) return false;
  return true;
}

bool HPolytope::contains(const RatVec& x) const {
  for (const auto& c : constraints)
    if (!c.satisfied_by(x)) return false;
  return true;
}

int rank_destructive(RatMatrix& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

int rank(RatMatrix rows) { return rank_destructive(rows); }

int affine_dimension(const std::vector<RatVec>& points) {
  if (points.empty()) throw std::invalid_argument("affine_dimension: empty point list");
  RatMatrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(vec_sub(points[i], points[0]));
  return rank_destructive(diffs);
}

void sort_points(std::vector<RatVec>& points) {
  std::sort(points.begin(), points.end(), [](const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

}  // namespace tropfw
