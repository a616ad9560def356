#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropfw/lp.hpp"
#include "tropfw/polytope.hpp"
#include "tropfw/quotient.hpp"
#include "tropfw/vertex_enum.hpp"

namespace tropfw {

// Enumeration cap for the n^m assignment oracle, overridable per call.
inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

// The m x n matrix whose rows are the sample points, all in canonical form.
class SampleMatrix {
 public:
  explicit SampleMatrix(std::vector<QuotientPoint> rows);
  static SampleMatrix from_raw(const RatMatrix& raw_rows);

  int m() const { return static_cast<int>(rows_.size()); }
  int n() const { return rows_[0].n(); }
  const QuotientPoint& row(int i) const { return rows_[i]; }
  const std::vector<QuotientPoint>& rows() const { return rows_; }
  const Rational& entry(int i, int j) const { return rows_[i][j]; }

  SampleMatrix without_row(int i) const;
  SampleMatrix with_row(QuotientPoint p) const;
  SampleMatrix translated(const QuotientPoint& w) const;

 private:
  std::vector<QuotientPoint> rows_;
};

// A pair of assignments [m] -> [n]; admissible when the value multisets
// agree, which is when it bounds the minimal distance sum from below.
struct AssignmentPair {
  std::vector<int> sigma, tau;  // zero-based column picks
  std::vector<int> w_sigma, w_tau;

  static AssignmentPair make(std::vector<int> sigma, std::vector<int> tau, int n);
  bool admissible() const { return w_sigma == w_tau; }
  Rational value(const SampleMatrix& sample) const;
};

struct FWResult {
  Rational d;
  VPolytope polytope;  // vertices as full-length canonical vectors
  bool unique = false;
};

struct EllipseSpec {
  SampleMatrix foci;
  Rational a;
};

struct EllipseResult {
  Rational d;
  VPolytope sublevel;
  // True when a > d: the distance-sum level set is the boundary of the
  // returned polytope. At a == d the polytope itself is the locus (the
  // Fermat-Weber polytope).
  bool boundary_is_locus = false;
};

Rational distance_sum(const QuotientPoint& x, const SampleMatrix& sample);

// The minimal distance sum, as the exact optimum of
//   min sum_i c_i  s.t.  c_i >= u_j - u_k - M[i][j] + M[i][k]  (all j != k)
// over (u_2..u_n, c_1..c_m) with u_1 fixed to zero.
Rational min_sum_lp(const SampleMatrix& sample);

// The same value as the max of |sum M[i][sigma(i)] - sum M[i][tau(i)]| over
// admissible assignment pairs. Full enumeration, so it refuses (nullopt)
// when n^m exceeds the budget.
std::optional<Rational> min_sum_combinatorial(const SampleMatrix& sample,
                                              std::uint64_t budget = kDefaultOracleBudget);

// Minimal sum, polytope of minimizers, uniqueness. Works in the extended
// (u, c) space and projects, then prunes projection artifacts with exact
// hull membership tests.
FWResult fw_polytope(const SampleMatrix& sample);

// Cross-validation path that generates the direct inequality family in
// u-space, one row per choice of an ordered index pair (or none) per sample
// point. Exponential in m; refuses beyond the budget.
std::optional<FWResult> fw_polytope_direct(const SampleMatrix& sample,
                                           std::uint64_t budget = kDefaultOracleBudget);

// Exact test of sum_i d(x, v_i) == d; pass the sample's minimal sum as d.
bool is_fw_point(const QuotientPoint& x, const SampleMatrix& sample, const Rational& d);

struct EssentialityReport {
  bool essential = false;
  // verdict[i]: row i is a Fermat-Weber point of the remaining rows.
  std::vector<bool> row_is_fw_of_rest;
};

// A sample is essential when no point is a Fermat-Weber point of the
// others. Two-point samples are defined non-essential. m < 2 throws.
EssentialityReport is_essential(const SampleMatrix& sample);

// The n x n instance with entries +1 for j-i = 0,1 (mod n), -1 for
// j-i = 2,3 (mod n), 0 otherwise; essential with unique Fermat-Weber
// point 0. Defined for n >= 4.
SampleMatrix circulant_instance(int n);

// The three-point instance {(-1,1,1),(1,-1,1),(1,1,-1)} covering n = 3.
SampleMatrix unique_three_point_instance();

// Sublevel polytope {u : sum_i d(u, v_i) <= a}; requires a >= d(foci).
EllipseResult k_ellipse(const EllipseSpec& spec);

// Building blocks shared with the treespace intersection: the distance
// rows over (u_2..u_n, c_1..c_m), and a box that provably contains every
// point with distance sum at most `radius`.
HPolytope fw_distance_system(const SampleMatrix& sample);
BoxHint fw_box(const SampleMatrix& sample, const Rational& radius);

// Lifts extended-space vertices back to full-length canonical vectors and
// prunes to the true vertex set of the u-projection.
std::vector<RatVec> project_to_quotient_vertices(const std::vector<RatVec>& extended_vertices,
                                                 int n);

}  // namespace tropfw
