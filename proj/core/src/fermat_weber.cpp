#include "tropfw/fermat_weber.hpp"

#include <map>
#include <stdexcept>

namespace tropfw {

SampleMatrix::SampleMatrix(std::vector<QuotientPoint> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("SampleMatrix: empty sample");
  for (const auto& r : rows_)
    if (r.n() != rows_[0].n()) throw std::invalid_argument("SampleMatrix: ragged rows");
}

SampleMatrix SampleMatrix::from_raw(const RatMatrix& raw_rows) {
  std::vector<QuotientPoint> rows;
  rows.reserve(raw_rows.size());
  for (const auto& r : raw_rows) rows.push_back(canonicalize(r));
  return SampleMatrix(std::move(rows));
}

SampleMatrix SampleMatrix::without_row(int i) const {
  std::vector<QuotientPoint> rows;
  rows.reserve(rows_.size() - 1);
  for (int r = 0; r < m(); ++r)
    if (r != i) rows.push_back(rows_[r]);
  return SampleMatrix(std::move(rows));
}

SampleMatrix SampleMatrix::with_row(QuotientPoint p) const {
  std::vector<QuotientPoint> rows = rows_;
  rows.push_back(std::move(p));
  return SampleMatrix(std::move(rows));
}

SampleMatrix SampleMatrix::translated(const QuotientPoint& w) const {
  RatMatrix raw;
  raw.reserve(rows_.size());
  for (const auto& r : rows_) raw.push_back(vec_add(r.coords(), w.coords()));
  return from_raw(raw);
}

AssignmentPair AssignmentPair::make(std::vector<int> sigma, std::vector<int> tau, int n) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("AssignmentPair: length mismatch");
  AssignmentPair p;
  p.sigma = std::move(sigma);
  p.tau = std::move(tau);
  p.w_sigma.assign(n, 0);
  p.w_tau.assign(n, 0);
  for (int j : p.sigma) p.w_sigma.at(j) += 1;
  for (int j : p.tau) p.w_tau.at(j) += 1;
  return p;
}

Rational AssignmentPair::value(const SampleMatrix& sample) const {
  Rational s = 0;
  for (int i = 0; i < sample.m(); ++i)
    s += sample.entry(i, sigma[i]) - sample.entry(i, tau[i]);
  return abs(s);
}

Rational distance_sum(const QuotientPoint& x, const SampleMatrix& sample) {
  Rational s = 0;
  for (const auto& v : sample.rows()) s += trop_dist(x, v);
  return s;
}

HPolytope fw_distance_system(const SampleMatrix& sample) {
  const int n = sample.n();
  const int m = sample.m();
  HPolytope h(n - 1 + m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        RatVec row(h.dim, Rational(0));
        if (j > 0) row[j - 1] += 1;
        if (k > 0) row[k - 1] -= 1;
        row[n - 1 + i] = -1;
        h.add_le(std::move(row), sample.entry(i, j) - sample.entry(i, k));
      }
    }
  }
  return h;
}

BoxHint fw_box(const SampleMatrix& sample, const Rational& radius) {
  const int n = sample.n();
  const int m = sample.m();
  BoxHint box;
  box.lo.resize(n - 1 + m);
  box.hi.resize(n - 1 + m);
  // Any point with distance sum <= radius is within radius of v_1 in every
  // coordinate gap, and each c_i lies in [0, radius].
  for (int j = 1; j < n; ++j) {
    box.lo[j - 1] = sample.entry(0, j) - radius;
    box.hi[j - 1] = sample.entry(0, j) + radius;
  }
  for (int i = 0; i < m; ++i) {
    box.lo[n - 1 + i] = 0;
    box.hi[n - 1 + i] = radius;
  }
  return box;
}

Rational min_sum_lp(const SampleMatrix& sample) {
  LPProblem p;
  p.constraints = fw_distance_system(sample);
  p.objective.assign(p.constraints.dim, Rational(0));
  for (int i = 0; i < sample.m(); ++i) p.objective[sample.n() - 1 + i] = 1;
  LPResult r = lp_solve(p);
  if (r.status != LPStatus::Optimal)
    throw std::logic_error("min_sum_lp: distance system must have an optimum");
  return r.value;
}

std::optional<Rational> min_sum_combinatorial(const SampleMatrix& sample, std::uint64_t budget) {
  const int n = sample.n();
  const int m = sample.m();
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= static_cast<std::uint64_t>(n);
    if (count > budget) return std::nullopt;
  }

  // Group assignments by their preimage-count vector; only pairs within a
  // group are admissible, and the extremes of each group decide the max.
  std::map<std::vector<int>, std::pair<Rational, Rational>> extremes;
  std::vector<int> w(n, 0);
  Rational sum = 0;
  auto walk = [&](auto&& self, int row) -> void {
    if (row == m) {
      auto it = extremes.find(w);
      if (it == extremes.end()) {
        extremes.emplace(w, std::make_pair(sum, sum));
      } else {
        if (sum < it->second.first) it->second.first = sum;
        if (sum > it->second.second) it->second.second = sum;
      }
      return;
    }
    for (int j = 0; j < n; ++j) {
      w[j] += 1;
      sum += sample.entry(row, j);
      self(self, row + 1);
      sum -= sample.entry(row, j);
      w[j] -= 1;
    }
  };
  walk(walk, 0);

  Rational best = 0;
  for (const auto& [key, mm] : extremes) {
    Rational spread = mm.second - mm.first;
    if (spread > best) best = spread;
  }
  return best;
}

std::vector<RatVec> project_to_quotient_vertices(const std::vector<RatVec>& extended_vertices,
                                                 int n) {
  std::vector<RatVec> points;
  points.reserve(extended_vertices.size());
  for (const auto& ev : extended_vertices) {
    RatVec p(n, Rational(0));
    for (int j = 1; j < n; ++j) p[j] = ev[j - 1];
    points.push_back(std::move(p));
  }
  return hull_vertices(std::move(points));
}

FWResult fw_polytope(const SampleMatrix& sample) {
  FWResult out;
  out.d = min_sum_lp(sample);

  HPolytope h = fw_distance_system(sample);
  RatVec sum_row(h.dim, Rational(0));
  for (int i = 0; i < sample.m(); ++i) sum_row[sample.n() - 1 + i] = 1;
  h.add_eq(std::move(sum_row), out.d);

  VPolytope extended = enumerate_vertices(h, fw_box(sample, out.d));
  out.polytope.vertices = project_to_quotient_vertices(extended.vertices, sample.n());
  out.polytope.affine_dim =
      out.polytope.vertices.empty() ? -1 : affine_dimension(out.polytope.vertices);
  out.unique = out.polytope.vertices.size() == 1;
  return out;
}

std::optional<FWResult> fw_polytope_direct(const SampleMatrix& sample, std::uint64_t budget) {
  const int n = sample.n();
  const int m = sample.m();
  const std::uint64_t options = static_cast<std::uint64_t>(n) * (n - 1) + 1;
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= options;
    if (count > budget) return std::nullopt;
  }

  FWResult out;
  out.d = min_sum_lp(sample);

  // One inequality per choice of an ordered pair (j_i, k_i) or no pair per
  // sample point: sum_i (x_{j_i} - x_{k_i}) <= d + sum_i (v_{i,j_i} - v_{i,k_i}).
  std::vector<std::pair<int, int>> pairs;
  pairs.emplace_back(-1, -1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) pairs.emplace_back(j, k);

  HPolytope h(n - 1);
  RatVec coeffs(n - 1, Rational(0));
  Rational rhs = out.d;
  auto walk = [&](auto&& self, int row) -> void {
    if (row == m) {
      if (!is_zero_vec(coeffs)) h.add_le(coeffs, rhs);
      return;
    }
    for (const auto& [j, k] : pairs) {
      if (j < 0) {
        self(self, row + 1);
        continue;
      }
      if (j > 0) coeffs[j - 1] += 1;
      if (k > 0) coeffs[k - 1] -= 1;
      rhs += sample.entry(row, j) - sample.entry(row, k);
      self(self, row + 1);
      if (j > 0) coeffs[j - 1] -= 1;
      if (k > 0) coeffs[k - 1] += 1;
      rhs -= sample.entry(row, j) - sample.entry(row, k);
    }
  };
  walk(walk, 0);

  BoxHint full = fw_box(sample, out.d);
  BoxHint box;
  box.lo.assign(full.lo.begin(), full.lo.begin() + (n - 1));
  box.hi.assign(full.hi.begin(), full.hi.begin() + (n - 1));
  VPolytope v = enumerate_vertices(h, box);

  out.polytope.vertices.reserve(v.vertices.size());
  for (const auto& u : v.vertices) {
    RatVec p(n, Rational(0));
    for (int j = 1; j < n; ++j) p[j] = u[j - 1];
    out.polytope.vertices.push_back(std::move(p));
  }
  sort_points(out.polytope.vertices);
  out.polytope.affine_dim = v.affine_dim;
  out.unique = out.polytope.vertices.size() == 1;
  return out;
}

bool is_fw_point(const QuotientPoint& x, const SampleMatrix& sample, const Rational& d) {
  if (x.n() != sample.n()) throw std::invalid_argument("is_fw_point: dimension mismatch");
  return distance_sum(x, sample) == d;
}

EssentialityReport is_essential(const SampleMatrix& sample) {
  if (sample.m() < 2) throw std::invalid_argument("is_essential: need at least two points");
  EssentialityReport report;
  if (sample.m() == 2) {
    // Each focus attains the minimal pair sum, so two-point samples are
    // never essential.
    report.essential = false;
    report.row_is_fw_of_rest = {true, true};
    return report;
  }
  report.essential = true;
  report.row_is_fw_of_rest.resize(sample.m());
  for (int i = 0; i < sample.m(); ++i) {
    SampleMatrix rest = sample.without_row(i);
    Rational d = min_sum_lp(rest);
    bool verdict = is_fw_point(sample.row(i), rest, d);
    report.row_is_fw_of_rest[i] = verdict;
    if (verdict) report.essential = false;
  }
  return report;
}

SampleMatrix circulant_instance(int n) {
  if (n < 4)
    throw std::invalid_argument(
        "circulant_instance: defined for n >= 4; use unique_three_point_instance for n = 3");
  RatMatrix raw(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int r = ((j - i) % n + n) % n;
      if (r == 0 || r == 1)
        raw[i][j] = 1;
      else if (r == 2 || r == 3)
        raw[i][j] = -1;
    }
  }
  return SampleMatrix::from_raw(raw);
}

SampleMatrix unique_three_point_instance() {
  return SampleMatrix::from_raw({{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
}

EllipseResult k_ellipse(const EllipseSpec& spec) {
  EllipseResult out;
  out.d = min_sum_lp(spec.foci);
  if (spec.a < out.d)
    throw std::invalid_argument("k_ellipse: a must be at least the minimal distance sum d = " +
                                to_string(out.d));

  HPolytope h = fw_distance_system(spec.foci);
  RatVec sum_row(h.dim, Rational(0));
  for (int i = 0; i < spec.foci.m(); ++i) sum_row[spec.foci.n() - 1 + i] = 1;
  h.add_le(std::move(sum_row), spec.a);

  VPolytope extended = enumerate_vertices(h, fw_box(spec.foci, spec.a));
  out.sublevel.vertices = project_to_quotient_vertices(extended.vertices, spec.foci.n());
  out.sublevel.affine_dim =
      out.sublevel.vertices.empty() ? -1 : affine_dimension(out.sublevel.vertices);
  out.boundary_is_locus = spec.a > out.d;
  return out;
}

}  // namespace tropfw
