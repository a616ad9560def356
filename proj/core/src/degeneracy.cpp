#include "tropfw/degeneracy.hpp"

#include <algorithm>
#include <stdexcept>

#include "tropfw/random.hpp"

namespace tropfw {

bool IndexSubsetPair::similar(int m, int n) const {
  std::vector<int> row_bal(m, 0), col_bal(n, 0);
  for (const auto& [r, c] : s) {
    row_bal.at(r) += 1;
    col_bal.at(c) += 1;
  }
  for (const auto& [r, c] : t) {
    row_bal.at(r) -= 1;
    col_bal.at(c) -= 1;
  }
  for (int x : row_bal)
    if (x != 0) return false;
  for (int x : col_bal)
    if (x != 0) return false;
  return true;
}

bool IndexSubsetPair::disjoint() const {
  for (const auto& a : s)
    for (const auto& b : t)
      if (a == b) return false;
  return true;
}

Rational IndexSubsetPair::sum_over_s(const SampleMatrix& sample) const {
  Rational acc = 0;
  for (const auto& [r, c] : s) acc += sample.entry(r, c);
  return acc;
}

Rational IndexSubsetPair::sum_over_t(const SampleMatrix& sample) const {
  Rational acc = 0;
  for (const auto& [r, c] : t) acc += sample.entry(r, c);
  return acc;
}

bool verify_witness(const IndexSubsetPair& pair, const SampleMatrix& sample) {
  if (pair.s.empty() || pair.s.size() != pair.t.size()) return false;
  if (!pair.disjoint()) return false;
  if (!pair.similar(sample.m(), sample.n())) return false;
  return pair.sum_over_s(sample) == pair.sum_over_t(sample);
}

namespace {

// Alternating-cycle witnesses: distinct columns j_1..j_r, one row per edge
// with cyclically consecutive rows distinct, and the signed entry sum
// closing to zero. S takes (i_t, j_t), T takes (i_t, j_{t+1}). Every
// witness the degeneracy theorem guarantees reduces to this shape.
class CycleSearch {
 public:
  CycleSearch(const SampleMatrix& sample, const WitnessBudget& budget)
      : sample_(sample), m_(sample.m()), n_(sample.n()), budget_(budget) {}

  void run() {
    const int max_r = std::min(budget_.max_size, n_);
    for (int r = 2; r <= max_r && !found_ && !truncated_; ++r) {
      for (int a = 0; a + r <= n_ && !found_ && !truncated_; ++a) {
        cols_ = {a};
        used_.assign(n_, false);
        used_[a] = true;
        extend(r);
      }
    }
    if (budget_.max_size < n_) truncated_ = true;
  }

  bool found() const { return found_; }
  bool truncated() const { return truncated_; }
  std::uint64_t nodes() const { return nodes_; }
  const IndexSubsetPair& pair() const { return pair_; }

 private:
  bool tick() {
    if (++nodes_ > budget_.max_nodes) truncated_ = true;
    return !truncated_;
  }

  void extend(int r) {
    if (found_ || truncated_) return;
    const int len = static_cast<int>(cols_.size());
    if (len == r) {
      close(r);
      return;
    }
    for (int j = cols_[0] + 1; j < n_; ++j) {
      if (used_[j]) continue;
      // Traversing the cycle backwards gives the same witness with S and T
      // swapped; keep one orientation.
      if (len == r - 1 && r >= 3 && j < cols_[1]) continue;
      used_[j] = true;
      cols_.push_back(j);
      for (int i = 0; i < m_; ++i) {
        if (!rows_.empty() && i == rows_.back()) continue;
        if (!tick()) break;
        rows_.push_back(i);
        delta_ += sample_.entry(i, cols_[len - 1]) - sample_.entry(i, j);
        extend(r);
        delta_ -= sample_.entry(i, cols_[len - 1]) - sample_.entry(i, j);
        rows_.pop_back();
        if (found_ || truncated_) break;
      }
      cols_.pop_back();
      used_[j] = false;
      if (found_ || truncated_) return;
    }
  }

  void close(int r) {
    for (int i = 0; i < m_; ++i) {
      if (i == rows_.back() || i == rows_[0]) continue;
      if (!tick()) return;
      if (delta_ + sample_.entry(i, cols_[r - 1]) - sample_.entry(i, cols_[0]) != 0) continue;
      rows_.push_back(i);
      pair_.s.clear();
      pair_.t.clear();
      for (int t = 0; t < r; ++t) {
        pair_.s.emplace_back(rows_[t], cols_[t]);
        pair_.t.emplace_back(rows_[t], cols_[(t + 1) % r]);
      }
      std::sort(pair_.s.begin(), pair_.s.end());
      std::sort(pair_.t.begin(), pair_.t.end());
      rows_.pop_back();
      found_ = true;
      return;
    }
  }

  const SampleMatrix& sample_;
  int m_, n_;
  WitnessBudget budget_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  bool truncated_ = false;
  std::vector<int> cols_, rows_;
  std::vector<bool> used_;
  Rational delta_;
  IndexSubsetPair pair_;
};

// Full sweep over every disjoint similar pair, for instances small enough
// that None can be certified unconditionally. Cells are assigned to S, T or
// neither in row-major order; row balance is enforced at each row boundary.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const SampleMatrix& sample, std::uint64_t max_nodes)
      : sample_(sample), m_(sample.m()), n_(sample.n()), max_nodes_(max_nodes) {
    col_bal_.assign(n_, 0);
  }

  void run() { assign(0, 0, 0, 0, false); }

  bool found() const { return found_; }
  bool truncated() const { return truncated_; }
  std::uint64_t nodes() const { return nodes_; }
  const IndexSubsetPair& pair() const { return pair_; }

 private:
  void assign(int i, int j, int row_s, int row_t, bool any) {
    if (found_ || truncated_) return;
    if (++nodes_ > max_nodes_) {
      truncated_ = true;
      return;
    }
    if (j == n_) {
      if (row_s != row_t) return;
      ++i;
      j = 0;
      row_s = row_t = 0;
      if (i == m_) {
        if (!any) return;
        for (int c = 0; c < n_; ++c)
          if (col_bal_[c] != 0) return;
        if (delta_ != 0) return;
        found_ = true;
        pair_.s = s_;
        pair_.t = t_;
        return;
      }
    }
    // neither
    assign(i, j + 1, row_s, row_t, any);
    if (found_ || truncated_) return;
    // S; the first assigned cell always goes to S, halving the symmetry
    s_.emplace_back(i, j);
    col_bal_[j] += 1;
    delta_ += sample_.entry(i, j);
    assign(i, j + 1, row_s + 1, row_t, true);
    delta_ -= sample_.entry(i, j);
    col_bal_[j] -= 1;
    s_.pop_back();
    if (found_ || truncated_ || !any) return;
    // T
    t_.emplace_back(i, j);
    col_bal_[j] -= 1;
    delta_ -= sample_.entry(i, j);
    assign(i, j + 1, row_s, row_t + 1, true);
    delta_ += sample_.entry(i, j);
    col_bal_[j] += 1;
    t_.pop_back();
  }

  const SampleMatrix& sample_;
  int m_, n_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  bool truncated_ = false;
  std::vector<std::pair<int, int>> s_, t_;
  std::vector<int> col_bal_;
  Rational delta_;
  IndexSubsetPair pair_;
};

}  // namespace

WitnessSearchResult find_similar_pair(const SampleMatrix& sample, const WitnessBudget& budget) {
  WitnessSearchResult out;
  CycleSearch cycles(sample, budget);
  cycles.run();
  out.nodes_explored = cycles.nodes();
  if (cycles.found()) {
    out.verdict = WitnessVerdict::Found;
    out.pair = cycles.pair();
    if (!verify_witness(out.pair, sample))
      throw std::logic_error("find_similar_pair: candidate failed verification");
    return out;
  }

  if (sample.m() * sample.n() <= budget.exhaustive_max_cells) {
    const std::uint64_t left =
        budget.max_nodes > out.nodes_explored ? budget.max_nodes - out.nodes_explored : 0;
    ExhaustiveSearch sweep(sample, left);
    sweep.run();
    out.nodes_explored += sweep.nodes();
    if (sweep.found()) {
      out.verdict = WitnessVerdict::Found;
      out.pair = sweep.pair();
      if (!verify_witness(out.pair, sample))
        throw std::logic_error("find_similar_pair: candidate failed verification");
      return out;
    }
    if (!sweep.truncated() && !cycles.truncated()) {
      out.verdict = WitnessVerdict::None;
      out.exhaustive_certified = true;
      return out;
    }
    out.verdict = WitnessVerdict::Unknown;
    return out;
  }

  out.verdict = cycles.truncated() ? WitnessVerdict::Unknown : WitnessVerdict::None;
  return out;
}

TheoremCheckResult check_theorem_lowdim(const SampleMatrix& sample, const WitnessBudget& budget) {
  TheoremCheckResult out;
  out.essentiality = is_essential(sample);
  out.fw = fw_polytope(sample);
  out.witness = find_similar_pair(sample, budget);
  out.applicable = out.essentiality.essential && out.fw.unique;
  out.contradiction = out.applicable && out.witness.verdict == WitnessVerdict::None;
  return out;
}

namespace {

void check_square(const RatMatrix& square, std::uint64_t budget) {
  const std::size_t k = square.size();
  if (k == 0) throw std::invalid_argument("tropical determinant: empty matrix");
  for (const auto& row : square)
    if (row.size() != k) throw std::invalid_argument("tropical determinant: matrix not square");
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    fact *= i;
    if (fact > budget) throw std::invalid_argument("tropical determinant: side exceeds budget");
  }
}

template <typename Fn>
void for_each_permutation_sum(const RatMatrix& square, Fn&& fn) {
  const int k = static_cast<int>(square.size());
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  do {
    Rational sum = 0;
    for (int i = 0; i < k; ++i) sum += square[i][perm[i]];
    fn(sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TropDetReport tropical_determinant(const RatMatrix& square, std::uint64_t budget) {
  check_square(square, budget);
  TropDetReport report;
  bool first = true;
  for_each_permutation_sum(square, [&](const Rational& sum) {
    if (first || sum < report.value) {
      report.value = sum;
      report.attaining_permutations = 1;
      first = false;
    } else if (sum == report.value) {
      report.attaining_permutations += 1;
    }
  });
  report.singular = report.attaining_permutations >= 2;
  return report;
}

bool tropdet_has_equal_terms(const RatMatrix& square, std::uint64_t budget) {
  check_square(square, budget);
  std::vector<Rational> sums;
  for_each_permutation_sum(square, [&](const Rational& sum) { sums.push_back(sum); });
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 1; i < sums.size(); ++i)
    if (sums[i] == sums[i - 1]) return true;
  return false;
}

MinorScan scan_square_minors(const RatMatrix& matrix, std::uint64_t budget) {
  MinorScan scan;
  const int m = static_cast<int>(matrix.size());
  const int n = m == 0 ? 0 : static_cast<int>(matrix[0].size());
  const int max_side = std::min(m, n);

  auto for_each_combo = [](int total, int pick, auto&& fn) {
    std::vector<int> idx(pick);
    for (int i = 0; i < pick; ++i) idx[i] = i;
    for (;;) {
      fn(idx);
      int i = pick - 1;
      while (i >= 0 && idx[i] == total - pick + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
    }
  };

  for (int side = 1; side <= max_side; ++side) {
    for_each_combo(m, side, [&](const std::vector<int>& rows) {
      for_each_combo(n, side, [&](const std::vector<int>& cols) {
        RatMatrix minor(side, RatVec(side));
        for (int i = 0; i < side; ++i)
          for (int j = 0; j < side; ++j) minor[i][j] = matrix[rows[i]][cols[j]];
        scan.minors_checked += 1;
        if (tropical_determinant(minor, budget).singular) scan.singular_minors += 1;
        if (tropdet_has_equal_terms(minor, budget)) scan.minors_with_equal_terms += 1;
      });
    });
  }
  return scan;
}

SampleMatrix random_rational_sample(int m, int n, std::uint64_t seed,
                                    const RandomRationalSpec& spec) {
  Rng rng(seed);
  RatMatrix raw(m, RatVec(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const long num = rng.int_in(-spec.numerator_span, spec.numerator_span);
      const long den =
          spec.randomize_denominator ? rng.int_in(1, spec.denominator_span) : spec.denominator;
      raw[i][j] = rat(num, den);
    }
  }
  return SampleMatrix::from_raw(raw);
}

ExperimentStats random_sample_experiment(int m, int n, int trials, std::uint64_t seed,
                                         const RandomRationalSpec& spec,
                                         const WitnessBudget& budget) {
  if (trials < 0) throw std::invalid_argument("random_sample_experiment: negative trial count");
  ExperimentStats stats;
  stats.m = m;
  stats.n = n;
  stats.trials = trials;
  stats.seed = seed;
  for (int trial = 0; trial < trials; ++trial) {
    SampleMatrix sample = random_rational_sample(m, n, derive_seed(seed, trial), spec);
    if (m == 1) {
      stats.single_point += 1;
      continue;
    }
    EssentialityReport ess = is_essential(sample);
    if (!ess.essential) {
      stats.not_essential += 1;
      continue;
    }
    FWResult fw = fw_polytope(sample);
    if (!fw.unique) {
      stats.essential_nonunique += 1;
      continue;
    }
    stats.essential_unique += 1;
    stats.essential_unique_trials.push_back(trial);
    if (find_similar_pair(sample, budget).verdict != WitnessVerdict::Found)
      stats.all_unique_hits_witnessed = false;
  }
  return stats;
}

}  // namespace tropfw
