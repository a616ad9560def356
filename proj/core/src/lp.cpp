#include "tropfw/lp.hpp"

#include <cassert>
#include <chrono>
#include <stdexcept>
#include <utility>

namespace tropfw {

PerfCounters& perf_counters() {
  static PerfCounters counters;
  return counters;
}

namespace {

// Dense tableau simplex over exact rationals, standard form
//     min  cost . v   s.t.  D v = h, v >= 0.
// One artificial column is appended per row; the artificial block of the
// final tableau is the basis inverse, which is what multipliers() reads.
// Entering variable: lowest eligible index with negative reduced cost
// (Bland). Leaving variable: minimum ratio, ties broken by lowest basic
// index (Bland). Artificials never re-enter once they have left the basis.
class Tableau {
 public:
  Tableau(RatMatrix rows, RatVec rhs, RatVec cost)
      : n_struct_(cost.size()), n_rows_(rows.size()), cost_(std::move(cost)) {
    body_ = std::move(rows);
    rhs_ = std::move(rhs);
    row_sign_.assign(n_rows_, 1);
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (rhs_[r] < 0) {
        row_sign_[r] = -1;
        rhs_[r] = -rhs_[r];
        for (auto& x : body_[r]) x = -x;
      }
      body_[r].resize(n_struct_ + n_rows_, Rational(0));
      body_[r][n_struct_ + r] = 1;
    }
    basis_.resize(n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r) basis_[r] = n_struct_ + r;
    eligible_.assign(n_struct_ + n_rows_, true);
  }

  LPStatus solve() {
    // Phase 1: minimize the artificial sum.
    RatVec phase1(n_struct_ + n_rows_, Rational(0));
    for (std::size_t j = n_struct_; j < phase1.size(); ++j) phase1[j] = 1;
    load_costs(phase1);
    run();
    if (objective_ != 0) return LPStatus::Infeasible;
    kick_artificials();
    for (std::size_t j = n_struct_; j < eligible_.size(); ++j) eligible_[j] = false;

    RatVec phase2(n_struct_ + n_rows_, Rational(0));
    for (std::size_t j = 0; j < n_struct_; ++j) phase2[j] = cost_[j];
    load_costs(phase2);
    if (!run()) return LPStatus::Unbounded;
    return LPStatus::Optimal;
  }

  Rational objective() const { return objective_; }

  RatVec solution() const {
    RatVec v(n_struct_, Rational(0));
    for (std::size_t r = 0; r < n_rows_; ++r)
      if (basis_[r] < n_struct_) v[basis_[r]] = rhs_[r];
    return v;
  }

  // Simplex multipliers for the original (unflipped) rows.
  RatVec multipliers() const {
    RatVec pi(n_rows_, Rational(0));
    for (std::size_t i = 0; i < n_rows_; ++i) {
      Rational acc = 0;
      for (std::size_t r = 0; r < n_rows_; ++r) {
        const Rational& inv = body_[r][n_struct_ + i];
        if (inv != 0 && active_cost_[basis_[r]] != 0) acc += active_cost_[basis_[r]] * inv;
      }
      pi[i] = row_sign_[i] < 0 ? Rational(-acc) : acc;
    }
    return pi;
  }

 private:
  void load_costs(RatVec cost) {
    active_cost_ = std::move(cost);
    red_ = active_cost_;
    objective_ = 0;
    for (std::size_t r = 0; r < n_rows_; ++r) {
      const Rational& cb = active_cost_[basis_[r]];
      if (cb == 0) continue;
      objective_ += cb * rhs_[r];
      for (std::size_t j = 0; j < red_.size(); ++j)
        if (body_[r][j] != 0) red_[j] -= cb * body_[r][j];
    }
  }

  // Returns false on unboundedness.
  bool run() {
    for (;;) {
      std::size_t enter = red_.size();
      for (std::size_t j = 0; j < red_.size(); ++j) {
        if (eligible_[j] && red_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == red_.size()) return true;

      std::size_t leave = n_rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < n_rows_; ++r) {
        if (body_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / body_[r][enter];
        if (leave == n_rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == n_rows_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t enter) {
    if (basis_[r] >= n_struct_) eligible_[basis_[r]] = false;
    const Rational p = body_[r][enter];
    for (auto& x : body_[r]) x /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (i == r || body_[i][enter] == 0) continue;
      const Rational f = body_[i][enter];
      for (std::size_t j = 0; j < body_[i].size(); ++j)
        if (body_[r][j] != 0) body_[i][j] -= f * body_[r][j];
      if (rhs_[r] != 0) rhs_[i] -= f * rhs_[r];
    }
    if (red_[enter] != 0) {
      const Rational f = red_[enter];
      for (std::size_t j = 0; j < red_.size(); ++j)
        if (body_[r][j] != 0) red_[j] -= f * body_[r][j];
      if (rhs_[r] != 0) objective_ += f * rhs_[r];
    }
    basis_[r] = enter;
  }

  // Pivots basic artificials (all at zero after a feasible phase 1) onto
  // structural columns where possible. Rows that stay artificial are all-zero
  // over structural columns and inert from here on.
  void kick_artificials() {
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (basis_[r] < n_struct_) continue;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (body_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  std::size_t n_struct_;
  std::size_t n_rows_;
  RatVec cost_;
  RatMatrix body_;
  RatVec rhs_;
  RatVec red_;
  RatVec active_cost_;
  Rational objective_;
  std::vector<std::size_t> basis_;
  std::vector<int> row_sign_;
  std::vector<bool> eligible_;
};

struct EngineResult {
  LPStatus status;
  Rational value;
  RatVec solution;
  RatVec multipliers;
};

EngineResult run_engine(RatMatrix rows, RatVec rhs, RatVec cost) {
  Tableau t(std::move(rows), std::move(rhs), std::move(cost));
  EngineResult out;
  out.status = t.solve();
  if (out.status == LPStatus::Optimal) {
    out.value = t.objective();
    out.solution = t.solution();
    out.multipliers = t.multipliers();
  }
  return out;
}

// Free variables are split as x = p - q; one slack column per inequality.
LPResult solve_primal_form(const LPProblem& problem) {
  const int d = problem.constraints.dim;
  const auto& cons = problem.constraints.constraints;
  std::size_t n_slack = 0;
  for (const auto& c : cons)
    if (c.kind == ConstraintKind::LessEq) ++n_slack;

  const std::size_t n_cols = 2 * d + n_slack;
  RatMatrix rows;
  RatVec rhs;
  rows.reserve(cons.size());
  std::size_t slack_at = 2 * d;
  for (const auto& c : cons) {
    RatVec row(n_cols, Rational(0));
    for (int j = 0; j < d; ++j) {
      if (c.coeffs[j] == 0) continue;
      row[j] = c.coeffs[j];
      row[d + j] = -c.coeffs[j];
    }
    if (c.kind == ConstraintKind::LessEq) row[slack_at++] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(c.rhs);
  }
  RatVec cost(n_cols, Rational(0));
  for (int j = 0; j < d; ++j) {
    cost[j] = problem.objective[j];
    cost[d + j] = -problem.objective[j];
  }

  EngineResult er = run_engine(std::move(rows), std::move(rhs), std::move(cost));
  LPResult out;
  out.status = er.status;
  if (er.status == LPStatus::Optimal) {
    out.value = er.value;
    out.witness.resize(d);
    for (int j = 0; j < d; ++j) out.witness[j] = er.solution[j] - er.solution[d + j];
  }
  return out;
}

// Dual tableau: one column per constraint, one row per primal variable.
// For  min c.x  s.t. A x <= b, E x = f  the dual in engine form is
//     min b.z - f.w   s.t.  -A^T z + E^T w = c,  z >= 0, w free,
// and the primal optimum is the negated engine optimum with witness
// x* = -pi taken from the simplex multipliers.
LPResult solve_dual_form(const LPProblem& problem) {
  const int d = problem.constraints.dim;
  const auto& cons = problem.constraints.constraints;
  std::size_t n_eq = 0;
  for (const auto& c : cons)
    if (c.kind == ConstraintKind::Equal) ++n_eq;
  const std::size_t n_cols = cons.size() + n_eq;  // equalities get a split pair

  RatMatrix rows(d, RatVec(n_cols, Rational(0)));
  RatVec cost(n_cols, Rational(0));
  std::size_t col = 0;
  for (const auto& c : cons) {
    if (c.kind == ConstraintKind::LessEq) {
      for (int j = 0; j < d; ++j)
        if (c.coeffs[j] != 0) rows[j][col] = -c.coeffs[j];
      cost[col] = c.rhs;
      ++col;
    } else {
      for (int j = 0; j < d; ++j) {
        if (c.coeffs[j] == 0) continue;
        rows[j][col] = c.coeffs[j];
        rows[j][col + 1] = -c.coeffs[j];
      }
      cost[col] = -c.rhs;
      cost[col + 1] = c.rhs;
      col += 2;
    }
  }

  EngineResult er = run_engine(std::move(rows), problem.objective, std::move(cost));
  LPResult out;
  switch (er.status) {
    case LPStatus::Unbounded:
      out.status = LPStatus::Infeasible;
      return out;
    case LPStatus::Infeasible: {
      // Dual infeasible: the primal is unbounded if feasible at all.
      LPProblem feas = problem;
      feas.objective.assign(d, Rational(0));
      LPResult f = solve_primal_form(feas);
      out.status = f.status == LPStatus::Optimal ? LPStatus::Unbounded : LPStatus::Infeasible;
      return out;
    }
    case LPStatus::Optimal:
      break;
  }
  out.status = LPStatus::Optimal;
  out.value = -er.value;
  out.witness.resize(d);
  for (int j = 0; j < d; ++j) out.witness[j] = -er.multipliers[j];
  return out;
}

}  // namespace

LPResult lp_solve(const LPProblem& problem, const LPOptions& opts) {
  if (!problem.well_formed()) throw std::invalid_argument("lp_solve: malformed problem");
  if (problem.constraints.dim == 0) throw std::invalid_argument("lp_solve: zero-dimensional problem");

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n_rows = problem.constraints.constraints.size();
  const std::size_t dim = problem.constraints.dim;
  bool use_dual = opts.form == LPOptions::Form::Dual ||
                  (opts.form == LPOptions::Form::Auto && n_rows > 2 * dim && n_rows > 16);

  LPResult res = use_dual ? solve_dual_form(problem) : solve_primal_form(problem);

  if (res.status == LPStatus::Optimal) {
    // The solver is only done when the witness checks out exactly.
    if (dot(problem.objective, res.witness) != res.value ||
        !problem.constraints.contains(res.witness))
      throw std::logic_error("lp_solve: witness verification failed");
  }
  auto& pc = perf_counters();
  pc.lp_calls += 1;
  pc.lp_micros += std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return res;
}

bool lp_feasible(const HPolytope& h, const LPOptions& opts) {
  LPProblem p;
  p.objective.assign(h.dim, Rational(0));
  p.constraints = h;
  return lp_solve(p, opts).status == LPStatus::Optimal;
}

}  // namespace tropfw
