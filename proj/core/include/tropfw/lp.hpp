#pragma once

#include <cstdint>

#include "tropfw/polytope.hpp"
#include "tropfw/rational.hpp"

namespace tropfw {

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Minimization over free variables subject to an HPolytope.
struct LPProblem {
  RatVec objective;
  HPolytope constraints;

  bool well_formed() const {
    return constraints.well_formed() &&
           static_cast<int>(objective.size()) == constraints.dim;
  }
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  RatVec witness;  // feasible and attains value exactly when Optimal
};

struct LPOptions {
  enum class Form { Auto, Primal, Dual };
  // Auto picks the dual tableau when the system has many more constraints
  // than variables, which is the common shape here.
  Form form = Form::Auto;
};

// Exact two-phase simplex with Bland's anti-cycling rule. The witness
// satisfies every constraint in exact arithmetic and its objective value
// equals the returned optimum; there are no tolerances anywhere.
LPResult lp_solve(const LPProblem& problem, const LPOptions& opts = {});

// Phase-1 only convenience.
bool lp_feasible(const HPolytope& h, const LPOptions& opts = {});

// Wall-clock accounting for the empirical cost study; see perf note in the
// README. Values are cumulative for the process.
struct PerfCounters {
  std::uint64_t lp_calls = 0;
  std::uint64_t lp_micros = 0;
  std::uint64_t enum_calls = 0;
  std::uint64_t enum_micros = 0;
};
PerfCounters& perf_counters();

}  // namespace tropfw
