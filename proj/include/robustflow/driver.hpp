// Simultaneous primal/dual separation: alternate pricing-to-optimality
// (dual bound) with exact interdiction rounds (primal bound) until the
// bounds meet.
#pragma once

#include <cstdint>
#include <vector>

#include "robustflow/graph.hpp"
#include "robustflow/interdiction.hpp"
#include "robustflow/master.hpp"

namespace robustflow {

enum class SolveOutcome {
  kConverged,
  kIterationLimit,
  kStalled,  // neither bound moved for three iterations at positive gap
};

struct SolverConfig {
  int k = 1;
  double gap_tol = 1e-6;  // absolute convergence tolerance
  // Maximum scenarios generated per outer iteration; 0 = unrestricted.
  int max_interdictions_per_iter = 0;
  bool epsilon_path_penalty = true;  // 1e-4 per previously used arc
  bool one_over_k_penalty = true;    // 1/k per previously interdicted arc
  int max_outer_iterations = 500;
  EnumerationLimits limits;
  std::uint64_t seed = 0;  // reserved; the loop itself is deterministic
};

struct IterationRecord {
  int iteration = 0;
  double f_primal = 0.0;
  double f_dual = 0.0;
  int paths_generated = 0;     // cumulative
  int scenarios_generated = 0; // cumulative
  int paths_active = 0;        // nonzero rate at this iteration's last master
  int scenarios_active = 0;    // nonzero dual at this iteration's last master
  int pricing_calls = 0;
  int interdiction_calls = 0;
  double pricing_time = 0.0;
  double interdiction_time = 0.0;
  double master_time = 0.0;
};

struct PricingCallRecord {
  int iteration = 0;
  int priced_scenarios = 0;  // positive scenario cost coefficients
  double time_sec = 0.0;
  double reduced_price = 0.0;  // 0 when no improving path was found
};

struct InterdictionCallRecord {
  int iteration = 0;
  double time_sec = 0.0;
  double destroyed = 0.0;
  bool violated = false;
};

struct SeparationState {
  std::vector<Path> paths;
  std::vector<std::vector<Scenario>> scenarios;  // per class; robust: one
  double f_primal = 0.0;
  double f_dual = 0.0;
  int iterations = 0;
  int total_separation_calls = 0;
  SolveOutcome outcome = SolveOutcome::kConverged;
  std::vector<IterationRecord> log;
  std::vector<PricingCallRecord> pricing_log;
  std::vector<InterdictionCallRecord> interdiction_log;
};

struct RobustSolve {
  PathFlow flow;       // incumbent attaining f_primal
  double value = 0.0;  // f_primal
  SeparationState state;
};

RobustSolve solve_robust(const FlowNetwork& net, const SolverConfig& config);

// Weighted multi-class variant over a scenario partition; with one class
// and weight 1 it coincides with solve_robust within the tolerance.
RobustSolve solve_hybrid(const FlowNetwork& net,
                         const std::vector<ScenarioClass>& classes,
                         const std::vector<double>& weights,
                         const SolverConfig& config);

}  // namespace robustflow
