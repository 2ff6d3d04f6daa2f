// Builders and solvers for the restricted master LP, the full model at
// oracle scale, and the hybrid master with per-class worst-case variables.
#pragma once

#include <span>
#include <vector>

#include "robustflow/graph.hpp"
#include "robustflow/interdiction.hpp"
#include "robustflow/lp.hpp"

namespace robustflow {

struct MasterSolution {
  PathFlow x;             // rates over the (deduplicated) path set
  double lambda = 0.0;    // worst-case destroyed flow variable
  double objective = 0.0;
  std::vector<double> arc_duals;           // y_e per arc
  std::vector<Scenario> scenarios;         // deduplicated row scenarios
  std::vector<double> scenario_duals;      // y_eta aligned with `scenarios`
  bool numerical_warning = false;
};

// Optimal (x, lambda) and duals over the given columns and rows. Duplicate
// paths/scenarios are deduplicated on insertion (first occurrence kept).
MasterSolution solve_restricted_master(const FlowNetwork& net,
                                       std::span<const Path> paths,
                                       std::span<const Scenario> scenarios);

struct HybridMasterSolution {
  PathFlow x;
  std::vector<double> lambdas;  // one per class
  double objective = 0.0;
  std::vector<double> arc_duals;
  std::vector<std::vector<Scenario>> scenarios;       // per class, deduplicated
  std::vector<std::vector<double>> scenario_duals;    // aligned per class
  bool numerical_warning = false;
};

// Weighted master: maximize sum x - sum_k q_k lambda_k with scenario rows
// writing into their class's lambda only. Weights must be nonnegative and
// sum to one.
HybridMasterSolution solve_hybrid_master(
    const FlowNetwork& net, std::span<const Path> paths,
    const std::vector<std::vector<Scenario>>& class_scenarios,
    std::span<const double> weights);

struct FullModel {
  LinearProgram lp;
  std::vector<Path> paths;
  std::vector<Scenario> scenarios;
};

// The complete model with all simple paths and all size-k scenarios; the
// brute-force oracle. Throws LimitExceeded when enumeration overflows.
FullModel build_full_model(const FlowNetwork& net, int k,
                           const EnumerationLimits& limits = {});

// Optimal value of the full model.
double run_oracle(const FlowNetwork& net, int k,
                  const EnumerationLimits& limits = {});

// Optimal value of the full hybrid model over complete per-class rows.
double run_hybrid_oracle(const FlowNetwork& net,
                         const std::vector<ScenarioClass>& classes,
                         std::span<const double> weights,
                         const EnumerationLimits& limits = {});

}  // namespace robustflow
