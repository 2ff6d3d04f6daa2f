// Scenario-class statistics: empirical class weights from observations,
// per-class capacity envelopes, the high-probability generalization lower
// bound, and the minimax equality check at enumerable scale.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "robustflow/graph.hpp"
#include "robustflow/interdiction.hpp"

namespace robustflow {

struct PartitionSpec {
  std::vector<ScenarioClass> classes;

  // Cardinality classes: one class per k with all interdictable arcs.
  static PartitionSpec cardinality(const FlowNetwork& net,
                                   const std::vector<int>& ks);
  // Two-tier classes over a split of the interdictable arcs into
  // regular/exposed pools; one class per (j, k) pair.
  static PartitionSpec two_tier(const FlowNetwork& net,
                                std::vector<int> regular_arcs,
                                std::vector<int> exposed_arcs,
                                const std::vector<std::pair<int, int>>& jks);

  std::optional<int> classify(const Scenario& eta) const;
  void validate(const FlowNetwork& net) const;
};

struct EmpiricalWeights {
  std::vector<std::int64_t> counts;  // per class
  std::int64_t total = 0;

  std::vector<double> q_hat() const;
};

// Classifies each observation; throws InputError naming the first scenario
// that falls outside every class.
EmpiricalWeights observe(const FlowNetwork& net, const PartitionSpec& spec,
                         std::span<const Scenario> observations);

// Worst-case class capacity: sum of the class's largest interdictable
// capacities (per tier). Clamped to the pool when the count exceeds it.
double lambda_star(const FlowNetwork& net, const ScenarioClass& cls);

struct GeneralizationBound {
  double value = 0.0;            // empirical - complexity - confidence
  double empirical_value = 0.0;  // sum_k q_hat_k min_{eta in class k} val
  double complexity_term = 0.0;  // (2/sqrt(N)) sum_k lambda*_k sqrt(q_hat_k)
  double confidence_term = 0.0;  // 2C sqrt(8 ln(4/delta) / N)
};

// High-probability lower bound on the true weighted performance of x.
// delta must lie in (0,1); per-class worst cases are computed exactly.
GeneralizationBound generalization_bound(const FlowNetwork& net,
                                         const PathFlow& x,
                                         const PartitionSpec& spec,
                                         const EmpiricalWeights& weights,
                                         double delta,
                                         const EnumerationLimits& limits = {});

struct MinimaxCheck {
  double lhs = 0.0;  // full hybrid LP value
  double rhs = 0.0;  // zero-sum game value over mixtures with fixed masses
  bool pass = false;
};

// Verifies max_x sum_k q_k min val = inf_{Q with Q(class k)=q_k} max_x E_Q
// by solving both finite LPs; only for enumerable instances.
MinimaxCheck minimax_check(const FlowNetwork& net, const PartitionSpec& spec,
                           std::span<const double> weights,
                           double tolerance = kValueTol,
                           const EnumerationLimits& limits = {});

// Tiny-scale stochastic oracle: max_x sum_omega Q(omega) val_omega(x) over
// an explicit scenario distribution.
double stochastic_oracle(const FlowNetwork& net,
                         std::span<const std::pair<Scenario, double>> dist,
                         const EnumerationLimits& limits = {});

}  // namespace robustflow
