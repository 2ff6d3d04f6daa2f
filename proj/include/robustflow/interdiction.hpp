// Primal separation: scenarios maximizing destroyed flow for a fixed path
// flow, solved as a MILP over binary arc picks with continuous path
// covering variables. Includes the LP relaxation, the greedy coverage
// warm start, and exact interdiction upper bounds.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "robustflow/graph.hpp"
#include "robustflow/lp.hpp"

namespace robustflow {

// A family of scenarios given by disjoint arc pools ("tiers") with exact
// pick counts. A plain cardinality class has one tier: all interdictable
// arcs with count k. Two-tier classes split the arcs into regular/exposed
// pools with separate counts.
struct ScenarioClass {
  struct Tier {
    std::vector<int> arcs;  // sorted arc indices, all interdictable
    int count = 0;          // exact number of picks from this tier
  };
  std::vector<Tier> tiers;

  static ScenarioClass cardinality(const FlowNetwork& net, int k);
  static ScenarioClass two_tier(std::vector<int> regular_arcs,
                                int regular_count,
                                std::vector<int> exposed_arcs,
                                int exposed_count);

  // Total scenario size (sum of effective per-tier counts, clamped to the
  // pool sizes).
  int scenario_size() const;
  std::int64_t count_scenarios(std::int64_t cap) const;
  bool matches(const Scenario& eta) const;
  void validate(const FlowNetwork& net) const;
};

// All scenarios of the class in deterministic (lexicographic) order.
std::vector<Scenario> enumerate_class_scenarios(const ScenarioClass& cls,
                                                std::int64_t limit);

struct InterdictionOptions {
  // Adds a 1/k objective penalty for each chosen arc that appears in any
  // previously generated scenario; used to decorrelate batched rows.
  bool perturb = false;
  std::span<const Scenario> previous = {};
  // When set together with perturb: if the perturbed pick does not destroy
  // more than this threshold, the unperturbed model is solved instead.
  std::optional<double> violation_threshold;
  EnumerationLimits limits;
};

struct SeparationResult {
  Scenario scenario;
  double destroyed = 0.0;  // unperturbed destroyed value of `scenario`
};

// Exact separation: returns a scenario maximizing destroyed flow (for the
// class). If the requested count exceeds the interdictable pool the
// all-interdictable scenario is returned.
SeparationResult separate_exact(const FlowNetwork& net, const PathFlow& x,
                                const ScenarioClass& cls,
                                const InterdictionOptions& options = {});
SeparationResult separate_exact(const FlowNetwork& net, const PathFlow& x,
                                int k, const InterdictionOptions& options = {});

struct RelaxationResult {
  std::vector<double> z;          // per arc, zero on safe arcs
  double destroyed_bound = 0.0;   // upper bound on the exact destroyed value
};

// LP relaxation of the separation MILP (coverage LP).
RelaxationResult separate_lp_relaxation(const FlowNetwork& net,
                                        const PathFlow& x, int k);

// Greedy weighted maximum coverage: k picks maximizing marginal destroyed
// flow, ties toward the lowest arc index.
Scenario greedy_coverage(const FlowNetwork& net, const PathFlow& x,
                         const ScenarioClass& cls);
Scenario greedy_coverage(const FlowNetwork& net, const PathFlow& x, int k);

struct InterdictionBound {
  double value = 0.0;
  Scenario scenario;  // a witness attaining the bound
};

// Network interdiction value min over scenarios of max_flow(G - eta),
// exact by scenario enumeration. Throws LimitExceeded when the scenario
// count exceeds limits.max_scenarios.
InterdictionBound interdiction_upper_bound(const FlowNetwork& net, int k,
                                           const EnumerationLimits& limits = {});

// Same value via s-t node-partition enumeration: for each partition the
// best attack removes the k largest interdictable crossing capacities.
// Exact, and practical whenever 2^(nodes-2) fits the scenario limit.
InterdictionBound interdiction_upper_bound_cuts(
    const FlowNetwork& net, int k, const EnumerationLimits& limits = {});

}  // namespace robustflow
