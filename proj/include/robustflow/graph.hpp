// Directed multigraph with arc capacities and safe-arc flags, s-t path
// machinery, max-flow, and flow evaluation under interdiction scenarios.
//
// Arc index order is the canonical identity used everywhere: scenarios,
// duals and file round-trips all refer to arcs by their position in
// FlowNetwork::arcs.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "robustflow/common.hpp"

namespace robustflow {

struct Arc {
  int tail = 0;
  int head = 0;
  double capacity = 0.0;
  bool safe = false;  // safe arcs cannot be interdicted
};

struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;

  int add_arc(int tail, int head, double capacity, bool safe = false);
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  std::vector<int> interdictable_arcs() const;

  // Throws InputError if node ids are out of range, capacities are not
  // finite and nonnegative, or source == sink.
  void validate() const;
};

// Out-arc ids per node, in arc-index order.
std::vector<std::vector<int>> out_adjacency(const FlowNetwork& net);

// A simple s-t path given as the ordered list of arc indices.
struct Path {
  std::vector<int> arc_ids;
  auto operator<=>(const Path&) const = default;
};

bool is_simple_st_path(const FlowNetwork& net, const Path& path);
void validate_path(const FlowNetwork& net, const Path& path);

// Sparse map from s-t paths to nonnegative flow rates.
struct PathFlow {
  std::map<Path, double> entries;

  double total() const;
  bool empty() const { return entries.empty(); }
  // Accumulates rate onto the path; negative rates are rejected.
  void add(const Path& path, double rate);
};

// Per-arc load sum_{P with e in P} x_P.
std::vector<double> arc_loads(const FlowNetwork& net, const PathFlow& x);

// True if all rates are >= 0 and every arc load is within capacity + tol.
bool is_feasible(const FlowNetwork& net, const PathFlow& x,
                 double tol = kFeasTol);

// A set of exactly k interdictable arcs, identified by sorted arc indices.
struct Scenario {
  std::vector<int> arc_ids;

  int size() const { return static_cast<int>(arc_ids.size()); }
  bool contains(int arc_id) const;
  auto operator<=>(const Scenario&) const = default;
};

// Builds a scenario from arbitrary order; sorts and validates uniqueness.
Scenario make_scenario(std::vector<int> arc_ids);

// Checks indices are in range, unique, and none of the arcs is safe.
void validate_scenario(const FlowNetwork& net, const Scenario& eta);

// Surviving flow value: sum of rates over paths avoiding all arcs in eta.
double val_eta(const FlowNetwork& net, const PathFlow& x, const Scenario& eta);

// Destroyed flow: total(x) - val_eta(x, eta), exactly by construction.
double destroyed(const FlowNetwork& net, const PathFlow& x,
                 const Scenario& eta);

// Worst-case surviving value min over all scenarios of size k.
// k = 0 returns total(x); k >= number of interdictable arcs removes them all.
// Enumerates when the relevant scenario count fits the limit, otherwise
// delegates to the exact interdiction MIP.
double robust_value(const FlowNetwork& net, const PathFlow& x, int k,
                    const EnumerationLimits& limits = {});

struct MaxFlowResult {
  double value = 0.0;
  std::vector<double> arc_flow;  // per arc, index order
};

// Dinic's algorithm; deterministic for fixed input. cap_override, when
// nonempty, replaces the per-arc capacities (same length as arcs).
MaxFlowResult max_flow(const FlowNetwork& net,
                       std::span<const double> cap_override = {});

// Greedy bottleneck peeling of a feasible arc flow into at most |E| paths.
// Cycle flow in the support is cancelled and discarded. Throws InputError
// if flow conservation is violated beyond tol at some internal node.
PathFlow path_decompose(const FlowNetwork& net,
                        std::span<const double> arc_flow,
                        double tol = kFeasTol);

// All simple s-t paths in lexicographic arc-index order. Throws
// LimitExceeded if the count would exceed limit.
std::vector<Path> enumerate_simple_paths(const FlowNetwork& net,
                                         std::int64_t limit);

}  // namespace robustflow
