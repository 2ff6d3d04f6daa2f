// Dual separation: find an s-t path with positive reduced price
// 1 - sum_{eta hit} y_eta - sum_{e in P} y_e given master duals.
//
// Scenarios with zero price are irrelevant to the objective and dropped.
// With m priced scenarios, m <= 12 is solved by enumerating the 2^m
// hit configurations (one shortest-path each); larger m falls back to
// branch and bound restricted to the scenario variables.
#pragma once

#include <optional>
#include <vector>

#include "robustflow/graph.hpp"

namespace robustflow {

struct DualPrices {
  std::vector<double> arc_prices;  // y_e per arc, nonnegative
  std::vector<std::pair<Scenario, double>> scenario_prices;  // y_eta > 0 only
};

struct PricedPath {
  Path path;
  double reduced_price = 0.0;  // always the unperturbed value
};

struct PricingOptions {
  // Adds 1e-4 to the cost of each arc already used by a generated path;
  // if the perturbed search finds nothing, the unperturbed model is run.
  bool epsilon_penalty = false;
  std::vector<char> used_arcs;  // per arc, may be empty
  double positive_tol = 1e-9;   // smallest reduced price considered improving
  int enumeration_max_scenarios = 12;
  EnumerationLimits limits;
};

// Returns a path with positive unperturbed reduced price, or nullopt,
// certifying optimality of the master over all paths for the current rows.
std::optional<PricedPath> price_path(const FlowNetwork& net,
                                     const DualPrices& prices,
                                     const PricingOptions& options = {});

// Hybrid variant: scenario prices drawn from every class's generated rows.
std::optional<PricedPath> price_path_hybrid(
    const FlowNetwork& net, const std::vector<double>& arc_prices,
    const std::vector<std::vector<std::pair<Scenario, double>>>& class_prices,
    const PricingOptions& options = {});

// Direct evaluation of the reduced price of a path.
double reduced_price(const FlowNetwork& net, const DualPrices& prices,
                     const Path& path);

// Individual backends, exposed for cross-checking.
std::optional<PricedPath> price_path_enumerate(const FlowNetwork& net,
                                               const DualPrices& prices,
                                               const PricingOptions& options);
std::optional<PricedPath> price_path_bnb(const FlowNetwork& net,
                                         const DualPrices& prices,
                                         const PricingOptions& options);

}  // namespace robustflow
