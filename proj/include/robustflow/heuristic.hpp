// Parametric-capacity heuristic: maximize |x| - k * max_e x_e over
// feasible flows, where the max ranges over interdictable arc loads. Any
// path decomposition of the optimum attains that value as its robust value.
#pragma once

#include "robustflow/graph.hpp"

namespace robustflow {

struct HeuristicResult {
  PathFlow flow;
  double value = 0.0;  // |x*| - k * max interdictable load
  double theta = 0.0;  // optimal common cap on interdictable arcs
};

// Solved as an LP over arc flows with a shared interdictable cap; k >= 1.
HeuristicResult solve_heuristic(const FlowNetwork& net, int k);

// Checks robust_value(x, k) == |x| - k * max interdictable load within tol.
bool verify_guarantee(const FlowNetwork& net, const PathFlow& x, int k,
                      double tol = kValueTol,
                      const EnumerationLimits& limits = {});

// Published guarantee (k+1)/(k^2/4 + k + 1) for the heuristic's ratio.
double approximation_ratio_bound(int k);

struct ApproximationCheck {
  double ratio = 1.0;  // heuristic / optimum, 1 when optimum == 0
  double bound = 0.0;
  bool ok = true;      // ratio >= bound - 1e-9
};

ApproximationCheck approximation_check(const FlowNetwork& net, int k,
                                       double optimum);

}  // namespace robustflow
