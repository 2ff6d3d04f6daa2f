#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "robustflow/graph.hpp"
#include "robustflow/interdiction.hpp"

namespace robustflow {

namespace {

// Minimum surviving value over all size-k subsets of the given arc pool,
// where only pool arcs matter for the paths at hand.
double enumerate_min_val(const FlowNetwork& net, const PathFlow& x,
                         const std::vector<int>& pool, int k) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> chosen;
  auto rec = [&](auto&& self, size_t start, int remaining) -> void {
    if (remaining == 0) {
      best = std::min(best, val_eta(net, x, make_scenario(chosen)));
      return;
    }
    for (size_t i = start;
         i < pool.size() && pool.size() - i >= static_cast<size_t>(remaining);
         ++i) {
      chosen.push_back(pool[i]);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0, k);
  return best;
}

}  // namespace

double robust_value(const FlowNetwork& net, const PathFlow& x, int k,
                    const EnumerationLimits& limits) {
  net.validate();
  if (k < 0) throw InputError("robust_value: k must be nonnegative");
  if (k == 0) return x.total();

  const std::vector<int> pool = net.interdictable_arcs();
  if (static_cast<int>(pool.size()) <= k) {
    // Remove every interdictable arc.
    return val_eta(net, x, make_scenario(pool));
  }

  // Only interdictable arcs carried by positive-rate paths matter; pad
  // scenarios never increase the surviving value.
  std::set<int> used;
  for (const auto& [path, rate] : x.entries) {
    if (rate <= 0.0) continue;
    for (int id : path.arc_ids) {
      if (!net.arcs[id].safe) used.insert(id);
    }
  }
  const std::vector<int> used_pool(used.begin(), used.end());
  if (static_cast<int>(used_pool.size()) <= k)
    return val_eta(net, x, make_scenario(used_pool));

  if (binomial_capped(static_cast<int>(used_pool.size()), k,
                      limits.max_scenarios + 1) <= limits.max_scenarios)
    return enumerate_min_val(net, x, used_pool, k);

  InterdictionOptions options;
  options.limits = limits;
  const SeparationResult worst = separate_exact(net, x, k, options);
  return x.total() - worst.destroyed;
}

}  // namespace robustflow
