#include "robustflow/interdiction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace robustflow {

ScenarioClass ScenarioClass::cardinality(const FlowNetwork& net, int k) {
  if (k < 0) throw InputError("scenario class: k must be nonnegative");
  ScenarioClass cls;
  cls.tiers.push_back(Tier{net.interdictable_arcs(), k});
  return cls;
}

ScenarioClass ScenarioClass::two_tier(std::vector<int> regular_arcs,
                                      int regular_count,
                                      std::vector<int> exposed_arcs,
                                      int exposed_count) {
  if (regular_count < 0 || exposed_count < 0)
    throw InputError("scenario class: counts must be nonnegative");
  std::sort(regular_arcs.begin(), regular_arcs.end());
  std::sort(exposed_arcs.begin(), exposed_arcs.end());
  ScenarioClass cls;
  cls.tiers.push_back(Tier{std::move(regular_arcs), regular_count});
  cls.tiers.push_back(Tier{std::move(exposed_arcs), exposed_count});
  return cls;
}

int ScenarioClass::scenario_size() const {
  int size = 0;
  for (const Tier& tier : tiers)
    size += std::min<int>(tier.count, static_cast<int>(tier.arcs.size()));
  return size;
}

std::int64_t ScenarioClass::count_scenarios(std::int64_t cap) const {
  std::int64_t product = 1;
  for (const Tier& tier : tiers) {
    const std::int64_t c = binomial_capped(
        static_cast<int>(tier.arcs.size()),
        std::min<int>(tier.count, static_cast<int>(tier.arcs.size())), cap);
    if (c == 0) return 0;
    if (product > cap / c) return cap;
    product *= c;
  }
  return std::min(product, cap);
}

bool ScenarioClass::matches(const Scenario& eta) const {
  std::size_t matched = 0;
  for (const Tier& tier : tiers) {
    int in_tier = 0;
    for (int id : eta.arc_ids) {
      if (std::binary_search(tier.arcs.begin(), tier.arcs.end(), id))
        ++in_tier;
    }
    if (in_tier != tier.count) return false;
    matched += in_tier;
  }
  return matched == eta.arc_ids.size();
}

void ScenarioClass::validate(const FlowNetwork& net) const {
  std::set<int> seen;
  for (const Tier& tier : tiers) {
    for (int id : tier.arcs) {
      if (id < 0 || id >= net.num_arcs())
        throw InputError("scenario class: arc index out of range");
      if (net.arcs[id].safe)
        throw InputError("scenario class: contains a safe arc");
      if (!seen.insert(id).second)
        throw InputError("scenario class: tiers are not disjoint");
    }
  }
}

namespace {

void combinations(const std::vector<int>& pool, int k,
                  const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> chosen;
  auto rec = [&](auto&& self, size_t start, int remaining) -> void {
    if (remaining == 0) {
      emit(chosen);
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
}

}  // namespace

std::vector<Scenario> enumerate_class_scenarios(const ScenarioClass& cls,
                                                std::int64_t limit) {
  if (cls.count_scenarios(limit + 1) > limit)
    throw LimitExceeded("scenario enumeration exceeds limit of " +
                        std::to_string(limit));
  std::vector<Scenario> result;
  std::vector<int> current;
  auto rec = [&](auto&& self, size_t tier_index) -> void {
    if (tier_index == cls.tiers.size()) {
      result.push_back(make_scenario(current));
      return;
    }
    const auto& tier = cls.tiers[tier_index];
    const int take = std::min<int>(tier.count, tier.arcs.size());
    combinations(tier.arcs, take, [&](const std::vector<int>& picked) {
      const size_t base = current.size();
      current.insert(current.end(), picked.begin(), picked.end());
      self(self, tier_index + 1);
      current.resize(base);
    });
  };
  rec(rec, 0);
  return result;
}

namespace {

struct SupportPath {
  const Path* path;
  double rate;
};

std::vector<SupportPath> support_paths(const PathFlow& x) {
  std::vector<SupportPath> support;
  for (const auto& [path, rate] : x.entries) {
    if (rate > 0.0) support.push_back({&path, rate});
  }
  return support;
}

}  // namespace

SeparationResult separate_exact(const FlowNetwork& net, const PathFlow& x,
                                const ScenarioClass& cls,
                                const InterdictionOptions& options) {
  cls.validate(net);
  const auto support = support_paths(x);

  // Arcs previously interdicted carry the 1/k penalty when perturbing.
  const int total_count = cls.scenario_size();
  const double penalty =
      options.perturb && total_count > 0 ? 1.0 / total_count : 0.0;
  std::set<int> previous_arcs;
  if (options.perturb) {
    for (const Scenario& eta : options.previous)
      previous_arcs.insert(eta.arc_ids.begin(), eta.arc_ids.end());
  }

  // Columns: z_e for support arcs per tier, two pad counters per tier
  // (non-penalized and penalized pool arcs), z_P per support path.
  LinearProgram lp;
  lp.sense = Sense::kMinimize;

  std::set<int> support_arc_set;
  for (const auto& sp : support)
    support_arc_set.insert(sp.path->arc_ids.begin(), sp.path->arc_ids.end());

  std::map<int, int> arc_col;  // arc id -> column
  struct TierPads {
    std::vector<int> plain_pool;  // pad arcs without penalty, ascending
    std::vector<int> prev_pool;   // pad arcs with penalty, ascending
    int plain_col = -1;
    int prev_col = -1;
  };
  std::vector<TierPads> pads(cls.tiers.size());
  std::vector<int> tier_rows(cls.tiers.size());

  for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
    const auto& tier = cls.tiers[ti];
    const int take = std::min<int>(tier.count, tier.arcs.size());
    for (int id : tier.arcs) {
      const bool on_support = support_arc_set.count(id) > 0;
      if (on_support) {
        const double cost = previous_arcs.count(id) ? penalty : 0.0;
        arc_col[id] = lp.add_column(cost, 0.0, 1.0, /*integer=*/true);
      } else if (previous_arcs.count(id)) {
        pads[ti].prev_pool.push_back(id);
      } else {
        pads[ti].plain_pool.push_back(id);
      }
    }
    pads[ti].plain_col = lp.add_column(
        0.0, 0.0, static_cast<double>(pads[ti].plain_pool.size()), false);
    pads[ti].prev_col = lp.add_column(
        penalty, 0.0, static_cast<double>(pads[ti].prev_pool.size()), false);
    tier_rows[ti] = lp.add_row(Relation::kEqual, static_cast<double>(take));
    for (int id : tier.arcs) {
      if (arc_col.count(id)) lp.add_entry(tier_rows[ti], arc_col[id], 1.0);
    }
    lp.add_entry(tier_rows[ti], pads[ti].plain_col, 1.0);
    lp.add_entry(tier_rows[ti], pads[ti].prev_col, 1.0);
  }

  std::vector<int> path_col(support.size());
  for (size_t p = 0; p < support.size(); ++p) {
    path_col[p] = lp.add_column(support[p].rate, 0.0, 1.0, false);
    const int row = lp.add_row(Relation::kGreaterEqual, 1.0);
    lp.add_entry(row, path_col[p], 1.0);
    for (int id : support[p].path->arc_ids) {
      auto it = arc_col.find(id);
      if (it != arc_col.end()) lp.add_entry(row, it->second, 1.0);
    }
  }

  // Greedy coverage incumbent.
  const Scenario greedy = greedy_coverage(net, x, cls);
  std::vector<double> warm(lp.num_cols(), 0.0);
  {
    std::vector<std::int64_t> plain_used(cls.tiers.size(), 0),
        prev_used(cls.tiers.size(), 0);
    for (int id : greedy.arc_ids) {
      auto it = arc_col.find(id);
      if (it != arc_col.end()) {
        warm[it->second] = 1.0;
        continue;
      }
      for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
        if (std::binary_search(pads[ti].plain_pool.begin(),
                               pads[ti].plain_pool.end(), id))
          ++plain_used[ti];
        else if (std::binary_search(pads[ti].prev_pool.begin(),
                                    pads[ti].prev_pool.end(), id))
          ++prev_used[ti];
      }
    }
    for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
      warm[pads[ti].plain_col] = static_cast<double>(plain_used[ti]);
      warm[pads[ti].prev_col] = static_cast<double>(prev_used[ti]);
    }
    for (size_t p = 0; p < support.size(); ++p) {
      double hits = 0.0;
      for (int id : support[p].path->arc_ids)
        if (greedy.contains(id)) hits += 1.0;
      warm[path_col[p]] = std::max(0.0, 1.0 - hits);
    }
  }

  MipOptions mip;
  mip.node_limit = options.limits.node_limit;
  mip.warm_solution = warm;
  const SolveResult solved = solve_mip(lp, mip);
  if (solved.status == SolveStatus::kNodeLimit)
    throw LimitExceeded("separate_exact: branch-and-bound node limit");
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("separate_exact: unexpected solver status");

  // Assemble the scenario: chosen support arcs plus lowest-index pads.
  std::vector<int> chosen;
  for (const auto& [id, col] : arc_col) {
    if (solved.primal[col] > 0.5) chosen.push_back(id);
  }
  for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
    const auto in_chosen = [&](int id) {
      return std::find(chosen.begin(), chosen.end(), id) != chosen.end();
    };
    int plain = static_cast<int>(std::llround(solved.primal[pads[ti].plain_col]));
    for (int id : pads[ti].plain_pool) {
      if (plain <= 0) break;
      if (!in_chosen(id)) {
        chosen.push_back(id);
        --plain;
      }
    }
    int prev = static_cast<int>(std::llround(solved.primal[pads[ti].prev_col]));
    for (int id : pads[ti].prev_pool) {
      if (prev <= 0) break;
      if (!in_chosen(id)) {
        chosen.push_back(id);
        --prev;
      }
    }
  }
  SeparationResult result;
  result.scenario = make_scenario(std::move(chosen));
  result.destroyed = destroyed(net, x, result.scenario);

  // The perturbed pick may miss a violated row; fall back to the exact model.
  if (options.perturb && options.violation_threshold &&
      result.destroyed <= *options.violation_threshold + kValueTol) {
    InterdictionOptions exact = options;
    exact.perturb = false;
    exact.violation_threshold.reset();
    return separate_exact(net, x, cls, exact);
  }
  return result;
}

SeparationResult separate_exact(const FlowNetwork& net, const PathFlow& x,
                                int k, const InterdictionOptions& options) {
  return separate_exact(net, x, ScenarioClass::cardinality(net, k), options);
}

RelaxationResult separate_lp_relaxation(const FlowNetwork& net,
                                        const PathFlow& x, int k) {
  if (k < 0) throw InputError("separate_lp_relaxation: k must be nonnegative");
  const auto support = support_paths(x);
  const std::vector<int> pool = net.interdictable_arcs();
  const int take = std::min<int>(k, static_cast<int>(pool.size()));

  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  std::map<int, int> arc_col;
  for (int id : pool) arc_col[id] = lp.add_column(0.0, 0.0, 1.0, false);
  const int cardinality_row =
      lp.add_row(Relation::kEqual, static_cast<double>(take));
  for (int id : pool) lp.add_entry(cardinality_row, arc_col[id], 1.0);
  for (const auto& sp : support) {
    const int col = lp.add_column(sp.rate, 0.0, 1.0, false);
    const int row = lp.add_row(Relation::kGreaterEqual, 1.0);
    lp.add_entry(row, col, 1.0);
    for (int id : sp.path->arc_ids) {
      auto it = arc_col.find(id);
      if (it != arc_col.end()) lp.add_entry(row, it->second, 1.0);
    }
  }
  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("separate_lp_relaxation: unexpected status");

  RelaxationResult result;
  result.z.assign(net.num_arcs(), 0.0);
  for (const auto& [id, col] : arc_col) result.z[id] = solved.primal[col];
  result.destroyed_bound = x.total() - solved.objective;
  return result;
}

Scenario greedy_coverage(const FlowNetwork& net, const PathFlow& x,
                         const ScenarioClass& cls) {
  cls.validate(net);
  const auto support = support_paths(x);

  std::vector<char> path_covered(support.size(), 0);
  std::vector<int> chosen;
  std::set<int> chosen_set;
  std::vector<int> remaining(cls.tiers.size());
  int total = 0;
  for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
    remaining[ti] =
        std::min<int>(cls.tiers[ti].count, cls.tiers[ti].arcs.size());
    total += remaining[ti];
  }

  for (int step = 0; step < total; ++step) {
    int best_arc = -1;
    size_t best_tier = 0;
    double best_gain = -1.0;
    for (size_t ti = 0; ti < cls.tiers.size(); ++ti) {
      if (remaining[ti] == 0) continue;
      for (int id : cls.tiers[ti].arcs) {
        if (chosen_set.count(id)) continue;
        double gain = 0.0;
        for (size_t p = 0; p < support.size(); ++p) {
          if (path_covered[p]) continue;
          for (int arc : support[p].path->arc_ids) {
            if (arc == id) {
              gain += support[p].rate;
              break;
            }
          }
        }
        if (gain > best_gain + 1e-15 ||
            (gain > best_gain - 1e-15 && best_arc >= 0 && id < best_arc)) {
          best_gain = gain;
          best_arc = id;
          best_tier = ti;
        }
      }
    }
    if (best_arc < 0) break;
    chosen.push_back(best_arc);
    chosen_set.insert(best_arc);
    --remaining[best_tier];
    for (size_t p = 0; p < support.size(); ++p) {
      if (path_covered[p]) continue;
      for (int arc : support[p].path->arc_ids) {
        if (arc == best_arc) {
          path_covered[p] = 1;
          break;
        }
      }
    }
  }
  return make_scenario(std::move(chosen));
}

Scenario greedy_coverage(const FlowNetwork& net, const PathFlow& x, int k) {
  return greedy_coverage(net, x, ScenarioClass::cardinality(net, k));
}

InterdictionBound interdiction_upper_bound(const FlowNetwork& net, int k,
                                           const EnumerationLimits& limits) {
  net.validate();
  if (k < 0) throw InputError("interdiction_upper_bound: k negative");
  const ScenarioClass cls = ScenarioClass::cardinality(net, k);
  const auto scenarios = enumerate_class_scenarios(cls, limits.max_scenarios);

  InterdictionBound best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> caps(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) caps[i] = net.arcs[i].capacity;
  if (scenarios.empty()) {
    best.value = max_flow(net).value;
    return best;
  }
  for (const Scenario& eta : scenarios) {
    std::vector<double> damaged = caps;
    for (int id : eta.arc_ids) damaged[id] = 0.0;
    const double value = max_flow(net, damaged).value;
    if (value < best.value - 1e-15) {
      best.value = value;
      best.scenario = eta;
    }
  }
  return best;
}

InterdictionBound interdiction_upper_bound_cuts(
    const FlowNetwork& net, int k, const EnumerationLimits& limits) {
  net.validate();
  if (k < 0) throw InputError("interdiction_upper_bound_cuts: k negative");
  std::vector<int> internal;
  for (int v = 0; v < net.node_count; ++v)
    if (v != net.source && v != net.sink) internal.push_back(v);
  if (internal.size() >= 62 ||
      (std::int64_t{1} << internal.size()) > limits.max_scenarios)
    throw LimitExceeded("interdiction_upper_bound_cuts: too many partitions");

  InterdictionBound best;
  best.value = std::numeric_limits<double>::infinity();
  const std::int64_t masks = std::int64_t{1} << internal.size();
  std::vector<char> in_s(net.node_count, 0);
  for (std::int64_t mask = 0; mask < masks; ++mask) {
    std::fill(in_s.begin(), in_s.end(), 0);
    in_s[net.source] = 1;
    for (size_t b = 0; b < internal.size(); ++b)
      if (mask & (std::int64_t{1} << b)) in_s[internal[b]] = 1;

    double cut_value = 0.0;
    std::vector<std::pair<double, int>> interdictable_cross;
    for (int i = 0; i < net.num_arcs(); ++i) {
      const Arc& a = net.arcs[i];
      if (in_s[a.tail] && !in_s[a.head]) {
        cut_value += a.capacity;
        if (!a.safe) interdictable_cross.push_back({a.capacity, i});
      }
    }
    // Remove the k largest interdictable crossing capacities
    // (ties toward the lower arc index for determinism).
    std::sort(interdictable_cross.begin(), interdictable_cross.end(),
              [](const auto& lhs, const auto& rhs) {
                if (lhs.first != rhs.first) return lhs.first > rhs.first;
                return lhs.second < rhs.second;
              });
    std::vector<int> removed;
    double value = cut_value;
    for (int i = 0; i < k && i < static_cast<int>(interdictable_cross.size());
         ++i) {
      value -= interdictable_cross[i].first;
      removed.push_back(interdictable_cross[i].second);
    }
    if (value < best.value - 1e-15) {
      best.value = value;
      // Pad to size k with the lowest-index unused interdictable arcs.
      std::set<int> chosen(removed.begin(), removed.end());
      for (int i = 0; i < net.num_arcs() && static_cast<int>(chosen.size()) < k;
           ++i) {
        if (!net.arcs[i].safe) chosen.insert(i);
      }
      best.scenario = make_scenario({chosen.begin(), chosen.end()});
    }
  }
  return best;
}

}  // namespace robustflow
