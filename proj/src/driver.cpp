#include "robustflow/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "robustflow/heuristic.hpp"
#include "robustflow/pricing.hpp"

namespace robustflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr int kUnrestrictedBatch = 10;  // scenarios per master solve

void check_config(const SolverConfig& config) {
  if (config.gap_tol <= 0.0)
    throw InputError("solver config: gap tolerance must be positive");
  if (config.max_interdictions_per_iter < 0)
    throw InputError("solver config: interdiction cap must be >= 1 when set");
  if (config.max_outer_iterations < 1)
    throw InputError("solver config: iteration limit must be positive");
}

int count_active_paths(const PathFlow& x) {
  int active = 0;
  for (const auto& [path, rate] : x.entries)
    if (rate > 1e-9) ++active;
  return active;
}

int count_active_duals(const std::vector<double>& duals) {
  int active = 0;
  for (double y : duals)
    if (y > 1e-9) ++active;
  return active;
}

void mark_used(std::vector<char>& used, const Path& path) {
  for (int id : path.arc_ids) used[id] = 1;
}

}  // namespace

RobustSolve solve_robust(const FlowNetwork& net, const SolverConfig& config) {
  net.validate();
  check_config(config);
  if (config.k < 1) throw InputError("solve_robust: k must be at least 1");
  const int k = config.k;

  RobustSolve result;
  SeparationState& state = result.state;
  state.scenarios.resize(1);
  std::vector<Scenario>& rows = state.scenarios[0];
  std::set<Path> path_set;
  std::set<Scenario> row_set;
  std::vector<char> used_arcs(net.num_arcs(), 0);

  // Initialization: heuristic decomposition, no scenarios. The heuristic
  // objective is a valid primal bound (destroyed flow is at most k times
  // the largest interdictable load).
  const HeuristicResult heur = solve_heuristic(net, k);
  for (const auto& [path, rate] : heur.flow.entries) {
    if (path_set.insert(path).second) {
      state.paths.push_back(path);
      mark_used(used_arcs, path);
    }
  }
  state.f_primal = std::max(0.0, heur.value);
  result.flow = heur.flow;
  state.f_dual = std::numeric_limits<double>::infinity();

  auto master_start = Clock::now();
  MasterSolution master = solve_restricted_master(net, state.paths, rows);
  double pending_master_time = seconds_since(master_start);

  int stall_count = 0;
  double last_fp = state.f_primal, last_fd = state.f_dual;
  state.outcome = SolveOutcome::kIterationLimit;

  for (int iter = 1; iter <= config.max_outer_iterations; ++iter) {
    IterationRecord rec;
    rec.iteration = iter;
    rec.master_time = pending_master_time;
    pending_master_time = 0.0;

    // Dual phase: price paths until no positive reduced price remains.
    PricingOptions pricing_options;
    pricing_options.epsilon_penalty = config.epsilon_path_penalty;
    pricing_options.limits = config.limits;
    for (;;) {
      DualPrices prices;
      prices.arc_prices = master.arc_duals;
      for (size_t s = 0; s < master.scenarios.size(); ++s)
        prices.scenario_prices.push_back(
            {master.scenarios[s], master.scenario_duals[s]});
      pricing_options.used_arcs = used_arcs;
      int priced = 0;
      for (const auto& [eta, y] : prices.scenario_prices)
        if (y > 1e-12) ++priced;

      const auto t0 = Clock::now();
      const auto candidate = price_path(net, prices, pricing_options);
      const double dt = seconds_since(t0);
      ++rec.pricing_calls;
      ++state.total_separation_calls;
      state.pricing_log.push_back(
          {iter, priced, dt, candidate ? candidate->reduced_price : 0.0});
      if (!candidate) break;
      if (!path_set.insert(candidate->path).second) {
        log_info("pricing returned a duplicate path; stopping the phase");
        break;
      }
      state.paths.push_back(candidate->path);
      mark_used(used_arcs, candidate->path);
      const auto m0 = Clock::now();
      master = solve_restricted_master(net, state.paths, rows);
      rec.master_time += seconds_since(m0);
    }
    state.f_dual = std::min(state.f_dual, master.objective);

    // Primal phase: exact interdiction, then perturbed finds, in batches.
    bool certified = false;
    int generated_this_iter = 0;
    const int iter_cap = config.max_interdictions_per_iter;
    for (;;) {
      const int budget =
          iter_cap > 0 ? iter_cap - generated_this_iter : kUnrestrictedBatch;
      if (budget <= 0) break;
      const PathFlow& x = master.x;
      const double total = x.total();
      std::vector<Scenario> batch;

      InterdictionOptions exact_options;
      exact_options.limits = config.limits;
      auto t0 = Clock::now();
      const SeparationResult exact = separate_exact(net, x, k, exact_options);
      double dt = seconds_since(t0);
      ++rec.interdiction_calls;
      ++state.total_separation_calls;
      const bool violated = exact.destroyed > master.lambda + kValueTol;
      state.interdiction_log.push_back({iter, dt, exact.destroyed, violated});

      const double robust_of_x = total - exact.destroyed;
      if (robust_of_x > state.f_primal) {
        state.f_primal = robust_of_x;
        result.flow = x;
      }
      if (!violated) {
        certified = true;
        break;
      }
      batch.push_back(exact.scenario);

      while (static_cast<int>(batch.size()) < budget &&
             config.one_over_k_penalty) {
        std::vector<Scenario> previous = rows;
        previous.insert(previous.end(), batch.begin(), batch.end());
        InterdictionOptions perturbed_options;
        perturbed_options.perturb = true;
        perturbed_options.previous = previous;
        perturbed_options.violation_threshold = master.lambda;
        perturbed_options.limits = config.limits;
        t0 = Clock::now();
        const SeparationResult found =
            separate_exact(net, x, k, perturbed_options);
        dt = seconds_since(t0);
        ++rec.interdiction_calls;
        ++state.total_separation_calls;
        const bool found_violated =
            found.destroyed > master.lambda + kValueTol;
        state.interdiction_log.push_back({iter, dt, found.destroyed,
                                          found_violated});
        if (!found_violated) break;
        bool duplicate = row_set.count(found.scenario) > 0;
        for (const Scenario& eta : batch)
          duplicate = duplicate || eta == found.scenario;
        if (duplicate) break;
        batch.push_back(found.scenario);
      }

      int inserted = 0;
      for (const Scenario& eta : batch) {
        if (row_set.insert(eta).second) {
          rows.push_back(eta);
          ++inserted;
        }
      }
      if (inserted == 0) {
        log_info("interdiction produced only duplicate rows; stopping phase");
        break;
      }
      generated_this_iter += inserted;
      const auto m0 = Clock::now();
      master = solve_restricted_master(net, state.paths, rows);
      rec.master_time += seconds_since(m0);
      if (iter_cap > 0 && generated_this_iter >= iter_cap) break;
    }

    state.iterations = iter;
    rec.f_primal = state.f_primal;
    rec.f_dual = state.f_dual;
    rec.paths_generated = static_cast<int>(state.paths.size());
    rec.scenarios_generated = static_cast<int>(rows.size());
    rec.paths_active = count_active_paths(master.x);
    rec.scenarios_active = count_active_duals(master.scenario_duals);
    state.log.push_back(rec);

    if (certified && state.f_dual - state.f_primal <= config.gap_tol) {
      state.outcome = SolveOutcome::kConverged;
      break;
    }
    const bool moved = state.f_primal > last_fp + 1e-12 ||
                       state.f_dual < last_fd - 1e-12;
    stall_count = moved ? 0 : stall_count + 1;
    last_fp = state.f_primal;
    last_fd = state.f_dual;
    if (stall_count >= 3) {
      state.outcome = SolveOutcome::kStalled;
      break;
    }
  }

  result.value = state.f_primal;
  return result;
}

RobustSolve solve_hybrid(const FlowNetwork& net,
                         const std::vector<ScenarioClass>& classes,
                         const std::vector<double>& weights,
                         const SolverConfig& config) {
  net.validate();
  check_config(config);
  if (classes.empty()) throw InputError("solve_hybrid: no classes");
  if (weights.size() != classes.size())
    throw InputError("solve_hybrid: weights size mismatch");
  double weight_sum = 0.0;
  for (double q : weights) {
    if (q < 0.0 || std::isnan(q))
      throw InputError("solve_hybrid: weights must be nonnegative");
    weight_sum += q;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw InputError("solve_hybrid: weights must sum to one");
  for (const ScenarioClass& cls : classes) cls.validate(net);
  const size_t num_classes = classes.size();

  RobustSolve result;
  SeparationState& state = result.state;
  state.scenarios.resize(num_classes);
  std::set<Path> path_set;
  std::vector<std::set<Scenario>> row_sets(num_classes);
  std::vector<char> used_arcs(net.num_arcs(), 0);

  // Initialize from the heuristic of the heaviest class (ties toward the
  // larger scenario size).
  size_t init_class = 0;
  for (size_t c = 1; c < num_classes; ++c) {
    if (weights[c] > weights[init_class] + 1e-15 ||
        (weights[c] > weights[init_class] - 1e-15 &&
         classes[c].scenario_size() > classes[init_class].scenario_size()))
      init_class = c;
  }
  const int init_k = std::max(1, classes[init_class].scenario_size());
  const HeuristicResult heur = solve_heuristic(net, init_k);
  for (const auto& [path, rate] : heur.flow.entries) {
    if (path_set.insert(path).second) {
      state.paths.push_back(path);
      mark_used(used_arcs, path);
    }
  }
  // Valid primal bound: per class, the destroyed flow is at most
  // scenario_size times the largest interdictable load.
  {
    const std::vector<double> loads = arc_loads(net, heur.flow);
    double max_load = 0.0;
    for (int i = 0; i < net.num_arcs(); ++i)
      if (!net.arcs[i].safe) max_load = std::max(max_load, loads[i]);
    const double total = heur.flow.total();
    double bound = 0.0;
    for (size_t c = 0; c < num_classes; ++c)
      bound += weights[c] *
               std::max(0.0, total - classes[c].scenario_size() * max_load);
    state.f_primal = bound;
  }
  result.flow = heur.flow;
  state.f_dual = std::numeric_limits<double>::infinity();

  auto master_start = Clock::now();
  HybridMasterSolution master =
      solve_hybrid_master(net, state.paths, state.scenarios, weights);
  double pending_master_time = seconds_since(master_start);

  int stall_count = 0;
  double last_fp = state.f_primal, last_fd = state.f_dual;
  state.outcome = SolveOutcome::kIterationLimit;

  for (int iter = 1; iter <= config.max_outer_iterations; ++iter) {
    IterationRecord rec;
    rec.iteration = iter;
    rec.master_time = pending_master_time;
    pending_master_time = 0.0;

    PricingOptions pricing_options;
    pricing_options.epsilon_penalty = config.epsilon_path_penalty;
    pricing_options.limits = config.limits;
    for (;;) {
      std::vector<std::vector<std::pair<Scenario, double>>> class_prices(
          num_classes);
      int priced = 0;
      for (size_t c = 0; c < num_classes; ++c) {
        for (size_t s = 0; s < master.scenarios[c].size(); ++s) {
          class_prices[c].push_back(
              {master.scenarios[c][s], master.scenario_duals[c][s]});
          if (master.scenario_duals[c][s] > 1e-12) ++priced;
        }
      }
      pricing_options.used_arcs = used_arcs;
      const auto t0 = Clock::now();
      const auto candidate = price_path_hybrid(net, master.arc_duals,
                                               class_prices, pricing_options);
      const double dt = seconds_since(t0);
      ++rec.pricing_calls;
      ++state.total_separation_calls;
      state.pricing_log.push_back(
          {iter, priced, dt, candidate ? candidate->reduced_price : 0.0});
      if (!candidate) break;
      if (!path_set.insert(candidate->path).second) {
        log_info("hybrid pricing returned a duplicate path; stopping");
        break;
      }
      state.paths.push_back(candidate->path);
      mark_used(used_arcs, candidate->path);
      const auto m0 = Clock::now();
      master = solve_hybrid_master(net, state.paths, state.scenarios, weights);
      rec.master_time += seconds_since(m0);
    }
    state.f_dual = std::min(state.f_dual, master.objective);

    // Primal phase: per-class exact separation on the current flow.
    bool certified = false;
    int generated_this_iter = 0;
    const int iter_cap = config.max_interdictions_per_iter;
    for (;;) {
      if (iter_cap > 0 && generated_this_iter >= iter_cap) break;
      const PathFlow& x = master.x;
      const double total = x.total();

      double weighted_robust = 0.0;
      std::vector<std::pair<size_t, Scenario>> violated_rows;
      for (size_t c = 0; c < num_classes; ++c) {
        if (weights[c] <= 0.0) continue;
        InterdictionOptions exact_options;
        exact_options.limits = config.limits;
        const auto t0 = Clock::now();
        const SeparationResult sep =
            separate_exact(net, x, classes[c], exact_options);
        const double dt = seconds_since(t0);
        ++rec.interdiction_calls;
        ++state.total_separation_calls;
        const bool violated =
            sep.destroyed > master.lambdas[c] + kValueTol;
        state.interdiction_log.push_back({iter, dt, sep.destroyed, violated});
        weighted_robust += weights[c] * (total - sep.destroyed);
        if (violated && !row_sets[c].count(sep.scenario))
          violated_rows.push_back({c, sep.scenario});
      }
      if (weighted_robust > state.f_primal) {
        state.f_primal = weighted_robust;
        result.flow = x;
      }
      if (violated_rows.empty()) {
        certified = true;
        break;
      }
      for (auto& [c, eta] : violated_rows) {
        if (iter_cap > 0 && generated_this_iter >= iter_cap) break;
        if (row_sets[c].insert(eta).second) {
          state.scenarios[c].push_back(eta);
          ++generated_this_iter;
        }
      }
      const auto m0 = Clock::now();
      master = solve_hybrid_master(net, state.paths, state.scenarios, weights);
      rec.master_time += seconds_since(m0);
    }

    state.iterations = iter;
    rec.f_primal = state.f_primal;
    rec.f_dual = state.f_dual;
    rec.paths_generated = static_cast<int>(state.paths.size());
    int total_rows = 0, active_rows = 0;
    for (size_t c = 0; c < num_classes; ++c) {
      total_rows += static_cast<int>(state.scenarios[c].size());
      active_rows += count_active_duals(master.scenario_duals[c]);
    }
    rec.scenarios_generated = total_rows;
    rec.paths_active = count_active_paths(master.x);
    rec.scenarios_active = active_rows;
    state.log.push_back(rec);

    if (certified && state.f_dual - state.f_primal <= config.gap_tol) {
      state.outcome = SolveOutcome::kConverged;
      break;
    }
    const bool moved = state.f_primal > last_fp + 1e-12 ||
                       state.f_dual < last_fd - 1e-12;
    stall_count = moved ? 0 : stall_count + 1;
    last_fp = state.f_primal;
    last_fd = state.f_dual;
    if (stall_count >= 3) {
      state.outcome = SolveOutcome::kStalled;
      break;
    }
  }

  result.value = state.f_primal;
  return result;
}

}  // namespace robustflow
