#include "robustflow/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace robustflow {

namespace {

std::vector<Path> dedup_paths(const FlowNetwork& net,
                              std::span<const Path> paths) {
  std::vector<Path> unique;
  std::set<Path> seen;
  for (const Path& p : paths) {
    validate_path(net, p);
    if (seen.insert(p).second) unique.push_back(p);
  }
  return unique;
}

std::vector<Scenario> dedup_scenarios(const FlowNetwork& net,
                                      std::span<const Scenario> scenarios) {
  std::vector<Scenario> unique;
  std::set<Scenario> seen;
  for (const Scenario& eta : scenarios) {
    validate_scenario(net, eta);
    if (seen.insert(eta).second) unique.push_back(eta);
  }
  return unique;
}

double capacity_sum(const FlowNetwork& net) {
  double sum = 0.0;
  for (const Arc& a : net.arcs) sum += a.capacity;
  return sum;
}

bool path_hits(const Path& path, const Scenario& eta) {
  for (int id : path.arc_ids) {
    if (eta.contains(id)) return true;
  }
  return false;
}

}  // namespace

MasterSolution solve_restricted_master(const FlowNetwork& net,
                                       std::span<const Path> paths,
                                       std::span<const Scenario> scenarios) {
  net.validate();
  const std::vector<Path> unique_paths = dedup_paths(net, paths);
  const std::vector<Scenario> unique_scenarios =
      dedup_scenarios(net, scenarios);

  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  const double lambda_cap = capacity_sum(net);
  std::vector<int> path_col(unique_paths.size());
  for (size_t p = 0; p < unique_paths.size(); ++p)
    path_col[p] = lp.add_column(1.0, 0.0, std::numeric_limits<double>::infinity());
  const int lambda_col = lp.add_column(-1.0, 0.0, lambda_cap);

  for (int e = 0; e < net.num_arcs(); ++e)
    lp.add_row(Relation::kLessEqual, net.arcs[e].capacity);
  for (size_t p = 0; p < unique_paths.size(); ++p) {
    for (int id : unique_paths[p].arc_ids) lp.add_entry(id, path_col[p], 1.0);
  }
  std::vector<int> scenario_row(unique_scenarios.size());
  for (size_t s = 0; s < unique_scenarios.size(); ++s) {
    scenario_row[s] = lp.add_row(Relation::kLessEqual, 0.0);
    lp.add_entry(scenario_row[s], lambda_col, -1.0);
    for (size_t p = 0; p < unique_paths.size(); ++p) {
      if (path_hits(unique_paths[p], unique_scenarios[s]))
        lp.add_entry(scenario_row[s], path_col[p], 1.0);
    }
  }

  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("restricted master: unexpected solver status");

  MasterSolution solution;
  for (size_t p = 0; p < unique_paths.size(); ++p)
    solution.x.add(unique_paths[p], std::max(0.0, solved.primal[path_col[p]]));
  solution.lambda = solved.primal[lambda_col];
  solution.objective = solved.objective;
  solution.arc_duals.assign(solved.duals.begin(),
                            solved.duals.begin() + net.num_arcs());
  solution.scenarios = unique_scenarios;
  solution.scenario_duals.resize(unique_scenarios.size());
  for (size_t s = 0; s < unique_scenarios.size(); ++s)
    solution.scenario_duals[s] = solved.duals[scenario_row[s]];
  solution.numerical_warning = solved.numerical_warning;
  return solution;
}

HybridMasterSolution solve_hybrid_master(
    const FlowNetwork& net, std::span<const Path> paths,
    const std::vector<std::vector<Scenario>>& class_scenarios,
    std::span<const double> weights) {
  net.validate();
  if (weights.size() != class_scenarios.size())
    throw InputError("hybrid master: weights size mismatch");
  double weight_sum = 0.0;
  for (double q : weights) {
    if (q < 0.0 || std::isnan(q))
      throw InputError("hybrid master: weights must be nonnegative");
    weight_sum += q;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw InputError("hybrid master: weights must sum to one");

  const std::vector<Path> unique_paths = dedup_paths(net, paths);
  const size_t num_classes = class_scenarios.size();
  std::vector<std::vector<Scenario>> unique_scenarios(num_classes);
  for (size_t c = 0; c < num_classes; ++c)
    unique_scenarios[c] = dedup_scenarios(net, class_scenarios[c]);

  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  const double lambda_cap = capacity_sum(net);
  std::vector<int> path_col(unique_paths.size());
  for (size_t p = 0; p < unique_paths.size(); ++p)
    path_col[p] = lp.add_column(1.0, 0.0, std::numeric_limits<double>::infinity());
  std::vector<int> lambda_col(num_classes);
  for (size_t c = 0; c < num_classes; ++c)
    lambda_col[c] = lp.add_column(-weights[c], 0.0, lambda_cap);

  for (int e = 0; e < net.num_arcs(); ++e)
    lp.add_row(Relation::kLessEqual, net.arcs[e].capacity);
  for (size_t p = 0; p < unique_paths.size(); ++p) {
    for (int id : unique_paths[p].arc_ids) lp.add_entry(id, path_col[p], 1.0);
  }
  std::vector<std::vector<int>> scenario_row(num_classes);
  for (size_t c = 0; c < num_classes; ++c) {
    scenario_row[c].resize(unique_scenarios[c].size());
    for (size_t s = 0; s < unique_scenarios[c].size(); ++s) {
      scenario_row[c][s] = lp.add_row(Relation::kLessEqual, 0.0);
      lp.add_entry(scenario_row[c][s], lambda_col[c], -1.0);
      for (size_t p = 0; p < unique_paths.size(); ++p) {
        if (path_hits(unique_paths[p], unique_scenarios[c][s]))
          lp.add_entry(scenario_row[c][s], path_col[p], 1.0);
      }
    }
  }

  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("hybrid master: unexpected solver status");

  HybridMasterSolution solution;
  for (size_t p = 0; p < unique_paths.size(); ++p)
    solution.x.add(unique_paths[p], std::max(0.0, solved.primal[path_col[p]]));
  solution.lambdas.resize(num_classes);
  for (size_t c = 0; c < num_classes; ++c)
    solution.lambdas[c] = solved.primal[lambda_col[c]];
  solution.objective = solved.objective;
  solution.arc_duals.assign(solved.duals.begin(),
                            solved.duals.begin() + net.num_arcs());
  solution.scenarios = unique_scenarios;
  solution.scenario_duals.resize(num_classes);
  for (size_t c = 0; c < num_classes; ++c) {
    solution.scenario_duals[c].resize(unique_scenarios[c].size());
    for (size_t s = 0; s < unique_scenarios[c].size(); ++s)
      solution.scenario_duals[c][s] = solved.duals[scenario_row[c][s]];
  }
  solution.numerical_warning = solved.numerical_warning;
  return solution;
}

FullModel build_full_model(const FlowNetwork& net, int k,
                           const EnumerationLimits& limits) {
  net.validate();
  if (k < 0) throw InputError("build_full_model: k must be nonnegative");
  FullModel model;
  model.paths = enumerate_simple_paths(net, limits.max_paths);
  model.scenarios = enumerate_class_scenarios(
      ScenarioClass::cardinality(net, k), limits.max_scenarios);

  LinearProgram& lp = model.lp;
  lp.sense = Sense::kMaximize;
  std::vector<int> path_col(model.paths.size());
  for (size_t p = 0; p < model.paths.size(); ++p)
    path_col[p] = lp.add_column(1.0, 0.0, std::numeric_limits<double>::infinity());
  const int lambda_col = lp.add_column(-1.0, 0.0, capacity_sum(net));
  for (int e = 0; e < net.num_arcs(); ++e)
    lp.add_row(Relation::kLessEqual, net.arcs[e].capacity);
  for (size_t p = 0; p < model.paths.size(); ++p) {
    for (int id : model.paths[p].arc_ids) lp.add_entry(id, path_col[p], 1.0);
  }
  for (const Scenario& eta : model.scenarios) {
    const int row = lp.add_row(Relation::kLessEqual, 0.0);
    lp.add_entry(row, lambda_col, -1.0);
    for (size_t p = 0; p < model.paths.size(); ++p) {
      if (path_hits(model.paths[p], eta)) lp.add_entry(row, path_col[p], 1.0);
    }
  }
  return model;
}

double run_oracle(const FlowNetwork& net, int k,
                  const EnumerationLimits& limits) {
  const FullModel model = build_full_model(net, k, limits);
  const SolveResult solved = solve_lp(model.lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("oracle: unexpected solver status");
  return solved.objective;
}

double run_hybrid_oracle(const FlowNetwork& net,
                         const std::vector<ScenarioClass>& classes,
                         std::span<const double> weights,
                         const EnumerationLimits& limits) {
  const std::vector<Path> paths = enumerate_simple_paths(net, limits.max_paths);
  std::vector<std::vector<Scenario>> class_scenarios;
  class_scenarios.reserve(classes.size());
  for (const ScenarioClass& cls : classes)
    class_scenarios.push_back(
        enumerate_class_scenarios(cls, limits.max_scenarios));
  return solve_hybrid_master(net, paths, class_scenarios, weights).objective;
}

}  // namespace robustflow
