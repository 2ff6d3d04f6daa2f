#include "robustflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "robustflow/heuristic.hpp"
#include "robustflow/io.hpp"

#include "json.hpp"

namespace robustflow {

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw InputError("unknown output format '" + name + "'");
}

double quantile90(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  const size_t rank = static_cast<size_t>(
      std::ceil(0.9 * static_cast<double>(n)));
  return values[std::min(n - 1, rank == 0 ? 0 : rank - 1)];
}

namespace {

// Candidate-pool interdiction bound for instances where neither scenario
// nor partition enumeration is affordable: the returned value is an upper
// estimate, proven exact only when it pinches the optimum from above.
std::pair<double, bool> pool_interdiction_bound(const FlowNetwork& net, int k,
                                                const RobustSolve& solve) {
  std::vector<Scenario> pool;
  for (const auto& rows : solve.state.scenarios)
    pool.insert(pool.end(), rows.begin(), rows.end());
  {
    InterdictionOptions options;
    pool.push_back(separate_exact(net, solve.flow, k, options).scenario);
  }
  // Greedy max-flow interdiction among arcs carrying flow.
  {
    std::vector<double> caps(net.num_arcs());
    for (int i = 0; i < net.num_arcs(); ++i) caps[i] = net.arcs[i].capacity;
    std::vector<int> chosen;
    for (int step = 0; step < k; ++step) {
      const MaxFlowResult current = max_flow(net, caps);
      int best_arc = -1;
      double best_value = current.value;
      for (int i = 0; i < net.num_arcs(); ++i) {
        if (net.arcs[i].safe || caps[i] == 0.0) continue;
        if (current.arc_flow[i] <= 1e-12) continue;
        const double saved = caps[i];
        caps[i] = 0.0;
        const double damaged = max_flow(net, caps).value;
        caps[i] = saved;
        if (damaged < best_value - 1e-12) {
          best_value = damaged;
          best_arc = i;
        }
      }
      if (best_arc < 0) break;
      caps[best_arc] = 0.0;
      chosen.push_back(best_arc);
    }
    // Pad to k arcs with the lowest-index unused interdictable arcs.
    for (int i = 0;
         i < net.num_arcs() && static_cast<int>(chosen.size()) < k; ++i) {
      if (net.arcs[i].safe) continue;
      if (std::find(chosen.begin(), chosen.end(), i) == chosen.end())
        chosen.push_back(i);
    }
    if (!chosen.empty()) pool.push_back(make_scenario(std::move(chosen)));
  }

  double best = max_flow(net).value;
  std::vector<double> caps(net.num_arcs());
  for (const Scenario& eta : pool) {
    for (int i = 0; i < net.num_arcs(); ++i) caps[i] = net.arcs[i].capacity;
    for (int id : eta.arc_ids) caps[id] = 0.0;
    best = std::min(best, max_flow(net, caps).value);
  }
  const bool exact = best <= solve.value + kValueTol;
  return {best, exact};
}

std::string gap_string(double gap, bool percent, bool exact) {
  std::ostringstream out;
  if (percent) {
    out << std::setprecision(4) << gap * 100.0 << "%";
  } else {
    out << std::setprecision(4) << gap;
  }
  if (!exact) out << "*";
  return out.str();
}

const char* outcome_name(SolveOutcome outcome) {
  switch (outcome) {
    case SolveOutcome::kConverged:
      return "converged";
    case SolveOutcome::kIterationLimit:
      return "iteration-limit";
    case SolveOutcome::kStalled:
      return "stalled";
  }
  return "unknown";
}

}  // namespace

BenchCell run_bench_cell(const FlowNetwork& net, const std::string& name,
                         std::uint64_t seed, const SolverConfig& config) {
  BenchCell cell;
  cell.instance = name;
  cell.seed = seed;
  cell.k = config.k;

  const RobustSolve solve = solve_robust(net, config);
  cell.optimum = solve.value;
  cell.iterations = solve.state.iterations;
  cell.outcome = solve.state.outcome;
  cell.paths_generated = static_cast<int>(solve.state.paths.size());
  cell.scenarios_generated =
      static_cast<int>(solve.state.scenarios.at(0).size());
  if (!solve.state.log.empty()) {
    cell.paths_active = solve.state.log.back().paths_active;
    cell.scenarios_active = solve.state.log.back().scenarios_active;
  }
  std::vector<double> pricing_times, interdiction_times;
  for (const auto& rec : solve.state.pricing_log)
    pricing_times.push_back(rec.time_sec);
  for (const auto& rec : solve.state.interdiction_log)
    interdiction_times.push_back(rec.time_sec);
  cell.pricing_q90 = quantile90(std::move(pricing_times));
  cell.interdiction_q90 = quantile90(std::move(interdiction_times));

  const HeuristicResult heur = solve_heuristic(net, config.k);
  cell.heuristic_value = heur.value;
  cell.heuristic_gap =
      cell.optimum > kValueTol
          ? std::max(0.0, (cell.optimum - heur.value) / cell.optimum)
          : 0.0;

  const int interdictable =
      static_cast<int>(net.interdictable_arcs().size());
  const int internal_nodes = net.node_count - 2;
  if (binomial_capped(interdictable, std::min(config.k, interdictable),
                      config.limits.max_scenarios + 1) <=
      config.limits.max_scenarios) {
    const InterdictionBound bound =
        interdiction_upper_bound(net, config.k, config.limits);
    cell.interdiction_bound = bound.value;
    cell.interdiction_exact = true;
  } else if (internal_nodes < 62 &&
             (std::int64_t{1} << internal_nodes) <=
                 config.limits.max_scenarios) {
    const InterdictionBound bound =
        interdiction_upper_bound_cuts(net, config.k, config.limits);
    cell.interdiction_bound = bound.value;
    cell.interdiction_exact = true;
  } else {
    const auto [bound, exact] =
        pool_interdiction_bound(net, config.k, solve);
    cell.interdiction_bound = bound;
    cell.interdiction_exact = exact;
  }
  cell.interdiction_gap =
      cell.optimum > kValueTol
          ? std::max(0.0, (cell.interdiction_bound - cell.optimum) /
                              cell.optimum)
          : 0.0;
  return cell;
}

BenchCell max_over_seeds(const std::vector<BenchCell>& cells) {
  if (cells.empty()) throw InputError("max_over_seeds: no cells");
  BenchCell agg = cells.front();
  agg.seed = 0;
  for (const BenchCell& c : cells) {
    agg.optimum = std::max(agg.optimum, c.optimum);
    agg.heuristic_value = std::max(agg.heuristic_value, c.heuristic_value);
    agg.interdiction_bound =
        std::max(agg.interdiction_bound, c.interdiction_bound);
    agg.interdiction_exact = agg.interdiction_exact && c.interdiction_exact;
    agg.iterations = std::max(agg.iterations, c.iterations);
    agg.paths_active = std::max(agg.paths_active, c.paths_active);
    agg.paths_generated = std::max(agg.paths_generated, c.paths_generated);
    agg.scenarios_active = std::max(agg.scenarios_active, c.scenarios_active);
    agg.scenarios_generated =
        std::max(agg.scenarios_generated, c.scenarios_generated);
    agg.pricing_q90 = std::max(agg.pricing_q90, c.pricing_q90);
    agg.interdiction_q90 = std::max(agg.interdiction_q90, c.interdiction_q90);
    agg.heuristic_gap = std::max(agg.heuristic_gap, c.heuristic_gap);
    agg.interdiction_gap = std::max(agg.interdiction_gap, c.interdiction_gap);
    if (c.outcome != SolveOutcome::kConverged) agg.outcome = c.outcome;
  }
  return agg;
}

namespace {

std::vector<std::vector<std::string>> bench_rows(
    const std::vector<BenchCell>& cells, const ReportOptions& options) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"instance", "seed", "k", "iterations", "paths_active",
                  "paths_generated", "pricing_q90", "scenarios_active",
                  "scenarios_generated", "interdiction_q90", "heuristic_gap",
                  "interdiction_gap", "optimum", "outcome"});
  for (const BenchCell& c : cells) {
    std::vector<std::string> row;
    row.push_back(c.instance);
    row.push_back(std::to_string(c.seed));
    row.push_back(std::to_string(c.k));
    row.push_back(std::to_string(c.iterations));
    row.push_back(std::to_string(c.paths_active));
    row.push_back(std::to_string(c.paths_generated));
    row.push_back(options.omit_times ? "-" : format_double(c.pricing_q90));
    row.push_back(std::to_string(c.scenarios_active));
    row.push_back(std::to_string(c.scenarios_generated));
    row.push_back(options.omit_times ? "-"
                                     : format_double(c.interdiction_q90));
    row.push_back(gap_string(c.heuristic_gap, options.percent, true));
    row.push_back(gap_string(c.interdiction_gap, options.percent,
                             c.interdiction_exact));
    row.push_back(format_double(c.optimum));
    row.push_back(outcome_name(c.outcome));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_bench_table(const std::vector<BenchCell>& cells,
                       const ReportOptions& options, std::ostream& out) {
  const auto rows = bench_rows(cells, options);
  std::vector<size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i]))
          << row[i];
    out << '\n';
  }
}

void write_bench_csv(const std::vector<BenchCell>& cells,
                     const ReportOptions& options, std::ostream& out) {
  for (const auto& row : bench_rows(cells, options)) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_bench_json(const std::vector<BenchCell>& cells,
                      const ReportOptions& options, std::ostream& out) {
  nlohmann::json result = nlohmann::json::array();
  for (const BenchCell& c : cells) {
    nlohmann::json cell = {{"instance", c.instance},
                           {"seed", c.seed},
                           {"k", c.k},
                           {"optimum", c.optimum},
                           {"heuristic_value", c.heuristic_value},
                           {"interdiction_bound", c.interdiction_bound},
                           {"interdiction_exact", c.interdiction_exact},
                           {"iterations", c.iterations},
                           {"paths_active", c.paths_active},
                           {"paths_generated", c.paths_generated},
                           {"scenarios_active", c.scenarios_active},
                           {"scenarios_generated", c.scenarios_generated},
                           {"heuristic_gap", c.heuristic_gap},
                           {"interdiction_gap", c.interdiction_gap},
                           {"outcome", outcome_name(c.outcome)}};
    if (!options.omit_times) {
      cell["pricing_q90"] = c.pricing_q90;
      cell["interdiction_q90"] = c.interdiction_q90;
    }
    result.push_back(std::move(cell));
  }
  out << result.dump(2) << '\n';
}

void write_bound_trace_csv(const SeparationState& state, std::ostream& out) {
  out << "iteration,f_primal,f_dual,paths_generated,scenarios_generated,"
         "paths_active,scenarios_active\n";
  for (const IterationRecord& rec : state.log) {
    out << rec.iteration << ',' << format_double(rec.f_primal) << ','
        << format_double(rec.f_dual) << ',' << rec.paths_generated << ','
        << rec.scenarios_generated << ',' << rec.paths_active << ','
        << rec.scenarios_active << '\n';
  }
}

void write_pricing_trace_csv(const SeparationState& state, std::ostream& out) {
  out << "iteration,priced_scenarios,time_sec,reduced_price\n";
  for (const PricingCallRecord& rec : state.pricing_log) {
    out << rec.iteration << ',' << rec.priced_scenarios << ','
        << format_double(rec.time_sec) << ','
        << format_double(rec.reduced_price) << '\n';
  }
}

}  // namespace robustflow
