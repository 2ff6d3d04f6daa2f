// Benchmark harness and reporting: per-instance result rows with
// iteration/path/scenario counts, 90% quantile separation times,
// heuristic and interdiction gaps, plus per-iteration bound traces and
// per-call pricing traces as CSV.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robustflow/driver.hpp"

namespace robustflow {

enum class OutputFormat { kTable, kCsv, kJson };
OutputFormat output_format_from_name(const std::string& name);

struct BenchCell {
  std::string instance;
  std::uint64_t seed = 0;
  int k = 0;
  double optimum = 0.0;
  double heuristic_value = 0.0;
  double interdiction_bound = 0.0;
  bool interdiction_exact = true;  // bound proven equal to the true value
  int iterations = 0;
  int paths_active = 0;
  int paths_generated = 0;
  int scenarios_active = 0;
  int scenarios_generated = 0;
  double pricing_q90 = 0.0;
  double interdiction_q90 = 0.0;
  double heuristic_gap = 0.0;     // (optimum - heuristic) / optimum
  double interdiction_gap = 0.0;  // (bound - optimum) / optimum
  SolveOutcome outcome = SolveOutcome::kConverged;
};

// Nearest-rank 90% quantile; a single value is its own quantile.
double quantile90(std::vector<double> values);

// Solves the instance and assembles the full bench row. The interdiction
// bound uses scenario enumeration when it fits the limits, node-partition
// enumeration for small node counts, and otherwise certifies against a
// candidate pool (exact only if it pinches the optimum).
BenchCell run_bench_cell(const FlowNetwork& net, const std::string& name,
                         std::uint64_t seed, const SolverConfig& config);

// Aggregates per-seed rows by taking the maximum of each numeric column.
BenchCell max_over_seeds(const std::vector<BenchCell>& cells);

struct ReportOptions {
  bool percent = false;     // format gaps as percentages
  bool omit_times = true;   // replace timing columns by '-'
};

void write_bench_table(const std::vector<BenchCell>& cells,
                       const ReportOptions& options, std::ostream& out);
void write_bench_csv(const std::vector<BenchCell>& cells,
                     const ReportOptions& options, std::ostream& out);
void write_bench_json(const std::vector<BenchCell>& cells,
                      const ReportOptions& options, std::ostream& out);

// Per-iteration bound trace and per-call pricing trace.
void write_bound_trace_csv(const SeparationState& state, std::ostream& out);
void write_pricing_trace_csv(const SeparationState& state, std::ostream& out);

}  // namespace robustflow
