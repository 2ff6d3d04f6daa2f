// Self-contained LP solver (bounded-variable two-phase revised simplex with
// dense basis inverse) returning primal and dual solutions, plus a
// branch-and-bound MILP engine. The only numerical engine used by the
// other modules.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robustflow/common.hpp"

namespace robustflow {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit };

struct LinearProgram {
  Sense sense = Sense::kMaximize;
  std::vector<double> objective;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<char> is_integer;
  std::vector<Relation> relations;
  std::vector<double> rhs;

  struct Entry {
    int row;
    int col;
    double value;
  };
  std::vector<Entry> entries;

  int add_column(double objective_coef, double lower, double upper,
                 bool integer = false);
  int add_row(Relation relation, double rhs_value);
  void add_entry(int row, int col, double value);

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  void validate() const;

  // Plain-text dump for debugging.
  std::string dump() const;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;  // empty when no (incumbent) solution exists
  std::vector<double> duals;   // per row; LP solves only

  // MILP bookkeeping.
  double best_bound = 0.0;
  std::int64_t nodes_explored = 0;

  bool numerical_warning = false;

  bool has_solution() const { return !primal.empty(); }
};

struct LpOptions {
  double optimality_tol = 1e-9;   // reduced-cost threshold
  double pivot_tol = 1e-11;       // smallest usable pivot magnitude
  std::int64_t max_iterations = 0;  // 0 = automatic (generous) limit
  bool scale = true;              // power-of-two row/column equilibration
};

struct MipOptions {
  LpOptions lp;
  std::int64_t node_limit = 1000000;
  double integrality_tol = 1e-6;
  double gap_abs = 1e-9;
  double gap_rel = 1e-6;
  // Columns eligible for branching; empty means all integer columns.
  // Fractional integer columns outside the set are branched on only if no
  // set member is fractional.
  std::vector<int> branch_set;
  // Optional feasible start; validated, then used as the initial incumbent.
  std::optional<std::vector<double>> warm_solution;
};

// Integrality flags are ignored. Returns an optimal basic solution with row
// duals; deterministic for fixed input (Dantzig pricing with a Bland
// anti-cycling fallback). Statuses, never exceptions, for well-formed input.
SolveResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});

// Branch and bound: best-bound node selection, most-fractional branching
// within the branch set (ties toward the lowest column index).
SolveResult solve_mip(const LinearProgram& lp, const MipOptions& options = {});

}  // namespace robustflow
