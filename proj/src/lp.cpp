#include "robustflow/lp.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <cstdio>
#include <cstdlib>

namespace robustflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int LinearProgram::add_column(double objective_coef, double lower,
                              double upper, bool integer) {
  objective.push_back(objective_coef);
  col_lower.push_back(lower);
  col_upper.push_back(upper);
  is_integer.push_back(integer ? 1 : 0);
  return num_cols() - 1;
}

int LinearProgram::add_row(Relation relation, double rhs_value) {
  relations.push_back(relation);
  rhs.push_back(rhs_value);
  return num_rows() - 1;
}

void LinearProgram::add_entry(int row, int col, double value) {
  entries.push_back(Entry{row, col, value});
}

void LinearProgram::validate() const {
  const int n = num_cols();
  const int m = num_rows();
  if (static_cast<int>(col_lower.size()) != n ||
      static_cast<int>(col_upper.size()) != n ||
      static_cast<int>(is_integer.size()) != n)
    throw InputError("lp: inconsistent column arrays");
  if (static_cast<int>(relations.size()) != m)
    throw InputError("lp: inconsistent row arrays");
  for (int j = 0; j < n; ++j) {
    if (std::isnan(col_lower[j]) || std::isnan(col_upper[j]))
      throw InputError("lp: NaN bound");
    if (col_lower[j] > col_upper[j])
      throw InputError("lp: lower bound exceeds upper bound");
    if (!std::isfinite(objective[j])) throw InputError("lp: objective not finite");
  }
  for (double b : rhs) {
    if (!std::isfinite(b)) throw InputError("lp: rhs not finite");
  }
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= m || e.col < 0 || e.col >= n)
      throw InputError("lp: entry index out of range");
    if (!std::isfinite(e.value)) throw InputError("lp: entry not finite");
  }
}

std::string LinearProgram::dump() const {
  std::ostringstream out;
  out << (sense == Sense::kMaximize ? "maximize" : "minimize") << "\n";
  out << "obj:";
  for (int j = 0; j < num_cols(); ++j) out << ' ' << objective[j];
  out << "\n";
  std::vector<std::vector<std::pair<int, double>>> rows(num_rows());
  for (const Entry& e : entries) rows[e.row].push_back({e.col, e.value});
  for (int i = 0; i < num_rows(); ++i) {
    out << "r" << i << ":";
    for (auto& [col, value] : rows[i]) out << ' ' << value << "*x" << col;
    out << (relations[i] == Relation::kLessEqual
                ? " <= "
                : relations[i] == Relation::kEqual ? " == " : " >= ")
        << rhs[i] << "\n";
  }
  for (int j = 0; j < num_cols(); ++j) {
    out << "x" << j << " in [" << col_lower[j] << ", " << col_upper[j] << "]"
        << (is_integer[j] ? " integer" : "") << "\n";
  }
  return out.str();
}

namespace {

enum class VarState : char { kBasic, kAtLower, kAtUpper, kFree };

struct SingularBasis {};

// Bounded-variable two-phase revised simplex with an explicit dense basis
// inverse. Works on max c^T v, A v + s = b, l <= v <= u with slack bounds
// encoding the row relations; phase 1 uses artificial columns on rows whose
// initial slack value violates its bounds.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, std::span<const double> lower,
          std::span<const double> upper, const LpOptions& opts)
      : opts_(opts), n_(lp.num_cols()), m_(lp.num_rows()) {
    // Aggregate duplicate entries into per-column sparse vectors.
    std::vector<std::map<int, double>> by_col(n_);
    for (const auto& e : lp.entries) by_col[e.col][e.row] += e.value;

    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_, 1.0);
    if (opts.scale) {
      auto pow2_near = [](double v) {
        if (v <= 0.0) return 1.0;
        return std::exp2(std::round(std::log2(v)));
      };
      std::vector<double> row_max(m_, 0.0);
      for (int j = 0; j < n_; ++j)
        for (auto& [i, v] : by_col[j])
          row_max[i] = std::max(row_max[i], std::abs(v));
      for (int i = 0; i < m_; ++i)
        row_scale_[i] = 1.0 / pow2_near(row_max[i]);
      // Power-of-two factors keep the transformation exact.
      for (int j = 0; j < n_; ++j) {
        double cmax = 0.0;
        for (auto& [i, v] : by_col[j])
          cmax = std::max(cmax, std::abs(v) * row_scale_[i]);
        col_scale_[j] = 1.0 / pow2_near(cmax);
      }
    }

    const int total = n_ + m_;  // structural + slack; artificials appended
    cols_.resize(total);
    for (int j = 0; j < n_; ++j) {
      for (auto& [i, v] : by_col[j])
        cols_[j].push_back({i, v * row_scale_[i] * col_scale_[j]});
    }
    for (int i = 0; i < m_; ++i) cols_[n_ + i].push_back({i, 1.0});

    lb_.assign(total, 0.0);
    ub_.assign(total, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lower[j] == -kInf ? -kInf : lower[j] / col_scale_[j];
      ub_[j] = upper[j] == kInf ? kInf : upper[j] / col_scale_[j];
    }
    rhs_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) rhs_[i] = lp.rhs[i] * row_scale_[i];
    for (int i = 0; i < m_; ++i) {
      switch (lp.relations[i]) {
        case Relation::kLessEqual:
          lb_[n_ + i] = 0.0;
          ub_[n_ + i] = kInf;
          break;
        case Relation::kEqual:
          lb_[n_ + i] = 0.0;
          ub_[n_ + i] = 0.0;
          break;
        case Relation::kGreaterEqual:
          lb_[n_ + i] = -kInf;
          ub_[n_ + i] = 0.0;
          break;
      }
    }

    obj_.assign(total, 0.0);
    const double sign = lp.sense == Sense::kMaximize ? 1.0 : -1.0;
    for (int j = 0; j < n_; ++j)
      obj_[j] = sign * lp.objective[j] * col_scale_[j];
  }

  // Runs both phases. Returns kOptimal/kInfeasible/kUnbounded. A singular
  // basis (rare, degenerate pivot sequences) restarts from scratch under
  // Bland's rule, which selects a different pivot path.
  SolveStatus run() {
    for (int attempt = 0; attempt < 3; ++attempt) {
      try {
        return run_once();
      } catch (const SingularBasis&) {
        warning_ = true;
        force_bland_ = true;
      }
    }
    throw std::runtime_error("simplex: singular basis");
  }

  SolveStatus run_once() {
    setup_initial_basis();
    if (!artificial_.empty()) {
      std::vector<double> phase1_obj(cols_.size(), 0.0);
      for (int j : artificial_) phase1_obj[j] = -1.0;
      const SolveStatus s = iterate(phase1_obj);
      if (s == SolveStatus::kUnbounded)
        throw std::runtime_error("simplex: phase 1 unbounded");
      if (s != SolveStatus::kOptimal) return s;
      double infeasibility = 0.0;
      for (int j : artificial_) infeasibility += std::abs(value_[j]);
      double bnorm = 0.0;
      for (double b : rhs_) bnorm += std::abs(b);
      if (infeasibility > 1e-8 * (1.0 + bnorm)) return SolveStatus::kInfeasible;
      for (int j : artificial_) {
        lb_[j] = ub_[j] = 0.0;
        if (state_[j] != VarState::kBasic) value_[j] = 0.0;
      }
    }
    return iterate(obj_);
  }

  // Unscaled primal value of structural column j.
  double primal(int j) const { return value_[j] * col_scale_[j]; }

  // Unscaled dual of row i under the phase-2 objective.
  double dual(int i) const { return y_[i] * row_scale_[i]; }

  bool numerical_warning() const { return warning_; }

 private:
  void setup_initial_basis() {
    // Discard artificials from any previous attempt.
    cols_.resize(n_ + m_);
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    obj_.resize(n_ + m_);
    const int total = static_cast<int>(cols_.size());
    value_.assign(total, 0.0);
    state_.assign(total, VarState::kAtLower);
    for (int j = 0; j < n_; ++j) {
      if (lb_[j] != -kInf) {
        value_[j] = lb_[j];
        state_[j] = VarState::kAtLower;
      } else if (ub_[j] != kInf) {
        value_[j] = ub_[j];
        state_[j] = VarState::kAtUpper;
      } else {
        value_[j] = 0.0;
        state_[j] = VarState::kFree;
      }
    }
    // Initial slack values; out-of-bound rows get an artificial column.
    std::vector<double> slack(m_);
    for (int i = 0; i < m_; ++i) slack[i] = rhs_[i];
    for (int j = 0; j < n_; ++j) {
      if (value_[j] == 0.0) continue;
      for (auto& [i, v] : cols_[j]) slack[i] -= v * value_[j];
    }
    basis_.assign(m_, -1);
    artificial_.clear();
    for (int i = 0; i < m_; ++i) {
      const int sj = n_ + i;
      if (slack[i] >= lb_[sj] && slack[i] <= ub_[sj]) {
        basis_[i] = sj;
        state_[sj] = VarState::kBasic;
        value_[sj] = slack[i];
      } else {
        const bool below = slack[i] < lb_[sj];
        // Pin the slack at the violated bound, cover the gap artificially.
        value_[sj] = below ? lb_[sj] : ub_[sj];
        state_[sj] = below ? VarState::kAtLower : VarState::kAtUpper;
        const int aj = static_cast<int>(cols_.size());
        cols_.push_back({{i, below ? -1.0 : 1.0}});
        lb_.push_back(0.0);
        ub_.push_back(kInf);
        obj_.push_back(0.0);
        value_.push_back(std::abs(slack[i] - value_[sj]));
        state_.push_back(VarState::kBasic);
        basis_[i] = aj;
        artificial_.push_back(aj);
      }
    }
    refactor();
  }

  // Rebuilds the dense basis inverse by Gauss-Jordan elimination with
  // partial pivoting, then recomputes basic values.
  void refactor() {
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    std::vector<double> work(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c)
      for (auto& [i, v] : cols_[basis_[c]]) work[i * m_ + c] = v;

    for (int c = 0; c < m_; ++c) {
      int pivot_row = c;
      double best = std::abs(work[c * m_ + c]);
      for (int r = c + 1; r < m_; ++r) {
        const double cand = std::abs(work[r * m_ + c]);
        if (cand > best) {
          best = cand;
          pivot_row = r;
        }
      }
      if (best < 1e-12) {
        if (std::getenv("LP_TRACE")) std::fprintf(stderr, "singular at refactor: col %d of %d, pivots_since %d\n", c, m_, pivots_since_refactor_);
        throw SingularBasis{};
      }
      if (pivot_row != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(work[pivot_row * m_ + k], work[c * m_ + k]);
          std::swap(binv_[pivot_row * m_ + k], binv_[c * m_ + k]);
        }
      }
      const double piv = work[c * m_ + c];
      for (int k = 0; k < m_; ++k) {
        work[c * m_ + k] /= piv;
        binv_[c * m_ + k] /= piv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = work[r * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          work[r * m_ + k] -= f * work[c * m_ + k];
          binv_[r * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    recompute_basic_values();
    pivots_since_refactor_ = 0;
  }

  void recompute_basic_values() {
    std::vector<double> residual(rhs_);
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (state_[j] == VarState::kBasic || value_[j] == 0.0) continue;
      for (auto& [i, v] : cols_[j]) residual[i] -= v * value_[j];
    }
    for (int r = 0; r < m_; ++r) {
      double acc = 0.0;
      for (int k = 0; k < m_; ++k) acc += binv_[r * m_ + k] * residual[k];
      value_[basis_[r]] = acc;
    }
  }

  void compute_duals(const std::vector<double>& objective) {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = objective[basis_[r]];
      if (c == 0.0) continue;
      for (int k = 0; k < m_; ++k) y_[k] += c * binv_[r * m_ + k];
    }
  }

  double reduced_cost(const std::vector<double>& objective, int j) const {
    double d = objective[j];
    for (auto& [i, v] : cols_[j]) d -= y_[i] * v;
    return d;
  }

  SolveStatus iterate(const std::vector<double>& objective) {
    const std::int64_t auto_limit =
        opts_.max_iterations > 0
            ? opts_.max_iterations
            : 20000 + 200 * static_cast<std::int64_t>(n_ + m_);
    std::int64_t iterations = 0;
    int consecutive_degenerate = 0;
    bool bland = force_bland_;
    bool rescanned_after_refactor = false;

    for (;;) {
      if (iterations >= auto_limit) {
        if (!bland) {
          bland = true;  // last resort against numerical stalling
          refactor();
          iterations = 0;
        } else {
          throw std::runtime_error("simplex: iteration limit exceeded");
        }
      }
      ++iterations;
      if (pivots_since_refactor_ >= 128) refactor();
      compute_duals(objective);

      // Entering variable: Dantzig rule, Bland fallback under degeneracy.
      int entering = -1;
      double best_score = opts_.optimality_tol;
      int direction = 0;
      for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (lb_[j] == ub_[j]) continue;
        const double d = reduced_cost(objective, j);
        const bool can_up =
            (state_[j] == VarState::kAtLower || state_[j] == VarState::kFree);
        const bool can_down =
            (state_[j] == VarState::kAtUpper || state_[j] == VarState::kFree);
        double score = 0.0;
        int dir = 0;
        if (can_up && d > opts_.optimality_tol) {
          score = d;
          dir = +1;
        } else if (can_down && d < -opts_.optimality_tol) {
          score = -d;
          dir = -1;
        } else {
          continue;
        }
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) {
        // Verify optimality against a freshly factorized basis.
        if (pivots_since_refactor_ > 0 && !rescanned_after_refactor) {
          refactor();
          rescanned_after_refactor = true;
          continue;
        }
        compute_duals(objective);
        return SolveStatus::kOptimal;
      }
      rescanned_after_refactor = false;

      // Direction column w = B^{-1} A_j.
      std::vector<double> w(m_, 0.0);
      for (auto& [i, v] : cols_[entering])
        for (int r = 0; r < m_; ++r) w[r] += binv_[r * m_ + i] * v;

      // Two-pass ratio test. Pass 1 finds the smallest step with a small
      // bound-violation allowance; pass 2 picks, among rows blocking
      // within that relaxed step, the one with the largest pivot (under
      // Bland's rule: the lowest blocking variable index).
      double t_limit = kInf;
      if (lb_[entering] != -kInf && ub_[entering] != kInf)
        t_limit = ub_[entering] - lb_[entering];
      constexpr double kRatioEps = 1e-9;

      double t_relaxed = t_limit;
      std::vector<double> strict_t(m_, kInf);
      std::vector<char> decreases(m_, 0);
      for (int r = 0; r < m_; ++r) {
        const double delta = -direction * w[r];
        if (std::abs(delta) <= opts_.pivot_tol) continue;
        const int bvar = basis_[r];
        double slack, relaxed;
        if (delta < 0.0) {
          if (lb_[bvar] == -kInf) continue;
          slack = value_[bvar] - lb_[bvar];
          relaxed = (slack + kRatioEps) / (-delta);
          decreases[r] = 1;
        } else {
          if (ub_[bvar] == kInf) continue;
          slack = ub_[bvar] - value_[bvar];
          relaxed = (slack + kRatioEps) / delta;
        }
        strict_t[r] = std::max(0.0, slack / std::abs(delta));
        t_relaxed = std::min(t_relaxed, relaxed);
      }

      int leaving_row = -1;
      for (int r = 0; r < m_; ++r) {
        if (strict_t[r] > t_relaxed) continue;
        if (leaving_row < 0) {
          leaving_row = r;
          continue;
        }
        if (bland) {
          if (basis_[r] < basis_[leaving_row]) leaving_row = r;
        } else if (std::abs(w[r]) > std::abs(w[leaving_row]) + 1e-12 ||
                   (std::abs(w[r]) >= std::abs(w[leaving_row]) - 1e-12 &&
                    basis_[r] < basis_[leaving_row])) {
          leaving_row = r;
        }
      }

      if (leaving_row < 0 && t_limit == kInf)
        return SolveStatus::kUnbounded;
      const bool leaving_to_lower =
          leaving_row >= 0 && decreases[leaving_row];
      const double best_t =
          leaving_row < 0 ? t_limit : std::min(strict_t[leaving_row], t_limit);
      if (leaving_row >= 0 && t_limit < strict_t[leaving_row]) {
        // The entering variable flips before any basic variable blocks.
        leaving_row = -1;
      }

      const double t = best_t;
      if (t > 1e-12) {
        consecutive_degenerate = 0;
      } else if (++consecutive_degenerate >= 64 && !bland) {
        bland = true;
      }

      // Move basic variables and the entering variable.
      for (int r = 0; r < m_; ++r) {
        const double delta = -direction * w[r];
        if (delta != 0.0) value_[basis_[r]] += delta * t;
      }
      value_[entering] += direction * t;

      if (leaving_row < 0) {
        // Bound flip: snap exactly to the opposite bound.
        state_[entering] =
            direction > 0 ? VarState::kAtUpper : VarState::kAtLower;
        value_[entering] =
            direction > 0 ? ub_[entering] : lb_[entering];
        continue;
      }

      const int leaving = basis_[leaving_row];
      value_[leaving] = leaving_to_lower ? lb_[leaving] : ub_[leaving];
      state_[leaving] =
          leaving_to_lower ? VarState::kAtLower : VarState::kAtUpper;
      state_[entering] = VarState::kBasic;
      basis_[leaving_row] = entering;

      // Pivot update of the dense inverse.
      const double piv = w[leaving_row];
      double* prow = &binv_[leaving_row * m_];
      for (int k = 0; k < m_; ++k) prow[k] /= piv;
      for (int r = 0; r < m_; ++r) {
        if (r == leaving_row) continue;
        const double f = w[r];
        if (f == 0.0) continue;
        double* row = &binv_[r * m_];
        for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
      }
      ++pivots_since_refactor_;
    }
  }

  LpOptions opts_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lb_, ub_, obj_, rhs_;
  std::vector<double> row_scale_, col_scale_;
  std::vector<double> value_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<double> binv_;
  std::vector<double> y_;
  std::vector<int> artificial_;
  int pivots_since_refactor_ = 0;
  bool warning_ = false;
  bool force_bland_ = false;
};

SolveResult solve_lp_bounds(const LinearProgram& lp,
                            std::span<const double> lower,
                            std::span<const double> upper,
                            const LpOptions& options) {
  lp.validate();
  Simplex simplex(lp, lower, upper, options);
  SolveResult result;
  result.status = simplex.run();
  result.nodes_explored = 0;
  if (result.status != SolveStatus::kOptimal) return result;

  const int n = lp.num_cols();
  const int m = lp.num_rows();
  result.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = simplex.primal(j);
    // Snap numerical dust onto the bounds.
    if (v < lower[j]) v = lower[j];
    if (v > upper[j]) v = upper[j];
    result.primal[j] = v;
  }
  result.duals.resize(m);
  const double sign = lp.sense == Sense::kMaximize ? 1.0 : -1.0;
  for (int i = 0; i < m; ++i) result.duals[i] = sign * simplex.dual(i);
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += lp.objective[j] * result.primal[j];
  result.objective = obj;
  result.best_bound = obj;

  // Residual check in user space.
  std::vector<double> activity(m, 0.0);
  for (const auto& e : lp.entries)
    activity[e.row] += e.value * result.primal[e.col];
  double max_violation = 0.0;
  for (int i = 0; i < m; ++i) {
    const double scale = 1.0 + std::abs(lp.rhs[i]);
    double viol = 0.0;
    switch (lp.relations[i]) {
      case Relation::kLessEqual:
        viol = activity[i] - lp.rhs[i];
        break;
      case Relation::kEqual:
        viol = std::abs(activity[i] - lp.rhs[i]);
        break;
      case Relation::kGreaterEqual:
        viol = lp.rhs[i] - activity[i];
        break;
    }
    max_violation = std::max(max_violation, viol / scale);
  }
  if (max_violation > 1e-7 || simplex.numerical_warning())
    result.numerical_warning = true;
  return result;
}

}  // namespace

SolveResult solve_lp(const LinearProgram& lp, const LpOptions& options) {
  return solve_lp_bounds(lp, lp.col_lower, lp.col_upper, options);
}

namespace {

double mip_gap_tol(double incumbent, const MipOptions& opts) {
  return std::max(opts.gap_abs, opts.gap_rel * std::abs(incumbent));
}

struct MipNode {
  std::vector<std::array<double, 2>> changed_bounds;  // parallel to cols
  std::vector<int> changed_cols;
  double bound = 0.0;
  std::int64_t counter = 0;
};

bool warm_solution_valid(const LinearProgram& lp,
                         const std::vector<double>& x, double int_tol) {
  if (static_cast<int>(x.size()) != lp.num_cols()) return false;
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (x[j] < lp.col_lower[j] - 1e-7 || x[j] > lp.col_upper[j] + 1e-7)
      return false;
    if (lp.is_integer[j] && std::abs(x[j] - std::round(x[j])) > int_tol)
      return false;
  }
  std::vector<double> activity(lp.num_rows(), 0.0);
  for (const auto& e : lp.entries) activity[e.row] += e.value * x[e.col];
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double scale = 1.0 + std::abs(lp.rhs[i]);
    switch (lp.relations[i]) {
      case Relation::kLessEqual:
        if (activity[i] > lp.rhs[i] + 1e-7 * scale) return false;
        break;
      case Relation::kEqual:
        if (std::abs(activity[i] - lp.rhs[i]) > 1e-7 * scale) return false;
        break;
      case Relation::kGreaterEqual:
        if (activity[i] < lp.rhs[i] - 1e-7 * scale) return false;
        break;
    }
  }
  return true;
}

}  // namespace

SolveResult solve_mip(const LinearProgram& lp, const MipOptions& options) {
  lp.validate();
  const double sigma = lp.sense == Sense::kMaximize ? 1.0 : -1.0;

  std::vector<int> integer_cols;
  for (int j = 0; j < lp.num_cols(); ++j)
    if (lp.is_integer[j]) integer_cols.push_back(j);
  if (integer_cols.empty()) {
    SolveResult r = solve_lp(lp, options.lp);
    r.nodes_explored = 1;
    return r;
  }
  std::vector<int> branch_set = options.branch_set;
  std::sort(branch_set.begin(), branch_set.end());

  bool have_incumbent = false;
  double incumbent_obj = 0.0;
  std::vector<double> incumbent;
  if (options.warm_solution &&
      warm_solution_valid(lp, *options.warm_solution,
                          options.integrality_tol)) {
    incumbent = *options.warm_solution;
    incumbent_obj = 0.0;
    for (int j = 0; j < lp.num_cols(); ++j)
      incumbent_obj += lp.objective[j] * incumbent[j];
    have_incumbent = true;
  }

  auto node_less = [sigma](const MipNode& a, const MipNode& b) {
    if (sigma * a.bound != sigma * b.bound)
      return sigma * a.bound < sigma * b.bound;
    return a.counter > b.counter;
  };
  std::priority_queue<MipNode, std::vector<MipNode>, decltype(node_less)>
      queue(node_less);

  std::int64_t counter = 0;
  queue.push(MipNode{{}, {}, sigma * kInf, counter++});

  SolveResult result;
  result.nodes_explored = 0;
  bool node_limit_hit = false;
  double remaining_bound = -sigma * kInf;

  std::vector<double> lower(lp.col_lower), upper(lp.col_upper);
  while (!queue.empty()) {
    const MipNode node = queue.top();

    if (have_incumbent &&
        sigma * (node.bound - incumbent_obj) <=
            mip_gap_tol(incumbent_obj, options)) {
      // Best-first order: every remaining node is pruned as well.
      break;
    }
    if (result.nodes_explored >= options.node_limit) {
      node_limit_hit = true;
      remaining_bound = node.bound;
      break;
    }
    queue.pop();

    lower = lp.col_lower;
    upper = lp.col_upper;
    for (size_t i = 0; i < node.changed_cols.size(); ++i) {
      lower[node.changed_cols[i]] = node.changed_bounds[i][0];
      upper[node.changed_cols[i]] = node.changed_bounds[i][1];
    }

    SolveResult relax = solve_lp_bounds(lp, lower, upper, options.lp);
    ++result.nodes_explored;
    if (relax.numerical_warning) result.numerical_warning = true;
    if (relax.status == SolveStatus::kInfeasible) continue;
    if (relax.status == SolveStatus::kUnbounded) {
      // Only possible at the root: the relaxation contains all children.
      result.status = SolveStatus::kUnbounded;
      return result;
    }
    if (have_incumbent &&
        sigma * (relax.objective - incumbent_obj) <=
            mip_gap_tol(incumbent_obj, options))
      continue;

    int branch_col = -1;
    double branch_frac = -1.0;
    auto consider = [&](int j) {
      const double v = relax.primal[j];
      const double frac = std::abs(v - std::round(v));
      if (frac <= options.integrality_tol) return;
      const double dist = std::min(v - std::floor(v), std::ceil(v) - v);
      if (dist > branch_frac + 1e-12) {
        branch_frac = dist;
        branch_col = j;
      }
    };
    if (!branch_set.empty()) {
      for (int j : branch_set)
        if (lp.is_integer[j]) consider(j);
    }
    if (branch_col < 0) {
      for (int j : integer_cols) consider(j);
    }

    if (branch_col < 0) {
      // Integer feasible.
      if (!have_incumbent || sigma * (relax.objective - incumbent_obj) > 0) {
        have_incumbent = true;
        incumbent_obj = relax.objective;
        incumbent = relax.primal;
        for (int j : integer_cols) incumbent[j] = std::round(incumbent[j]);
      }
      continue;
    }

    const double v = relax.primal[branch_col];
    const double floor_v = std::floor(v);
    MipNode down{node.changed_bounds, node.changed_cols, relax.objective,
                 counter++};
    down.changed_cols.push_back(branch_col);
    down.changed_bounds.push_back(
        {lower[branch_col], std::min(upper[branch_col], floor_v)});
    MipNode up{node.changed_bounds, node.changed_cols, relax.objective,
               counter++};
    up.changed_cols.push_back(branch_col);
    up.changed_bounds.push_back(
        {std::max(lower[branch_col], floor_v + 1.0), upper[branch_col]});
    queue.push(std::move(down));
    queue.push(std::move(up));
  }

  if (node_limit_hit) {
    result.status = SolveStatus::kNodeLimit;
    result.best_bound = remaining_bound;
    if (have_incumbent) {
      result.objective = incumbent_obj;
      result.primal = std::move(incumbent);
    }
    return result;
  }
  if (!have_incumbent) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  result.status = SolveStatus::kOptimal;
  result.objective = incumbent_obj;
  result.best_bound = incumbent_obj;
  result.primal = std::move(incumbent);
  return result;
}

}  // namespace robustflow
