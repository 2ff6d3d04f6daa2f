#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracle_utils.hpp"
#include "robustflow/lp.hpp"
#include "robustflow/rng.hpp"

using namespace robustflow;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Brute-force LP oracle: enumerate candidate vertices as solutions of all
// square subsystems drawn from row activities and variable bounds, filter
// by feasibility, take the best objective. Small dense instances only.
struct DenseLp {
  Sense sense;
  std::vector<double> c;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> rel;
  std::vector<double> rhs;
  std::vector<double> lo, hi;
};

LinearProgram to_lp(const DenseLp& d) {
  LinearProgram lp;
  lp.sense = d.sense;
  for (size_t j = 0; j < d.c.size(); ++j)
    lp.add_column(d.c[j], d.lo[j], d.hi[j]);
  for (size_t i = 0; i < d.rows.size(); ++i) {
    lp.add_row(d.rel[i], d.rhs[i]);
    for (size_t j = 0; j < d.c.size(); ++j) {
      if (d.rows[i][j] != 0.0)
        lp.add_entry(static_cast<int>(i), static_cast<int>(j), d.rows[i][j]);
    }
  }
  return lp;
}

bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-10) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Returns the optimal value or nullopt when infeasible. Assumes the
// feasible set is bounded (finite boxes in the tests).
std::optional<double> vertex_oracle(const DenseLp& d) {
  const size_t n = d.c.size();
  // Candidate equalities: each row at its rhs, or a variable at a bound.
  struct Candidate {
    std::vector<double> coef;
    double value;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < d.rows.size(); ++i)
    candidates.push_back({d.rows[i], d.rhs[i]});
  for (size_t j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    if (d.lo[j] != -kInf) candidates.push_back({unit, d.lo[j]});
    if (d.hi[j] != kInf) candidates.push_back({unit, d.hi[j]});
  }
  const double sigma = d.sense == Sense::kMaximize ? 1.0 : -1.0;
  std::optional<double> best;
  std::vector<int> pool(candidates.size());
  for (size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  robustflow::testing::for_each_subset(
      pool, static_cast<int>(n), [&](const std::vector<int>& subset) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (int idx : subset) {
          a.push_back(candidates[idx].coef);
          b.push_back(candidates[idx].value);
        }
        std::vector<double> x;
        if (!solve_square(a, b, x)) return;
        for (size_t j = 0; j < n; ++j) {
          if (x[j] < d.lo[j] - 1e-7 || x[j] > d.hi[j] + 1e-7) return;
        }
        for (size_t i = 0; i < d.rows.size(); ++i) {
          double activity = 0.0;
          for (size_t j = 0; j < n; ++j) activity += d.rows[i][j] * x[j];
          switch (d.rel[i]) {
            case Relation::kLessEqual:
              if (activity > d.rhs[i] + 1e-7) return;
              break;
            case Relation::kEqual:
              if (std::abs(activity - d.rhs[i]) > 1e-7) return;
              break;
            case Relation::kGreaterEqual:
              if (activity < d.rhs[i] - 1e-7) return;
              break;
          }
        }
        double obj = 0.0;
        for (size_t j = 0; j < n; ++j) obj += d.c[j] * x[j];
        if (!best || sigma * obj > sigma * *best) best = obj;
      });
  return best;
}

}  // namespace

TEST_CASE("one-variable maximum with dual") {
  LinearProgram lp;
  lp.add_column(1.0, 0.0, kInf);
  lp.add_row(Relation::kLessEqual, 3.0);
  lp.add_entry(0, 0, 1.0);
  const SolveResult r = solve_lp(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.primal[0] == doctest::Approx(3.0));
  CHECK(r.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("two variables sharing one unit of capacity") {
  LinearProgram lp;
  lp.add_column(1.0, 0.0, kInf);
  lp.add_column(1.0, 0.0, kInf);
  lp.add_row(Relation::kLessEqual, 1.0);
  lp.add_entry(0, 0, 1.0);
  lp.add_entry(0, 1, 1.0);
  const SolveResult r = solve_lp(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded statuses") {
  SUBCASE("infeasible") {
    LinearProgram lp;
    lp.add_column(1.0, 0.0, kInf);
    lp.add_row(Relation::kLessEqual, 1.0);
    lp.add_entry(0, 0, 1.0);
    lp.add_row(Relation::kGreaterEqual, 2.0);
    lp.add_entry(1, 0, 1.0);
    CHECK(solve_lp(lp).status == SolveStatus::kInfeasible);
  }
  SUBCASE("unbounded") {
    LinearProgram lp;
    lp.add_column(1.0, 0.0, kInf);
    lp.add_row(Relation::kGreaterEqual, 0.0);
    lp.add_entry(0, 0, 1.0);
    CHECK(solve_lp(lp).status == SolveStatus::kUnbounded);
  }
  SUBCASE("equality rows force phase one") {
    LinearProgram lp;
    lp.add_column(1.0, 0.0, 10.0);
    lp.add_column(2.0, 0.0, 10.0);
    lp.add_row(Relation::kEqual, 4.0);
    lp.add_entry(0, 0, 1.0);
    lp.add_entry(0, 1, 1.0);
    const SolveResult r = solve_lp(lp);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(8.0));
  }
}

TEST_CASE("minimization sense and dual signs") {
  // min 2x + 3y s.t. x + y >= 4, x,y >= 0.
  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  lp.add_column(2.0, 0.0, kInf);
  lp.add_column(3.0, 0.0, kInf);
  lp.add_row(Relation::kGreaterEqual, 4.0);
  lp.add_entry(0, 0, 1.0);
  lp.add_entry(0, 1, 1.0);
  const SolveResult r = solve_lp(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(8.0));
  CHECK(r.duals[0] == doctest::Approx(2.0));  // shadow price of the demand
}

TEST_CASE("random dense LPs agree with the vertex enumeration oracle") {
  Rng rng(101);
  int solved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int m = 1 + static_cast<int>(rng.below(3));
    DenseLp d;
    d.sense = rng.uniform() < 0.5 ? Sense::kMaximize : Sense::kMinimize;
    for (int j = 0; j < n; ++j) {
      d.c.push_back(std::round((rng.uniform() * 10.0 - 5.0) * 4.0) / 4.0);
      d.lo.push_back(0.0);
      d.hi.push_back(1.0 + std::round(rng.uniform() * 12.0) / 4.0);
    }
    for (int i = 0; i < m; ++i) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j)
        row.push_back(std::round((rng.uniform() * 6.0 - 3.0) * 4.0) / 4.0);
      d.rows.push_back(row);
      const double u = rng.uniform();
      d.rel.push_back(u < 0.6 ? Relation::kLessEqual
                              : (u < 0.8 ? Relation::kGreaterEqual
                                         : Relation::kEqual));
      d.rhs.push_back(std::round((rng.uniform() * 8.0 - 2.0) * 4.0) / 4.0);
    }
    const auto expected = vertex_oracle(d);
    const SolveResult got = solve_lp(to_lp(d));
    if (!expected) {
      CHECK(got.status == SolveStatus::kInfeasible);
      continue;
    }
    ++solved;
    REQUIRE(got.status == SolveStatus::kOptimal);
    CHECK(got.objective == doctest::Approx(*expected).epsilon(1e-6));

    // Strong duality via complementarity: c x = y b + sum_j d_j x_j with
    // d the reduced costs of the returned duals.
    const LinearProgram lp = to_lp(d);
    std::vector<double> reduced(lp.num_cols());
    for (int j = 0; j < lp.num_cols(); ++j) reduced[j] = lp.objective[j];
    for (const auto& e : lp.entries)
      reduced[e.col] -= got.duals[e.row] * e.value;
    double dual_value = 0.0;
    for (int i = 0; i < lp.num_rows(); ++i)
      dual_value += got.duals[i] * lp.rhs[i];
    for (int j = 0; j < lp.num_cols(); ++j)
      dual_value += reduced[j] * got.primal[j];
    CHECK(got.objective ==
          doctest::Approx(dual_value).epsilon(1e-6));
  }
  CHECK(solved > 40);  // the generator must produce plenty of feasible LPs
}

TEST_CASE("primal residuals stay below 1e-7 at optimal status") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    LinearProgram lp;
    for (int j = 0; j < n; ++j)
      lp.add_column(rng.uniform() * 4.0 - 2.0, 0.0, 5.0 * rng.uniform() + 0.5);
    for (int i = 0; i < 3; ++i) {
      lp.add_row(i % 2 ? Relation::kGreaterEqual : Relation::kLessEqual,
                 rng.uniform() * 4.0);
      for (int j = 0; j < n; ++j)
        lp.add_entry(i, j, rng.uniform() * 2.0 - 0.5);
    }
    const SolveResult r = solve_lp(lp);
    if (r.status != SolveStatus::kOptimal) continue;
    CHECK_FALSE(r.numerical_warning);
    std::vector<double> activity(lp.num_rows(), 0.0);
    for (const auto& e : lp.entries)
      activity[e.row] += e.value * r.primal[e.col];
    for (int i = 0; i < lp.num_rows(); ++i) {
      const double scale = 1.0 + std::abs(lp.rhs[i]);
      if (lp.relations[i] == Relation::kLessEqual)
        CHECK(activity[i] <= lp.rhs[i] + 1e-7 * scale);
      else
        CHECK(activity[i] >= lp.rhs[i] - 1e-7 * scale);
    }
  }
}

TEST_CASE("badly scaled data is equilibrated") {
  // Optimal: spend the whole row on x1 (1e9 units at 1e-6 each).
  LinearProgram lp;
  lp.add_column(1.0, 0.0, kInf);
  lp.add_column(1e-6, 0.0, kInf);
  lp.add_row(Relation::kLessEqual, 1e6);
  lp.add_entry(0, 0, 1e6);
  lp.add_entry(0, 1, 1e-3);
  const SolveResult r = solve_lp(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1000.0).epsilon(1e-6));
  CHECK(r.primal[1] == doctest::Approx(1e9).epsilon(1e-6));
}

TEST_CASE("determinism: identical input gives identical output") {
  Rng rng(77);
  LinearProgram lp;
  const int n = 6;
  for (int j = 0; j < n; ++j)
    lp.add_column(rng.uniform() * 3.0 - 1.0, 0.0, 2.0);
  for (int i = 0; i < 4; ++i) {
    lp.add_row(Relation::kLessEqual, 1.0 + rng.uniform() * 2.0);
    for (int j = 0; j < n; ++j) lp.add_entry(i, j, rng.uniform());
  }
  const SolveResult a = solve_lp(lp);
  const SolveResult b = solve_lp(lp);
  REQUIRE(a.status == SolveStatus::kOptimal);
  CHECK(a.objective == b.objective);
  for (int j = 0; j < n; ++j) CHECK(a.primal[j] == b.primal[j]);
  for (size_t i = 0; i < a.duals.size(); ++i) CHECK(a.duals[i] == b.duals[i]);
}

TEST_CASE("knapsack MILP") {
  // max 2a + 3b, a + b <= 1, binary.
  LinearProgram lp;
  lp.add_column(2.0, 0.0, 1.0, true);
  lp.add_column(3.0, 0.0, 1.0, true);
  lp.add_row(Relation::kLessEqual, 1.0);
  lp.add_entry(0, 0, 1.0);
  lp.add_entry(0, 1, 1.0);
  const SolveResult r = solve_mip(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.primal[0] == doctest::Approx(0.0));
  CHECK(r.primal[1] == doctest::Approx(1.0));
  CHECK(r.best_bound == doctest::Approx(3.0));
}

TEST_CASE("integral relaxation solves at the root") {
  // Shortest-path-like totally unimodular system.
  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  // arcs: s->a, s->b, a->t, b->t with costs 1, 2, 1, 1
  const double costs[4] = {1.0, 2.0, 1.0, 1.0};
  for (double c : costs) lp.add_column(c, 0.0, 1.0, true);
  // conservation at a, b; unit arrival at t
  lp.add_row(Relation::kEqual, 0.0);  // a
  lp.add_entry(0, 0, 1.0);
  lp.add_entry(0, 2, -1.0);
  lp.add_row(Relation::kEqual, 0.0);  // b
  lp.add_entry(1, 1, 1.0);
  lp.add_entry(1, 3, -1.0);
  lp.add_row(Relation::kEqual, 1.0);  // t
  lp.add_entry(2, 2, 1.0);
  lp.add_entry(2, 3, 1.0);
  const SolveResult r = solve_mip(lp);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.nodes_explored == 1);
}

TEST_CASE("MILP with fractional relaxation matches exhaustive enumeration") {
  Rng rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));
    std::vector<double> weights(n), values(n);
    for (int j = 0; j < n; ++j) {
      weights[j] = 1.0 + std::round(rng.uniform() * 8.0) / 2.0;
      values[j] = 1.0 + std::round(rng.uniform() * 12.0) / 2.0;
    }
    const double budget = 1.0 + std::round(rng.uniform() * 10.0) / 2.0;
    LinearProgram lp;
    for (int j = 0; j < n; ++j) lp.add_column(values[j], 0.0, 1.0, true);
    lp.add_row(Relation::kLessEqual, budget);
    for (int j = 0; j < n; ++j) lp.add_entry(0, j, weights[j]);

    double best = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      double w = 0.0, v = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1 << j)) {
          w += weights[j];
          v += values[j];
        }
      }
      if (w <= budget) best = std::max(best, v);
    }
    const SolveResult r = solve_mip(lp);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
    CHECK(r.objective <= r.best_bound + 1e-9);
  }
}

TEST_CASE("warm solution is used as an incumbent") {
  LinearProgram lp;
  lp.add_column(1.0, 0.0, 1.0, true);
  lp.add_row(Relation::kLessEqual, 1.0);
  lp.add_entry(0, 0, 1.0);
  MipOptions options;
  options.warm_solution = std::vector<double>{1.0};
  const SolveResult r = solve_mip(lp, options);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("node limit reports incumbent and bound") {
  // A knapsack needing several nodes.
  LinearProgram lp;
  const double values[6] = {5, 4, 3, 7, 6, 2};
  const double weights[6] = {3, 2, 2, 4, 3, 1};
  for (int j = 0; j < 6; ++j) lp.add_column(values[j], 0.0, 1.0, true);
  lp.add_row(Relation::kLessEqual, 6.0);
  for (int j = 0; j < 6; ++j) lp.add_entry(0, j, weights[j]);
  MipOptions options;
  options.node_limit = 1;
  const SolveResult r = solve_mip(lp, options);
  if (r.status == SolveStatus::kNodeLimit) {
    CHECK(r.best_bound >= r.objective - 1e-9);
  } else {
    CHECK(r.status == SolveStatus::kOptimal);
  }
}

TEST_CASE("lp dump is printable") {
  LinearProgram lp;
  lp.add_column(1.0, 0.0, 1.0, true);
  lp.add_row(Relation::kLessEqual, 1.0);
  lp.add_entry(0, 0, 1.0);
  const std::string text = lp.dump();
  CHECK(text.find("maximize") != std::string::npos);
  CHECK(text.find("integer") != std::string::npos);
}
