#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_utils.hpp"
#include "robustflow/driver.hpp"
#include "robustflow/heuristic.hpp"
#include "robustflow/instances.hpp"
#include "robustflow/pricing.hpp"

using namespace robustflow;
namespace rt = robustflow::testing;

TEST_CASE("two parallel unit arcs converge quickly to value one") {
  SolverConfig config;
  config.k = 1;
  const RobustSolve solve = solve_robust(rt::parallel_arcs({1.0, 1.0}), config);
  CHECK(solve.state.outcome == SolveOutcome::kConverged);
  CHECK(solve.value == doctest::Approx(1.0));
  CHECK(solve.state.iterations <= 3);
}

TEST_CASE("solver matches the full-model oracle on random instances") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 12, trial % 2 == 0);
    SolverConfig config;
    config.k = 1 + static_cast<int>(rng.below(3));
    const double oracle = run_oracle(net, config.k);
    const RobustSolve solve = solve_robust(net, config);
    CHECK(solve.state.outcome == SolveOutcome::kConverged);
    CHECK(solve.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(is_feasible(net, solve.flow, 1e-7));
  }
}

TEST_CASE("an optimal heuristic pins the primal bound from iteration one") {
  Rng rng(17);
  int optimal_heuristics = 0;
  for (int trial = 0; trial < 20 || optimal_heuristics == 0; ++trial) {
    REQUIRE(trial < 200);
    const FlowNetwork net = rt::random_network(rng, 5, 15);
    SolverConfig config;
    config.k = 1;
    const double oracle = run_oracle(net, config.k);
    const double h = solve_heuristic(net, config.k).value;
    if (std::abs(h - oracle) > 1e-9) continue;
    ++optimal_heuristics;
    const RobustSolve solve = solve_robust(net, config);
    REQUIRE(!solve.state.log.empty());
    CHECK(solve.state.log.front().f_primal ==
          doctest::Approx(solve.value).epsilon(1e-6));
  }
}

TEST_CASE("bound sandwich holds in every logged iteration") {
  Rng rng(89);
  for (int trial = 0; trial < 12; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 6, 12, true);
    SolverConfig config;
    config.k = 1 + static_cast<int>(rng.below(2));
    const RobustSolve solve = solve_robust(net, config);
    double last_primal = -1e300, last_dual = 1e300;
    for (const IterationRecord& rec : solve.state.log) {
      CHECK(rec.f_primal <= rec.f_dual + 1e-9);
      CHECK(rec.f_primal >= last_primal - 1e-12);  // nondecreasing
      CHECK(rec.f_dual <= last_dual + 1e-12);      // nonincreasing
      last_primal = rec.f_primal;
      last_dual = rec.f_dual;
    }
  }
}

TEST_CASE("termination certificates hold at convergence") {
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 10);
    SolverConfig config;
    config.k = 2;
    const RobustSolve solve = solve_robust(net, config);
    REQUIRE(solve.state.outcome == SolveOutcome::kConverged);
    // Rebuild the final master and check both separation certificates.
    const MasterSolution master = solve_restricted_master(
        net, solve.state.paths, solve.state.scenarios[0]);
    DualPrices prices;
    prices.arc_prices = master.arc_duals;
    for (size_t s = 0; s < master.scenarios.size(); ++s)
      prices.scenario_prices.push_back(
          {master.scenarios[s], master.scenario_duals[s]});
    CHECK_FALSE(price_path(net, prices).has_value());
    const SeparationResult worst = separate_exact(net, master.x, config.k);
    CHECK(worst.destroyed <= master.lambda + kValueTol);
  }
}

TEST_CASE("restricted interdiction count reaches the same value") {
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 6, 12);
    SolverConfig config;
    config.k = 2;
    const RobustSolve full = solve_robust(net, config);
    SolverConfig restricted = config;
    restricted.max_interdictions_per_iter = 10;
    const RobustSolve limited = solve_robust(net, restricted);
    CHECK(limited.state.outcome == SolveOutcome::kConverged);
    const double scale = std::max(1.0, std::abs(full.value));
    CHECK(std::abs(limited.value - full.value) / scale <= 1e-4);
  }
}

TEST_CASE("P1 converges in few iterations with a zero heuristic gap") {
  // Small P1 data point; the qualitative claim is a handful of outer
  // iterations and an optimal heuristic.
  const FlowNetwork net = gen_p1(8, 5);
  SolverConfig config;
  config.k = 2;
  const RobustSolve solve = solve_robust(net, config);
  CHECK(solve.state.outcome == SolveOutcome::kConverged);
  CHECK(solve.state.iterations <= 6);
  const double h = solve_heuristic(net, config.k).value;
  CHECK(solve.value == doctest::Approx(h).epsilon(1e-6));
}

TEST_CASE("no s-t path yields value zero with convergence") {
  FlowNetwork net;
  net.node_count = 4;
  net.source = 0;
  net.sink = 3;
  net.add_arc(1, 2, 1.0);
  SolverConfig config;
  config.k = 1;
  const RobustSolve solve = solve_robust(net, config);
  CHECK(solve.state.outcome == SolveOutcome::kConverged);
  CHECK(solve.value == doctest::Approx(0.0));
}

TEST_CASE("iteration limit reports a nonconverged status with bounds") {
  const FlowNetwork net = gen_p1(4, 4);
  SolverConfig config;
  config.k = 2;
  config.max_outer_iterations = 1;
  config.max_interdictions_per_iter = 1;
  const RobustSolve solve = solve_robust(net, config);
  if (solve.state.outcome != SolveOutcome::kConverged) {
    CHECK(solve.state.outcome == SolveOutcome::kIterationLimit);
    CHECK(solve.state.f_primal <= solve.state.f_dual + 1e-9);
  }
}

TEST_CASE("hybrid with one class matches the robust solver") {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 10);
    SolverConfig config;
    config.k = 1 + static_cast<int>(rng.below(2));
    const RobustSolve robust = solve_robust(net, config);
    const RobustSolve hybrid =
        solve_hybrid(net, {ScenarioClass::cardinality(net, config.k)}, {1.0},
                     config);
    CHECK(hybrid.state.outcome == SolveOutcome::kConverged);
    CHECK(hybrid.value == doctest::Approx(robust.value).epsilon(1e-6));
  }
}

TEST_CASE("hybrid hand values on three parallel unit arcs") {
  const FlowNetwork net = rt::parallel_arcs({1.0, 1.0, 1.0});
  SolverConfig config;
  config.k = 1;
  SUBCASE("classes {1,2} with equal weights") {
    const RobustSolve solve = solve_hybrid(
        net,
        {ScenarioClass::cardinality(net, 1), ScenarioClass::cardinality(net, 2)},
        {0.5, 0.5}, config);
    CHECK(solve.state.outcome == SolveOutcome::kConverged);
    CHECK(solve.value == doctest::Approx(1.5));
  }
  SUBCASE("all weight on the singleton class") {
    const RobustSolve solve = solve_hybrid(
        net,
        {ScenarioClass::cardinality(net, 1), ScenarioClass::cardinality(net, 2)},
        {1.0, 0.0}, config);
    CHECK(solve.value == doctest::Approx(2.0));
  }
  SUBCASE("invalid weights are rejected") {
    CHECK_THROWS_AS(
        solve_hybrid(net, {ScenarioClass::cardinality(net, 1)}, {0.4}, config),
        InputError);
  }
}

TEST_CASE("hybrid matches its oracle on random instances") {
  Rng rng(107);
  for (int trial = 0; trial < 8; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 9);
    const std::vector<ScenarioClass> classes = {
        ScenarioClass::cardinality(net, 1),
        ScenarioClass::cardinality(net, 2)};
    const std::vector<double> weights = {0.3, 0.7};
    SolverConfig config;
    const double oracle = run_hybrid_oracle(net, classes, weights);
    const RobustSolve solve = solve_hybrid(net, classes, weights, config);
    CHECK(solve.state.outcome == SolveOutcome::kConverged);
    CHECK(solve.value == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("iteration log carries counts and call records") {
  const FlowNetwork net = gen_p1(3, 3);
  SolverConfig config;
  config.k = 1;
  const RobustSolve solve = solve_robust(net, config);
  REQUIRE(!solve.state.log.empty());
  const IterationRecord& last = solve.state.log.back();
  CHECK(last.paths_generated == static_cast<int>(solve.state.paths.size()));
  CHECK(last.scenarios_generated ==
        static_cast<int>(solve.state.scenarios[0].size()));
  CHECK(last.paths_active >= 1);
  CHECK(!solve.state.pricing_log.empty());
  CHECK(!solve.state.interdiction_log.empty());
  // Pricing reduced prices are recorded for every improving call.
  for (const PricingCallRecord& rec : solve.state.pricing_log)
    CHECK(rec.reduced_price >= 0.0);
}

TEST_CASE("identical configuration reproduces the identical run") {
  const FlowNetwork net = gen_p2(4, 3, 5);
  SolverConfig config;
  config.k = 2;
  const RobustSolve a = solve_robust(net, config);
  const RobustSolve b = solve_robust(net, config);
  CHECK(a.value == b.value);
  REQUIRE(a.state.log.size() == b.state.log.size());
  for (size_t i = 0; i < a.state.log.size(); ++i) {
    CHECK(a.state.log[i].f_primal == b.state.log[i].f_primal);
    CHECK(a.state.log[i].f_dual == b.state.log[i].f_dual);
    CHECK(a.state.log[i].paths_generated == b.state.log[i].paths_generated);
    CHECK(a.state.log[i].scenarios_generated ==
          b.state.log[i].scenarios_generated);
  }
  CHECK(a.state.paths == b.state.paths);
  CHECK(a.state.scenarios[0] == b.state.scenarios[0]);
}
