#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_utils.hpp"
#include "robustflow/interdiction.hpp"

using namespace robustflow;
namespace rt = robustflow::testing;

TEST_CASE("exact separation on trivially small flows") {
  SUBCASE("one path of three arcs, k=1") {
    FlowNetwork net;
    net.node_count = 4;
    net.source = 0;
    net.sink = 3;
    net.add_arc(0, 1, 5.0);
    net.add_arc(1, 2, 5.0);
    net.add_arc(2, 3, 5.0);
    PathFlow x;
    x.add(Path{{0, 1, 2}}, 5.0);
    const SeparationResult sep = separate_exact(net, x, 1);
    CHECK(sep.destroyed == doctest::Approx(5.0));
    CHECK(sep.scenario.size() == 1);
  }
  SUBCASE("two parallel arcs, symmetric") {
    const FlowNetwork net = rt::parallel_arcs({1.0, 1.0});
    PathFlow x;
    x.add(rt::single_arc_path(0), 1.0);
    x.add(rt::single_arc_path(1), 1.0);
    const SeparationResult sep = separate_exact(net, x, 1);
    CHECK(sep.destroyed == doctest::Approx(1.0));
  }
  SUBCASE("k beyond the interdictable pool takes everything") {
    FlowNetwork net = rt::parallel_arcs({1.0, 1.0});
    net.arcs[1].safe = true;
    PathFlow x;
    x.add(rt::single_arc_path(0), 1.0);
    x.add(rt::single_arc_path(1), 1.0);
    const SeparationResult sep = separate_exact(net, x, 3);
    CHECK(sep.scenario.arc_ids == std::vector<int>{0});
    CHECK(sep.destroyed == doctest::Approx(1.0));
  }
}

TEST_CASE("exact separation equals subset enumeration on random flows") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 9, trial % 2 == 0);
    const PathFlow x = path_decompose(net, max_flow(net).arc_flow);
    if (x.empty()) continue;
    for (int k = 1; k <= 3; ++k) {
      const SeparationResult sep = separate_exact(net, x, k);
      CHECK(sep.destroyed ==
            doctest::Approx(rt::oracle_max_destroyed(net, x, k))
                .epsilon(1e-9));
      CHECK(destroyed(net, x, sep.scenario) == doctest::Approx(sep.destroyed));
    }
  }
}

TEST_CASE("two-tier classes match their enumeration oracle") {
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const FlowNetwork net = rt::random_network(rng, 5, 8);
    const std::vector<int> pool = net.interdictable_arcs();
    if (pool.size() < 4) continue;
    std::vector<int> regular(pool.begin(), pool.begin() + pool.size() / 2);
    std::vector<int> exposed(pool.begin() + pool.size() / 2, pool.end());
    const ScenarioClass cls = ScenarioClass::two_tier(regular, 1, exposed, 1);
    const PathFlow x = path_decompose(net, max_flow(net).arc_flow);
    if (x.empty()) continue;

    double oracle = 0.0;
    for (int r : regular) {
      for (int e : exposed) {
        oracle = std::max(oracle, x.total() - rt::oracle_val(x, {r, e}));
      }
    }
    const SeparationResult sep = separate_exact(net, x, cls);
    CHECK(sep.destroyed == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(cls.matches(sep.scenario));
  }
}

TEST_CASE("perturbation decorrelates consecutive picks") {
  // Two disjoint unit paths; once the first scenario hits arc 0, the
  // perturbed model prefers the equally destructive arc 1.
  const FlowNetwork net = rt::parallel_arcs({1.0, 1.0});
  PathFlow x;
  x.add(rt::single_arc_path(0), 1.0);
  x.add(rt::single_arc_path(1), 1.0);
  const SeparationResult first = separate_exact(net, x, 1);
  std::vector<Scenario> previous = {first.scenario};
  InterdictionOptions options;
  options.perturb = true;
  options.previous = previous;
  const SeparationResult second = separate_exact(net, x, 1, options);
  CHECK(second.destroyed == doctest::Approx(1.0));  // unperturbed value
  CHECK_FALSE(second.scenario == first.scenario);
}

TEST_CASE("perturbed miss falls back to the unperturbed model") {
  // Capacities 3 and 1: the only violated-looking scenario is arc 0, but
  // the perturbation pushes one pick toward arc 1. With a threshold of 2
  // the perturbed pick (destroyed 1) is not violated, so the exact model
  // must be evoked and return arc 0.
  const FlowNetwork net = rt::parallel_arcs({3.0, 1.0});
  PathFlow x;
  x.add(rt::single_arc_path(0), 3.0);
  x.add(rt::single_arc_path(1), 1.0);
  InterdictionOptions options;
  options.perturb = true;
  std::vector<Scenario> previous = {make_scenario({0})};
  options.previous = previous;
  options.violation_threshold = 2.0;
  const SeparationResult sep = separate_exact(net, x, 1, options);
  CHECK(sep.scenario.arc_ids == std::vector<int>{0});
  CHECK(sep.destroyed == doctest::Approx(3.0));
}

TEST_CASE("LP relaxation bounds the exact value within 1 - 1/e") {
  SUBCASE("single path") {
    FlowNetwork net;
    net.node_count = 3;
    net.source = 0;
    net.sink = 2;
    net.add_arc(0, 1, 2.0);
    net.add_arc(1, 2, 2.0);
    PathFlow x;
    x.add(Path{{0, 1}}, 2.0);
    const RelaxationResult relax = separate_lp_relaxation(net, x, 1);
    CHECK(relax.destroyed_bound == doctest::Approx(2.0));
    double mass = 0.0;
    for (double z : relax.z) mass += z;
    CHECK(mass == doctest::Approx(1.0));
  }
  SUBCASE("empty flow") {
    const FlowNetwork net = rt::parallel_arcs({1.0});
    const RelaxationResult relax = separate_lp_relaxation(net, PathFlow{}, 1);
    CHECK(relax.destroyed_bound == doctest::Approx(0.0));
  }
  SUBCASE("random instances") {
    Rng rng(71);
    const double ratio = 1.0 - std::exp(-1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const FlowNetwork net = rt::random_network(rng, 5, 9);
      const PathFlow x = path_decompose(net, max_flow(net).arc_flow);
      if (x.empty()) continue;
      for (int k = 1; k <= 2; ++k) {
        const double exact = rt::oracle_max_destroyed(net, x, k);
        const double lp = separate_lp_relaxation(net, x, k).destroyed_bound;
        CHECK(lp >= exact - 1e-9);
        CHECK(exact >= ratio * lp - 1e-9);
      }
    }
  }
}

TEST_CASE("greedy coverage") {
  SUBCASE("first pick lies on the only path") {
    FlowNetwork net;
    net.node_count = 3;
    net.source = 0;
    net.sink = 2;
    net.add_arc(0, 1, 1.0);
    net.add_arc(1, 2, 1.0);
    PathFlow x;
    x.add(Path{{0, 1}}, 1.0);
    const Scenario sc = greedy_coverage(net, x, 1);
    CHECK(sc.size() == 1);
    CHECK(destroyed(net, x, sc) == doctest::Approx(1.0));
  }
  SUBCASE("prefers the heavier of two disjoint paths") {
    const FlowNetwork net = rt::parallel_arcs({3.0, 1.0});
    PathFlow x;
    x.add(rt::single_arc_path(0), 3.0);
    x.add(rt::single_arc_path(1), 1.0);
    CHECK(greedy_coverage(net, x, 1).arc_ids == std::vector<int>{0});
  }
  SUBCASE("achieves the 1-(1-1/k)^k guarantee on random instances") {
    Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
      const FlowNetwork net = rt::random_network(rng, 5, 9);
      const PathFlow x = path_decompose(net, max_flow(net).arc_flow);
      if (x.empty()) continue;
      for (int k = 1; k <= 3; ++k) {
        const double exact = rt::oracle_max_destroyed(net, x, k);
        const double got = destroyed(net, x, greedy_coverage(net, x, k));
        const double guarantee = 1.0 - std::pow(1.0 - 1.0 / k, k);
        CHECK(got >= guarantee * exact - 1e-9);
        if (k == 1) CHECK(got == doctest::Approx(exact));
      }
    }
  }
}

TEST_CASE("interdiction upper bound") {
  SUBCASE("hand instances") {
    CHECK(interdiction_upper_bound(rt::parallel_arcs({1.0}), 1).value ==
          doctest::Approx(0.0));
    CHECK(interdiction_upper_bound(rt::parallel_arcs({1.0, 1.0}), 1).value ==
          doctest::Approx(1.0));
  }
  SUBCASE("enumeration and cut enumeration agree") {
    Rng rng(91);
    for (int trial = 0; trial < 15; ++trial) {
      const FlowNetwork net = rt::random_network(rng, 6, 10, trial % 2 == 1);
      for (int k = 1; k <= 2; ++k) {
        const InterdictionBound by_scenarios =
            interdiction_upper_bound(net, k);
        const InterdictionBound by_cuts =
            interdiction_upper_bound_cuts(net, k);
        CHECK(by_scenarios.value ==
              doctest::Approx(by_cuts.value).epsilon(1e-9));
        // Both witnesses must attain their value.
        std::vector<double> caps(net.num_arcs());
        for (int i = 0; i < net.num_arcs(); ++i)
          caps[i] = net.arcs[i].capacity;
        for (int id : by_scenarios.scenario.arc_ids) caps[id] = 0.0;
        CHECK(max_flow(net, caps).value ==
              doctest::Approx(by_scenarios.value).epsilon(1e-9));
      }
    }
  }
  SUBCASE("limits produce an error instead of truncation") {
    EnumerationLimits limits;
    limits.max_scenarios = 2;
    CHECK_THROWS_AS(
        interdiction_upper_bound(rt::parallel_arcs({1, 1, 1, 1}), 2, limits),
        LimitExceeded);
  }
}
