#include "robustflow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "robustflow/lp.hpp"
#include "robustflow/master.hpp"

namespace robustflow {

PartitionSpec PartitionSpec::cardinality(const FlowNetwork& net,
                                         const std::vector<int>& ks) {
  std::set<int> seen;
  PartitionSpec spec;
  for (int k : ks) {
    if (k < 0) throw InputError("partition: negative class cardinality");
    if (!seen.insert(k).second)
      throw InputError("partition: duplicate class cardinality");
    spec.classes.push_back(ScenarioClass::cardinality(net, k));
  }
  return spec;
}

PartitionSpec PartitionSpec::two_tier(
    const FlowNetwork& net, std::vector<int> regular_arcs,
    std::vector<int> exposed_arcs,
    const std::vector<std::pair<int, int>>& jks) {
  std::sort(regular_arcs.begin(), regular_arcs.end());
  std::sort(exposed_arcs.begin(), exposed_arcs.end());
  {
    std::set<int> all(regular_arcs.begin(), regular_arcs.end());
    for (int id : exposed_arcs) {
      if (!all.insert(id).second)
        throw InputError("partition: regular/exposed pools overlap");
    }
    for (int id : net.interdictable_arcs()) {
      if (!all.count(id))
        throw InputError("partition: pools must cover the interdictable arcs");
    }
  }
  std::set<std::pair<int, int>> seen;
  PartitionSpec spec;
  for (const auto& [j, k] : jks) {
    if (!seen.insert({j, k}).second)
      throw InputError("partition: duplicate (j,k) class");
    spec.classes.push_back(
        ScenarioClass::two_tier(regular_arcs, j, exposed_arcs, k));
  }
  return spec;
}

std::optional<int> PartitionSpec::classify(const Scenario& eta) const {
  for (size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].matches(eta)) return static_cast<int>(c);
  }
  return std::nullopt;
}

void PartitionSpec::validate(const FlowNetwork& net) const {
  if (classes.empty()) throw InputError("partition: no classes");
  for (const ScenarioClass& cls : classes) cls.validate(net);
}

std::vector<double> EmpiricalWeights::q_hat() const {
  std::vector<double> q(counts.size(), 0.0);
  if (total == 0) return q;
  for (size_t c = 0; c < counts.size(); ++c)
    q[c] = static_cast<double>(counts[c]) / static_cast<double>(total);
  return q;
}

EmpiricalWeights observe(const FlowNetwork& net, const PartitionSpec& spec,
                         std::span<const Scenario> observations) {
  spec.validate(net);
  EmpiricalWeights weights;
  weights.counts.assign(spec.classes.size(), 0);
  for (size_t i = 0; i < observations.size(); ++i) {
    validate_scenario(net, observations[i]);
    const auto cls = spec.classify(observations[i]);
    if (!cls) {
      std::ostringstream msg;
      msg << "observation " << i << " {";
      for (size_t a = 0; a < observations[i].arc_ids.size(); ++a)
        msg << (a ? " " : "") << observations[i].arc_ids[a];
      msg << "} does not belong to any class";
      throw InputError(msg.str());
    }
    ++weights.counts[*cls];
    ++weights.total;
  }
  return weights;
}

double lambda_star(const FlowNetwork& net, const ScenarioClass& cls) {
  cls.validate(net);
  double sum = 0.0;
  for (const auto& tier : cls.tiers) {
    std::vector<double> caps;
    caps.reserve(tier.arcs.size());
    for (int id : tier.arcs) caps.push_back(net.arcs[id].capacity);
    std::sort(caps.begin(), caps.end(), std::greater<double>());
    const int take = std::min<int>(tier.count, static_cast<int>(caps.size()));
    for (int i = 0; i < take; ++i) sum += caps[i];
  }
  return sum;
}

GeneralizationBound generalization_bound(const FlowNetwork& net,
                                         const PathFlow& x,
                                         const PartitionSpec& spec,
                                         const EmpiricalWeights& weights,
                                         double delta,
                                         const EnumerationLimits& limits) {
  spec.validate(net);
  if (!(delta > 0.0 && delta < 1.0))
    throw InputError("generalization_bound: delta must lie in (0,1)");
  if (weights.counts.size() != spec.classes.size())
    throw InputError("generalization_bound: weights size mismatch");
  if (weights.total < 1)
    throw InputError("generalization_bound: needs at least one observation");

  const std::vector<double> q = weights.q_hat();
  const double n = static_cast<double>(weights.total);
  const double total_flow = x.total();

  GeneralizationBound bound;
  double c_max = 0.0;
  for (size_t c = 0; c < spec.classes.size(); ++c) {
    const double lstar = lambda_star(net, spec.classes[c]);
    c_max = std::max(c_max, lstar);
    if (q[c] == 0.0) continue;
    InterdictionOptions options;
    options.limits = limits;
    const SeparationResult worst =
        separate_exact(net, x, spec.classes[c], options);
    bound.empirical_value += q[c] * (total_flow - worst.destroyed);
    bound.complexity_term += lstar * std::sqrt(q[c]);
  }
  bound.complexity_term *= 2.0 / std::sqrt(n);
  bound.confidence_term = 2.0 * c_max * std::sqrt(8.0 * std::log(4.0 / delta) / n);
  bound.value =
      bound.empirical_value - bound.complexity_term - bound.confidence_term;
  return bound;
}

MinimaxCheck minimax_check(const FlowNetwork& net, const PartitionSpec& spec,
                           std::span<const double> weights, double tolerance,
                           const EnumerationLimits& limits) {
  spec.validate(net);
  if (weights.size() != spec.classes.size())
    throw InputError("minimax_check: weights size mismatch");

  MinimaxCheck check;
  check.lhs = run_hybrid_oracle(net, spec.classes, weights, limits);

  // Right-hand side: inf over mixtures Q with fixed class masses of the
  // inner maximum, collapsed into a single LP via the dual of the inner
  // flow problem:
  //   min  sum_e u_e a_e
  //   s.t. sum_{e in P} a_e - sum_{omega: omega cap P = empty} Q_omega >= 0
  //        sum_{omega in class k} Q_omega = q_k,   a, Q >= 0.
  const std::vector<Path> paths = enumerate_simple_paths(net, limits.max_paths);
  std::vector<std::vector<Scenario>> class_scenarios;
  for (const ScenarioClass& cls : spec.classes)
    class_scenarios.push_back(
        enumerate_class_scenarios(cls, limits.max_scenarios));

  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  std::vector<int> alpha(net.num_arcs());
  for (int e = 0; e < net.num_arcs(); ++e)
    alpha[e] = lp.add_column(net.arcs[e].capacity, 0.0,
                             std::numeric_limits<double>::infinity());
  std::vector<std::vector<int>> q_col(class_scenarios.size());
  for (size_t c = 0; c < class_scenarios.size(); ++c) {
    q_col[c].resize(class_scenarios[c].size());
    for (size_t s = 0; s < class_scenarios[c].size(); ++s)
      q_col[c][s] = lp.add_column(0.0, 0.0, 1.0);
    const int row = lp.add_row(Relation::kEqual, weights[c]);
    for (int col : q_col[c]) lp.add_entry(row, col, 1.0);
  }
  for (const Path& path : paths) {
    const int row = lp.add_row(Relation::kGreaterEqual, 0.0);
    for (int id : path.arc_ids) lp.add_entry(row, alpha[id], 1.0);
    for (size_t c = 0; c < class_scenarios.size(); ++c) {
      for (size_t s = 0; s < class_scenarios[c].size(); ++s) {
        bool hit = false;
        for (int id : path.arc_ids) {
          if (class_scenarios[c][s].contains(id)) {
            hit = true;
            break;
          }
        }
        if (!hit) lp.add_entry(row, q_col[c][s], -1.0);
      }
    }
  }
  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("minimax_check: unexpected solver status");
  check.rhs = solved.objective;
  check.pass = std::abs(check.lhs - check.rhs) <= tolerance;
  return check;
}

double stochastic_oracle(const FlowNetwork& net,
                         std::span<const std::pair<Scenario, double>> dist,
                         const EnumerationLimits& limits) {
  net.validate();
  double mass = 0.0;
  for (const auto& [eta, p] : dist) {
    validate_scenario(net, eta);
    if (p < 0.0) throw InputError("stochastic_oracle: negative probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw InputError("stochastic_oracle: probabilities must sum to one");

  const std::vector<Path> paths = enumerate_simple_paths(net, limits.max_paths);
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (const Path& path : paths) {
    double coef = 0.0;
    for (const auto& [eta, p] : dist) {
      bool hit = false;
      for (int id : path.arc_ids) {
        if (eta.contains(id)) {
          hit = true;
          break;
        }
      }
      if (!hit) coef += p;
    }
    lp.add_column(coef, 0.0, std::numeric_limits<double>::infinity());
  }
  for (int e = 0; e < net.num_arcs(); ++e)
    lp.add_row(Relation::kLessEqual, net.arcs[e].capacity);
  for (size_t p = 0; p < paths.size(); ++p) {
    for (int id : paths[p].arc_ids)
      lp.add_entry(id, static_cast<int>(p), 1.0);
  }
  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("stochastic_oracle: unexpected solver status");
  return solved.objective;
}

}  // namespace robustflow
