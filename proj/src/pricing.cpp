#include "robustflow/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "robustflow/lp.hpp"

namespace robustflow {

namespace {

constexpr double kEpsilonPenalty = 1e-4;
constexpr double kPriceEps = 1e-12;

std::vector<std::pair<Scenario, double>> priced_scenarios(
    const DualPrices& prices) {
  std::vector<std::pair<Scenario, double>> priced;
  for (const auto& [eta, y] : prices.scenario_prices) {
    if (y > kPriceEps) priced.push_back({eta, y});
  }
  return priced;
}

std::vector<double> arc_costs(const FlowNetwork& net, const DualPrices& prices,
                              bool epsilon_penalty,
                              const std::vector<char>& used_arcs) {
  if (static_cast<int>(prices.arc_prices.size()) != net.num_arcs())
    throw InputError("pricing: arc price vector size mismatch");
  if (!used_arcs.empty() &&
      static_cast<int>(used_arcs.size()) != net.num_arcs())
    throw InputError("pricing: used_arcs size mismatch");
  std::vector<double> cost(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    cost[i] = std::max(0.0, prices.arc_prices[i]);
    if (epsilon_penalty && !used_arcs.empty() && used_arcs[i])
      cost[i] += kEpsilonPenalty;
  }
  return cost;
}

// Deterministic Dijkstra over the allowed arcs; returns the min-cost simple
// s-t path or nullopt when the sink is unreachable.
std::optional<std::pair<Path, double>> shortest_path(
    const FlowNetwork& net, const std::vector<double>& cost,
    const std::vector<char>& allowed) {
  const auto adjacency = out_adjacency(net);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(net.node_count, inf);
  std::vector<int> via_arc(net.node_count, -1);
  std::vector<char> done(net.node_count, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[net.source] = 0.0;
  heap.push({0.0, net.source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (int id : adjacency[v]) {
      if (!allowed[id]) continue;
      const Arc& a = net.arcs[id];
      if (a.head == v) continue;  // self loop
      const double nd = d + cost[id];
      if (nd < dist[a.head] - 1e-15) {
        dist[a.head] = nd;
        via_arc[a.head] = id;
        heap.push({nd, a.head});
      }
    }
  }
  if (dist[net.sink] == inf) return std::nullopt;
  std::vector<int> arcs;
  int v = net.sink;
  while (v != net.source) {
    const int id = via_arc[v];
    if (id < 0) return std::nullopt;
    arcs.push_back(id);
    v = net.arcs[id].tail;
  }
  std::reverse(arcs.begin(), arcs.end());
  return std::make_pair(Path{std::move(arcs)}, dist[net.sink]);
}

struct SearchResult {
  Path path;
  double score = 0.0;  // objective of the (possibly perturbed) search
};

std::optional<SearchResult> enumerate_search(const FlowNetwork& net,
                                             const DualPrices& prices,
                                             const PricingOptions& options,
                                             bool perturbed) {
  const auto priced = priced_scenarios(prices);
  const std::vector<double> cost = arc_costs(
      net, prices, perturbed && options.epsilon_penalty, options.used_arcs);
  const int m = static_cast<int>(priced.size());

  std::optional<SearchResult> best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> allowed(net.num_arcs(), 1);
    double hit_price = 0.0;
    for (int s = 0; s < m; ++s) {
      if (mask & (1u << s)) {
        hit_price += priced[s].second;
      } else {
        for (int id : priced[s].first.arc_ids) allowed[id] = 0;
      }
    }
    const auto sp = shortest_path(net, cost, allowed);
    if (!sp) continue;
    const double score = 1.0 - hit_price - sp->second;
    if (!best || score > best->score + 1e-12 ||
        (score > best->score - 1e-12 && sp->first < best->path)) {
      best = SearchResult{sp->first, score};
    }
  }
  return best;
}

std::optional<SearchResult> bnb_search(const FlowNetwork& net,
                                       const DualPrices& prices,
                                       const PricingOptions& options,
                                       bool perturbed) {
  const auto priced = priced_scenarios(prices);
  const std::vector<double> cost = arc_costs(
      net, prices, perturbed && options.epsilon_penalty, options.used_arcs);

  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  std::vector<int> arc_var(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const bool self_loop = net.arcs[i].tail == net.arcs[i].head;
    arc_var[i] =
        lp.add_column(-cost[i], 0.0, self_loop ? 0.0 : 1.0, /*integer=*/true);
  }
  std::vector<int> scenario_var(priced.size());
  for (size_t s = 0; s < priced.size(); ++s)
    scenario_var[s] = lp.add_column(-priced[s].second, 0.0, 1.0, true);

  // Flow conservation: unit s-t path in arc variables.
  std::vector<int> node_row(net.node_count, -1);
  for (int v = 0; v < net.node_count; ++v) {
    if (v == net.source) continue;
    node_row[v] = lp.add_row(Relation::kEqual, v == net.sink ? 1.0 : 0.0);
  }
  for (int i = 0; i < net.num_arcs(); ++i) {
    const Arc& a = net.arcs[i];
    if (a.tail == a.head) continue;
    if (node_row[a.head] >= 0) lp.add_entry(node_row[a.head], arc_var[i], 1.0);
    if (node_row[a.tail] >= 0) lp.add_entry(node_row[a.tail], arc_var[i], -1.0);
  }
  // Linking: an arc of a priced scenario may be used only when the
  // scenario is paid for.
  for (size_t s = 0; s < priced.size(); ++s) {
    for (int id : priced[s].first.arc_ids) {
      const int row = lp.add_row(Relation::kLessEqual, 0.0);
      lp.add_entry(row, arc_var[id], 1.0);
      lp.add_entry(row, scenario_var[s], -1.0);
    }
  }

  MipOptions mip;
  mip.node_limit = options.limits.node_limit;
  mip.branch_set = scenario_var;
  const SolveResult solved = solve_mip(lp, mip);
  if (solved.status == SolveStatus::kNodeLimit)
    throw LimitExceeded("pricing: branch-and-bound node limit");
  if (solved.status == SolveStatus::kInfeasible) return std::nullopt;
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("pricing: unexpected solver status");

  // The z support is a unit s-t path plus (cost-free) cycles; peel the path.
  std::vector<double> z_flow(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i)
    z_flow[i] = std::round(solved.primal[arc_var[i]]);
  const PathFlow peeled = path_decompose(net, z_flow, 1e-6);
  if (peeled.entries.empty()) return std::nullopt;
  SearchResult result;
  result.path = peeled.entries.begin()->first;
  result.score = 1.0 + solved.objective;
  return result;
}

std::optional<PricedPath> run_backend(
    const FlowNetwork& net, const DualPrices& prices,
    const PricingOptions& options,
    const std::function<std::optional<SearchResult>(
        const FlowNetwork&, const DualPrices&, const PricingOptions&, bool)>&
        backend) {
  // Perturbed search first when requested; on failure evoke the
  // unperturbed model.
  if (options.epsilon_penalty && !options.used_arcs.empty()) {
    const auto perturbed = backend(net, prices, options, true);
    if (perturbed && perturbed->score > options.positive_tol) {
      const double price = reduced_price(net, prices, perturbed->path);
      return PricedPath{perturbed->path, price};
    }
  }
  const auto plain = backend(net, prices, options, false);
  if (!plain || plain->score <= options.positive_tol) return std::nullopt;
  const double price = reduced_price(net, prices, plain->path);
  if (price <= options.positive_tol) return std::nullopt;
  return PricedPath{plain->path, price};
}

}  // namespace

double reduced_price(const FlowNetwork& net, const DualPrices& prices,
                     const Path& path) {
  validate_path(net, path);
  if (static_cast<int>(prices.arc_prices.size()) != net.num_arcs())
    throw InputError("pricing: arc price vector size mismatch");
  double price = 1.0;
  for (int id : path.arc_ids) price -= prices.arc_prices[id];
  for (const auto& [eta, y] : prices.scenario_prices) {
    for (int id : path.arc_ids) {
      if (eta.contains(id)) {
        price -= y;
        break;
      }
    }
  }
  return price;
}

std::optional<PricedPath> price_path_enumerate(const FlowNetwork& net,
                                               const DualPrices& prices,
                                               const PricingOptions& options) {
  return run_backend(net, prices, options, enumerate_search);
}

std::optional<PricedPath> price_path_bnb(const FlowNetwork& net,
                                         const DualPrices& prices,
                                         const PricingOptions& options) {
  return run_backend(net, prices, options, bnb_search);
}

std::optional<PricedPath> price_path(const FlowNetwork& net,
                                     const DualPrices& prices,
                                     const PricingOptions& options) {
  net.validate();
  const int m = static_cast<int>(priced_scenarios(prices).size());
  if (m <= options.enumeration_max_scenarios)
    return price_path_enumerate(net, prices, options);
  return price_path_bnb(net, prices, options);
}

std::optional<PricedPath> price_path_hybrid(
    const FlowNetwork& net, const std::vector<double>& arc_prices,
    const std::vector<std::vector<std::pair<Scenario, double>>>& class_prices,
    const PricingOptions& options) {
  DualPrices merged;
  merged.arc_prices = arc_prices;
  for (const auto& cls : class_prices)
    merged.scenario_prices.insert(merged.scenario_prices.end(), cls.begin(),
                                  cls.end());
  return price_path(net, merged, options);
}

}  // namespace robustflow
