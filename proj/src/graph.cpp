#include "robustflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace robustflow {

int FlowNetwork::add_arc(int tail, int head, double capacity, bool safe) {
  arcs.push_back(Arc{tail, head, capacity, safe});
  return static_cast<int>(arcs.size()) - 1;
}

std::vector<int> FlowNetwork::interdictable_arcs() const {
  std::vector<int> ids;
  for (int i = 0; i < num_arcs(); ++i) {
    if (!arcs[i].safe) ids.push_back(i);
  }
  return ids;
}

void FlowNetwork::validate() const {
  if (node_count <= 0) throw InputError("network: node_count must be positive");
  auto check_node = [&](int v, const char* what) {
    if (v < 0 || v >= node_count)
      throw InputError(std::string("network: ") + what + " out of range");
  };
  check_node(source, "source");
  check_node(sink, "sink");
  if (source == sink) throw InputError("network: source equals sink");
  for (const Arc& a : arcs) {
    check_node(a.tail, "arc tail");
    check_node(a.head, "arc head");
    if (!std::isfinite(a.capacity) || a.capacity < 0.0)
      throw InputError("network: capacities must be finite and nonnegative");
  }
}

std::vector<std::vector<int>> out_adjacency(const FlowNetwork& net) {
  std::vector<std::vector<int>> out(net.node_count);
  for (int i = 0; i < net.num_arcs(); ++i) out[net.arcs[i].tail].push_back(i);
  return out;
}

bool is_simple_st_path(const FlowNetwork& net, const Path& path) {
  if (path.arc_ids.empty()) return false;
  std::vector<char> seen(net.node_count, 0);
  int current = net.source;
  seen[current] = 1;
  for (int id : path.arc_ids) {
    if (id < 0 || id >= net.num_arcs()) return false;
    const Arc& a = net.arcs[id];
    if (a.tail != current) return false;
    if (seen[a.head]) return false;
    seen[a.head] = 1;
    current = a.head;
  }
  return current == net.sink;
}

void validate_path(const FlowNetwork& net, const Path& path) {
  if (!is_simple_st_path(net, path))
    throw InputError("path: not a simple s-t path of the network");
}

double PathFlow::total() const {
  double sum = 0.0;
  for (const auto& [path, rate] : entries) sum += rate;
  return sum;
}

void PathFlow::add(const Path& path, double rate) {
  if (rate < 0.0) throw InputError("path flow: rates must be nonnegative");
  entries[path] += rate;
}

std::vector<double> arc_loads(const FlowNetwork& net, const PathFlow& x) {
  std::vector<double> loads(net.num_arcs(), 0.0);
  for (const auto& [path, rate] : x.entries) {
    for (int id : path.arc_ids) loads[id] += rate;
  }
  return loads;
}

bool is_feasible(const FlowNetwork& net, const PathFlow& x, double tol) {
  for (const auto& [path, rate] : x.entries) {
    if (rate < 0.0) return false;
  }
  const std::vector<double> loads = arc_loads(net, x);
  for (int i = 0; i < net.num_arcs(); ++i) {
    if (loads[i] > net.arcs[i].capacity + tol) return false;
  }
  return true;
}

bool Scenario::contains(int arc_id) const {
  return std::binary_search(arc_ids.begin(), arc_ids.end(), arc_id);
}

Scenario make_scenario(std::vector<int> arc_ids) {
  std::sort(arc_ids.begin(), arc_ids.end());
  if (std::adjacent_find(arc_ids.begin(), arc_ids.end()) != arc_ids.end())
    throw InputError("scenario: duplicate arc index");
  return Scenario{std::move(arc_ids)};
}

void validate_scenario(const FlowNetwork& net, const Scenario& eta) {
  int previous = -1;
  for (int id : eta.arc_ids) {
    if (id < 0 || id >= net.num_arcs())
      throw InputError("scenario: arc index out of range");
    if (id <= previous) throw InputError("scenario: arc ids not sorted/unique");
    if (net.arcs[id].safe) throw InputError("scenario: contains a safe arc");
    previous = id;
  }
}

double val_eta(const FlowNetwork& net, const PathFlow& x, const Scenario& eta) {
  validate_scenario(net, eta);
  double surviving = 0.0;
  for (const auto& [path, rate] : x.entries) {
    bool hit = false;
    for (int id : path.arc_ids) {
      if (eta.contains(id)) {
        hit = true;
        break;
      }
    }
    if (!hit) surviving += rate;
  }
  return surviving;
}

double destroyed(const FlowNetwork& net, const PathFlow& x,
                 const Scenario& eta) {
  return x.total() - val_eta(net, x, eta);
}

namespace {

constexpr double kFlowEps = 1e-12;

struct ResidualEdge {
  int to;
  double residual;
  int pair;  // index of the reverse edge
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net,
                       std::span<const double> cap_override) {
  net.validate();
  if (!cap_override.empty() &&
      cap_override.size() != static_cast<size_t>(net.num_arcs()))
    throw InputError("max_flow: cap_override size mismatch");

  const int n = net.node_count;
  std::vector<ResidualEdge> edges;
  edges.reserve(2 * net.arcs.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < net.num_arcs(); ++i) {
    const Arc& a = net.arcs[i];
    const double cap = cap_override.empty() ? a.capacity : cap_override[i];
    if (cap < 0.0) throw InputError("max_flow: negative capacity override");
    adj[a.tail].push_back(static_cast<int>(edges.size()));
    edges.push_back({a.head, cap, static_cast<int>(edges.size()) + 1});
    adj[a.head].push_back(static_cast<int>(edges.size()));
    edges.push_back({a.tail, 0.0, static_cast<int>(edges.size()) - 1});
  }

  std::vector<int> level(n), iter(n);
  const int s = net.source, t = net.sink;

  auto bfs = [&]() {
    std::fill(level.begin(), level.end(), -1);
    std::deque<int> queue{s};
    level[s] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int eid : adj[v]) {
        const ResidualEdge& e = edges[eid];
        if (e.residual > kFlowEps && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level[t] >= 0;
  };

  auto dfs = [&](auto&& self, int v, double limit) -> double {
    if (v == t) return limit;
    for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
      ResidualEdge& e = edges[adj[v][i]];
      if (e.residual > kFlowEps && level[e.to] == level[v] + 1) {
        const double pushed =
            self(self, e.to, std::min(limit, e.residual));
        if (pushed > kFlowEps) {
          e.residual -= pushed;
          edges[e.pair].residual += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  };

  double value = 0.0;
  while (bfs()) {
    std::fill(iter.begin(), iter.end(), 0);
    for (;;) {
      const double pushed =
          dfs(dfs, s, std::numeric_limits<double>::infinity());
      if (pushed <= kFlowEps) break;
      value += pushed;
    }
  }

  MaxFlowResult result;
  result.value = value;
  result.arc_flow.resize(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const double cap =
        cap_override.empty() ? net.arcs[i].capacity : cap_override[i];
    result.arc_flow[i] = std::max(0.0, cap - edges[2 * i].residual);
  }
  return result;
}

PathFlow path_decompose(const FlowNetwork& net,
                        std::span<const double> arc_flow, double tol) {
  net.validate();
  if (arc_flow.size() != static_cast<size_t>(net.num_arcs()))
    throw InputError("path_decompose: arc_flow size mismatch");

  std::vector<double> flow(arc_flow.begin(), arc_flow.end());
  std::vector<double> divergence(net.node_count, 0.0);
  for (int i = 0; i < net.num_arcs(); ++i) {
    if (flow[i] < -tol) throw InputError("path_decompose: negative arc flow");
    if (flow[i] < 0.0) flow[i] = 0.0;
    divergence[net.arcs[i].tail] += flow[i];
    divergence[net.arcs[i].head] -= flow[i];
  }
  for (int v = 0; v < net.node_count; ++v) {
    if (v == net.source || v == net.sink) continue;
    if (std::abs(divergence[v]) > tol)
      throw InputError("path_decompose: flow conservation violated");
  }

  const auto adjacency = out_adjacency(net);
  PathFlow result;

  // Walk from s along positive arcs; cancel any cycle encountered, peel the
  // bottleneck when t is reached. Each peel zeroes at least one arc.
  for (;;) {
    double out_of_s = 0.0;
    for (int id : adjacency[net.source]) out_of_s += flow[id];
    double into_s = 0.0;
    for (int i = 0; i < net.num_arcs(); ++i) {
      if (net.arcs[i].head == net.source) into_s += flow[i];
    }
    if (out_of_s - into_s <= tol) break;

    std::vector<int> walk_arcs;
    std::vector<int> position(net.node_count, -1);
    int current = net.source;
    position[current] = 0;
    bool reached_sink = false;
    while (!reached_sink) {
      int next_arc = -1;
      for (int id : adjacency[current]) {
        if (flow[id] > tol && net.arcs[id].head != current) {
          next_arc = id;
          break;
        }
      }
      if (next_arc < 0) break;  // numeric dust; restart outer loop
      const int to = net.arcs[next_arc].head;
      if (position[to] >= 0) {
        // Cycle: cancel its bottleneck and resume from the repeated node.
        const int start = position[to];
        double bottleneck = flow[next_arc];
        for (size_t j = start; j < walk_arcs.size(); ++j)
          bottleneck = std::min(bottleneck, flow[walk_arcs[j]]);
        flow[next_arc] -= bottleneck;
        for (size_t j = start; j < walk_arcs.size(); ++j) {
          flow[walk_arcs[j]] -= bottleneck;
          position[net.arcs[walk_arcs[j]].head] = -1;
        }
        walk_arcs.resize(start);
        current = to;
        continue;
      }
      walk_arcs.push_back(next_arc);
      position[to] = static_cast<int>(walk_arcs.size());
      current = to;
      if (current == net.sink) reached_sink = true;
    }
    if (!reached_sink) break;

    double bottleneck = std::numeric_limits<double>::infinity();
    for (int id : walk_arcs) bottleneck = std::min(bottleneck, flow[id]);
    for (int id : walk_arcs) flow[id] -= bottleneck;
    result.add(Path{walk_arcs}, bottleneck);
  }
  return result;
}

std::vector<Path> enumerate_simple_paths(const FlowNetwork& net,
                                         std::int64_t limit) {
  net.validate();
  const auto adjacency = out_adjacency(net);
  std::vector<Path> paths;
  std::vector<int> arc_stack;
  std::vector<char> visited(net.node_count, 0);

  auto dfs = [&](auto&& self, int v) -> void {
    if (v == net.sink) {
      if (static_cast<std::int64_t>(paths.size()) >= limit)
        throw LimitExceeded("enumerate_simple_paths: more than " +
                            std::to_string(limit) + " paths");
      paths.push_back(Path{arc_stack});
      return;
    }
    visited[v] = 1;
    for (int id : adjacency[v]) {
      const int to = net.arcs[id].head;
      if (visited[to]) continue;
      arc_stack.push_back(id);
      self(self, to);
      arc_stack.pop_back();
    }
    visited[v] = 0;
  };
  dfs(dfs, net.source);
  return paths;
}

}  // namespace robustflow
