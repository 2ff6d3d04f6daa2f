#include "robustflow/instances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "robustflow/rng.hpp"

namespace robustflow {

FlowNetwork gen_p1(int M, int n) {
  if (M < 1 || n < 1) throw InputError("gen_p1: M and n must be positive");
  FlowNetwork net;
  net.node_count = 3;
  net.source = 0;  // s
  net.sink = 2;    // t
  for (int i = 0; i < n; ++i) net.add_arc(0, 1, static_cast<double>(M));
  const int units = (n - 1) * M;
  for (int i = 0; i < units; ++i) net.add_arc(1, 2, 1.0);
  return net;
}

FlowNetwork gen_p2(int n, int m0, std::uint64_t seed) {
  if (n < 2) throw InputError("gen_p2: n must be at least 2");
  if (m0 < 1) throw InputError("gen_p2: m0 must be positive");
  Rng rng(seed);
  FlowNetwork net;
  net.node_count = n;
  net.source = 0;
  net.sink = n - 1;
  for (int j = 0; j < n - 1; ++j) {
    const int m_j = m0 + rng.poisson(static_cast<double>(m0));
    double capacity = 0.0;
    for (int i = 0; i < m_j; ++i) {
      const double eps = rng.normal();
      capacity += (std::abs(eps) + 1.0) * (std::abs(eps) + 1.0);
      net.add_arc(j, j + 1, capacity);
    }
  }
  return net;
}

FlowNetwork gen_p3(int n, int m, int M) {
  if (n < 1 || m < 1 || M < 1)
    throw InputError("gen_p3: n, m and M must be positive");
  FlowNetwork net;
  net.node_count = 2 * n + 1;
  net.source = 0;
  net.sink = 2 * n;
  for (int block = 0; block < n; ++block) {
    const int s = 2 * block;
    const int v = 2 * block + 1;
    const int t = 2 * block + 2;
    net.add_arc(s, v, static_cast<double>(m), /*safe=*/true);
    net.add_arc(s, v, static_cast<double>(M));
    for (int i = 0; i < m + M; ++i) net.add_arc(v, t, 1.0);
  }
  return net;
}

FlowNetwork gen_rmat(int nodes, int arcs, double a, double b, double c,
                     double d, std::uint64_t seed) {
  if (nodes < 2 || (nodes & (nodes - 1)) != 0)
    throw InputError("gen_rmat: nodes must be a power of two, at least 2");
  if (arcs < 1) throw InputError("gen_rmat: arcs must be positive");
  if (a < 0 || b < 0 || c < 0 || d < 0 ||
      std::abs(a + b + c + d - 1.0) > 1e-9)
    throw InputError("gen_rmat: quadrant probabilities must sum to one");
  if (static_cast<std::int64_t>(arcs) >
      static_cast<std::int64_t>(nodes) * (nodes - 1))
    throw InputError("gen_rmat: more arcs than distinct node pairs");

  int levels = 0;
  while ((1 << levels) < nodes) ++levels;

  Rng rng(seed);
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> endpoints;
  endpoints.reserve(arcs);
  while (static_cast<int>(endpoints.size()) < arcs) {
    int row = 0, col = 0;
    for (int level = 0; level < levels; ++level) {
      const double u = rng.uniform();
      row <<= 1;
      col <<= 1;
      if (u < a) {
        // top-left: nothing to add
      } else if (u < a + b) {
        col |= 1;
      } else if (u < a + b + c) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    if (row == col) continue;                       // self loop: re-draw
    if (!used.insert({row, col}).second) continue;  // duplicate: re-draw
    endpoints.push_back({row, col});
  }

  FlowNetwork net;
  net.node_count = nodes;
  for (const auto& [tail, head] : endpoints) net.add_arc(tail, head, 0.0);
  for (int i = 0; i < arcs; ++i) net.arcs[i].capacity = rng.uniform_open();

  std::vector<int> outdeg(nodes, 0), indeg(nodes, 0);
  for (const Arc& arc : net.arcs) {
    ++outdeg[arc.tail];
    ++indeg[arc.head];
  }
  int source = 0;
  for (int v = 1; v < nodes; ++v)
    if (outdeg[v] > outdeg[source]) source = v;
  int sink = -1;
  for (int v = 0; v < nodes; ++v) {
    if (v == source) continue;
    if (sink < 0 || indeg[v] > indeg[sink]) sink = v;
  }
  net.source = source;
  net.sink = sink;
  for (Arc& arc : net.arcs) {
    if (arc.tail == source || arc.head == source || arc.tail == sink ||
        arc.head == sink)
      arc.safe = true;
  }
  net.validate();
  return net;
}

FlowNetwork add_supersource_sink(const FlowNetwork& net,
                                 const std::vector<int>& sources,
                                 const std::vector<int>& sinks) {
  net.validate();
  if (sources.empty() || sinks.empty())
    throw InputError("supersource: terminal lists must be nonempty");
  for (int v : sources) {
    if (v < 0 || v >= net.node_count)
      throw InputError("supersource: source terminal not in graph");
  }
  for (int v : sinks) {
    if (v < 0 || v >= net.node_count)
      throw InputError("supersource: sink terminal not in graph");
  }
  FlowNetwork result = net;
  const int super_source = net.node_count;
  const int super_sink = net.node_count + 1;
  result.node_count += 2;
  result.source = super_source;
  result.sink = super_sink;
  for (int v : sources) {
    double cap = 0.0;
    for (const Arc& a : net.arcs)
      if (a.tail == v) cap += a.capacity;
    result.add_arc(super_source, v, cap, /*safe=*/true);
  }
  for (int v : sinks) {
    double cap = 0.0;
    for (const Arc& a : net.arcs)
      if (a.head == v) cap += a.capacity;
    result.add_arc(v, super_sink, cap, /*safe=*/true);
  }
  return result;
}

}  // namespace robustflow
