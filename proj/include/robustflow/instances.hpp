// Seeded, reproducible random and structured instance generators, plus the
// supersource/supersink transformation for multi-terminal inputs.
//
// Every generator is a pure function of its parameters and seed; draw
// order per site is documented at each function so instances reproduce
// bit-exactly across platforms.
#pragma once

#include <cstdint>
#include <vector>

#include "robustflow/graph.hpp"

namespace robustflow {

// Three nodes {s, v, t}: n parallel (s,v) arcs of capacity M followed by
// (n-1)*M parallel unit (v,t) arcs; everything interdictable.
FlowNetwork gen_p1(int M, int n);

// Series multigraph on nodes v_1..v_n with parallel arc bundles between
// consecutive nodes. Bundle j draws its arc count m_j = m0 + Poisson(m0),
// then capacities by the recurrence u_i = u_{i-1} + (|eps|+1)^2 from
// u_{-1} = 0 with standard normal eps. Draw order: per bundle, one Poisson
// draw followed by m_j normal draws.
FlowNetwork gen_p2(int n, int m0, std::uint64_t seed);

// Chain of n identical blocks: a safe arc of capacity m and an
// interdictable arc of capacity M in parallel, followed by m+M unit arcs.
FlowNetwork gen_p3(int n, int m, int M);

// Recursive-quadrant random graph; nodes must be a power of two and
// a+b+c+d must equal one. Duplicate arcs and self-loops are re-drawn.
// The source is the node with the largest outdegree and the sink the node
// with the largest indegree (excluding the source); ties go to the lowest
// id. Arcs incident to the source or sink are safe; capacities are uniform
// on (0,1). Draw order: per arc, one uniform per recursion level (repeated
// on re-draws); after all arcs, one uniform per arc for the capacities.
FlowNetwork gen_rmat(int nodes, int arcs, double a, double b, double c,
                     double d, std::uint64_t seed);

// Adds a supersource/supersink connected to the given terminals by safe
// arcs whose capacity equals the sum of the terminal's incident arc
// capacities (never binding). Original arcs keep their indices.
FlowNetwork add_supersource_sink(const FlowNetwork& net,
                                 const std::vector<int>& sources,
                                 const std::vector<int>& sinks);

}  // namespace robustflow
