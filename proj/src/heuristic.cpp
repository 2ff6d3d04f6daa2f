#include "robustflow/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robustflow/lp.hpp"

namespace robustflow {

HeuristicResult solve_heuristic(const FlowNetwork& net, int k) {
  net.validate();
  if (k < 1) throw InputError("heuristic: k must be at least 1");

  double max_interdictable_cap = 0.0;
  for (const Arc& a : net.arcs) {
    if (!a.safe) max_interdictable_cap = std::max(max_interdictable_cap, a.capacity);
  }

  // max  sum_{e out of s} f_e - sum_{e into s} f_e - k * theta
  // s.t. conservation at internal nodes, 0 <= f_e <= u_e,
  //      f_e <= theta on interdictable arcs.
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  std::vector<int> flow_var(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const Arc& a = net.arcs[i];
    double obj = 0.0;
    if (a.tail == net.source) obj += 1.0;
    if (a.head == net.source) obj -= 1.0;
    const bool self_loop = a.tail == a.head;
    flow_var[i] = lp.add_column(self_loop ? 0.0 : obj, 0.0,
                                self_loop ? 0.0 : a.capacity);
  }
  const int theta_var = lp.add_column(-static_cast<double>(k), 0.0,
                                      max_interdictable_cap);
  std::vector<int> node_row(net.node_count, -1);
  for (int v = 0; v < net.node_count; ++v) {
    if (v == net.source || v == net.sink) continue;
    node_row[v] = lp.add_row(Relation::kEqual, 0.0);
  }
  for (int i = 0; i < net.num_arcs(); ++i) {
    const Arc& a = net.arcs[i];
    if (a.tail == a.head) continue;
    if (node_row[a.head] >= 0) lp.add_entry(node_row[a.head], flow_var[i], 1.0);
    if (node_row[a.tail] >= 0)
      lp.add_entry(node_row[a.tail], flow_var[i], -1.0);
  }
  for (int i = 0; i < net.num_arcs(); ++i) {
    if (net.arcs[i].safe || net.arcs[i].tail == net.arcs[i].head) continue;
    const int row = lp.add_row(Relation::kLessEqual, 0.0);
    lp.add_entry(row, flow_var[i], 1.0);
    lp.add_entry(row, theta_var, -1.0);
  }

  const SolveResult solved = solve_lp(lp);
  if (solved.status != SolveStatus::kOptimal)
    throw std::runtime_error("heuristic: unexpected solver status");

  std::vector<double> arc_flow(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i)
    arc_flow[i] = std::max(0.0, solved.primal[flow_var[i]]);

  HeuristicResult result;
  result.flow = path_decompose(net, arc_flow, 1e-7);
  result.theta = solved.primal[theta_var];
  // Evaluate the objective on the decomposed flow so value and flow agree
  // exactly even in the presence of discarded cycle dust.
  const std::vector<double> loads = arc_loads(net, result.flow);
  double max_load = 0.0;
  for (int i = 0; i < net.num_arcs(); ++i) {
    if (!net.arcs[i].safe) max_load = std::max(max_load, loads[i]);
  }
  result.value = result.flow.total() - k * max_load;
  return result;
}

bool verify_guarantee(const FlowNetwork& net, const PathFlow& x, int k,
                      double tol, const EnumerationLimits& limits) {
  const std::vector<double> loads = arc_loads(net, x);
  double max_load = 0.0;
  for (int i = 0; i < net.num_arcs(); ++i) {
    if (!net.arcs[i].safe) max_load = std::max(max_load, loads[i]);
  }
  const double claimed = x.total() - k * max_load;
  const double robust = robust_value(net, x, k, limits);
  return std::abs(robust - claimed) <= tol;
}

double approximation_ratio_bound(int k) {
  if (k < 1) throw InputError("approximation_ratio_bound: k must be >= 1");
  const double kd = static_cast<double>(k);
  return (kd + 1.0) / (kd * kd / 4.0 + kd + 1.0);
}

ApproximationCheck approximation_check(const FlowNetwork& net, int k,
                                       double optimum) {
  ApproximationCheck check;
  check.bound = approximation_ratio_bound(k);
  if (optimum <= 0.0) {
    check.ratio = 1.0;
    check.ok = true;
    return check;
  }
  const HeuristicResult h = solve_heuristic(net, k);
  check.ratio = h.value / optimum;
  check.ok = check.ratio >= check.bound - 1e-9;
  return check;
}

}  // namespace robustflow
