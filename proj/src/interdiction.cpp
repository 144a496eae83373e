#include "rcf/interdiction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rcf/errors.hpp"

namespace rcf {

namespace {

int effective_z(const ThroughputProblem& pr, int edge) {
  int z = pr.z.at(edge);
  if (pr.graph->removed[edge]) z = 1;
  return z;
}

std::string tag(const char* prefix, int id) {
  return std::string(prefix) + "_" + std::to_string(id);
}

}  // namespace

ThroughputProblem make_throughput_problem(const ModifiedFlowGraph& graph,
                                          double bandwidth_hz) {
  ThroughputProblem pr;
  pr.graph = &graph;
  pr.bandwidth_hz = bandwidth_hz;
  for (int e : graph.removable_edges) pr.z[e] = 0;
  return pr;
}

double big_m(const ModifiedFlowGraph& graph, double bandwidth_hz, int edge) {
  double sum = 0;
  for (int in : graph.in_edges[graph.edges[edge].tail])
    if (graph.edges[in].capacity < kInf) sum += graph.edges[in].capacity;
  return bandwidth_hz * sum;
}

LinearProgram build_inner_lp(const ThroughputProblem& problem,
                             InnerLpIndex* index) {
  const ModifiedFlowGraph& g = *problem.graph;
  if (problem.bandwidth_hz <= 0)
    throw ConfigError("throughput: non-positive bandwidth");
  if (problem.z.size() != g.removable_edges.size())
    throw ConfigError("throughput: z must cover exactly the removable edges");
  for (int e : g.removable_edges)
    if (!problem.z.count(e))
      throw ConfigError("throughput: z missing removable edge " +
                        std::to_string(e));

  LinearProgram lp;
  lp.sense = Sense::Maximize;
  InnerLpIndex idx;
  idx.flow_var.assign(g.edges.size(), -1);
  idx.balance_row.assign(g.nodes.size(), -1);
  idx.interference_row.assign(g.edges.size(), -1);
  idx.removal_row.assign(g.edges.size(), -1);

  for (const auto& e : g.edges)
    idx.flow_var[e.id] = lp.add_variable(tag("f", e.id), 0.0, kInf,
                                         e.id == g.return_edge ? 1.0 : 0.0);
  idx.wc = lp.add_variable("Wc", 0.0, kInf, 0.0);
  idx.wd = lp.add_variable("Wd", 0.0, kInf, 0.0);

  for (const auto& n : g.nodes) {
    std::vector<std::pair<int, double>> co;
    for (int e : g.in_edges[n.id]) co.push_back({idx.flow_var[e], 1.0});
    for (int e : g.out_edges[n.id]) co.push_back({idx.flow_var[e], -1.0});
    idx.balance_row[n.id] =
        lp.add_constraint(tag("bal", n.id), co, Relation::Equal, 0.0);
  }

  auto interference = [&](const std::vector<int>& band_edges, int bw_var) {
    for (int e : band_edges) {
      std::vector<std::pair<int, double>> co;
      for (int gg : g.edges[e].interference)
        co.push_back({idx.flow_var[gg], 1.0 / g.edges[gg].capacity});
      co.push_back({bw_var, -1.0});
      idx.interference_row[e] =
          lp.add_constraint(tag("intf", e), co, Relation::LessEq, 0.0);
    }
  };
  interference(g.cellular_edges, idx.wc);
  interference(g.d2d_edges, idx.wd);

  for (int e : g.removable_edges) {
    double rhs =
        big_m(g, problem.bandwidth_hz, e) * (1 - effective_z(problem, e));
    idx.removal_row[e] = lp.add_constraint(
        tag("rem", e), {{idx.flow_var[e], 1.0}}, Relation::LessEq, rhs);
  }

  idx.bandwidth_row =
      lp.add_constraint("bw", {{idx.wc, 1.0}, {idx.wd, 1.0}},
                        Relation::LessEq, problem.bandwidth_hz);
  if (index) *index = idx;
  return lp;
}

ThroughputSolution solve_throughput(const ThroughputProblem& problem,
                                    const SimplexOptions& opt) {
  ThroughputSolution out;
  LinearProgram lp = build_inner_lp(problem, &out.index);
  out.lp = solve_lp(lp, opt);
  if (out.lp.status != LpStatus::Optimal)
    throw SolverError("throughput: inner LP did not solve to optimality");
  out.throughput = out.lp.objective;
  return out;
}

double throughput_after_disable(const ModifiedFlowGraph& graph,
                                double bandwidth_hz,
                                const std::vector<int>& device_ids,
                                const SimplexOptions& opt) {
  ModifiedFlowGraph g = apply_disable(graph, device_ids);
  return solve_throughput(make_throughput_problem(g, bandwidth_hz), opt)
      .throughput;
}

MixedIntegerProgram build_dual_milp(const ModifiedFlowGraph& g,
                                    double bandwidth_hz, int budget,
                                    DualMilpIndex* index) {
  if (bandwidth_hz <= 0) throw ConfigError("interdiction: non-positive bandwidth");
  std::vector<int> eligible;
  for (int e : g.removable_edges)
    if (!g.removed[e]) eligible.push_back(e);
  if (budget < 0 || budget > static_cast<int>(eligible.size()))
    throw ConfigError("interdiction: budget outside [0, |E^m|]");

  MixedIntegerProgram mip;
  LinearProgram& lp = mip.lp;
  lp.sense = Sense::Minimize;
  DualMilpIndex idx;
  idx.p.assign(g.nodes.size(), -1);

  for (const auto& n : g.nodes)
    idx.p[n.id] = lp.add_variable(tag("p", n.id), -kInf, kInf, 0.0);
  for (int e : g.cellular_edges)
    idx.qc[e] = lp.add_variable(tag("qc", e), 0.0, kInf, 0.0);
  for (int e : g.d2d_edges)
    idx.qd[e] = lp.add_variable(tag("qd", e), 0.0, kInf, 0.0);
  for (int e : eligible) {
    double m = big_m(g, bandwidth_hz, e);
    idx.r[e] = lp.add_variable(tag("r", e), 0.0, kInf, m);
    idx.delta[e] = lp.add_variable(tag("d", e), 0.0, kInf, -m);
    idx.z[e] = lp.add_variable(tag("z", e), 0.0, 1.0, 0.0);
    mip.binaries.push_back(idx.z[e]);
  }
  idx.l = lp.add_variable("l", 0.0, kInf, bandwidth_hz);

  {
    std::vector<std::pair<int, double>> co;
    for (int e : eligible) co.push_back({idx.z[e], 1.0});
    lp.add_constraint("budget", co, Relation::LessEq, budget);
  }
  for (int e : eligible) {
    lp.add_constraint(tag("lin1", e), {{idx.delta[e], 1.0}, {idx.z[e], -1.0}},
                      Relation::LessEq, 0.0);
    lp.add_constraint(tag("lin2", e), {{idx.delta[e], 1.0}, {idx.r[e], -1.0}},
                      Relation::LessEq, 0.0);
    lp.add_constraint(tag("lin3", e),
                      {{idx.delta[e], 1.0}, {idx.r[e], -1.0}, {idx.z[e], -1.0}},
                      Relation::GreaterEq, -1.0);
  }

  // one dual-feasibility row per primal flow variable
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::Removable && g.removed[e.id]) continue;
    std::vector<std::pair<int, double>> co;
    double rhs = 0.0;
    co.push_back({idx.p[e.head], 1.0});
    co.push_back({idx.p[e.tail], -1.0});
    switch (e.kind) {
      case EdgeKind::Virtual:
        if (e.id == g.return_edge) rhs = 1.0;
        break;
      case EdgeKind::Cellular:
        for (int gg : e.interference)
          co.push_back({idx.qc[gg], 1.0 / e.capacity});
        break;
      case EdgeKind::D2d:
        for (int gg : e.interference)
          co.push_back({idx.qd[gg], 1.0 / e.capacity});
        break;
      case EdgeKind::Removable:
        co.push_back({idx.r[e.id], 1.0});
        break;
    }
    lp.add_constraint(tag("df", e.id), co, Relation::GreaterEq, rhs);
  }

  {
    std::vector<std::pair<int, double>> co{{idx.l, 1.0}};
    for (int e : g.cellular_edges) co.push_back({idx.qc[e], -1.0});
    lp.add_constraint("bwc", co, Relation::GreaterEq, 0.0);
    std::vector<std::pair<int, double>> cd{{idx.l, 1.0}};
    for (int e : g.d2d_edges) cd.push_back({idx.qd[e], -1.0});
    lp.add_constraint("bwd", cd, Relation::GreaterEq, 0.0);
  }
  if (index) *index = idx;
  return mip;
}

InterdictionResult solve_interdiction(const ModifiedFlowGraph& graph,
                                      double bandwidth_hz, int budget,
                                      const MipOptions& opt) {
  DualMilpIndex idx;
  MixedIntegerProgram mip = build_dual_milp(graph, bandwidth_hz, budget, &idx);
  MipSolution sol = solve_mip(mip, opt);
  if (sol.status == MipStatus::NodeLimit)
    throw SolverError("interdiction: node limit reached before optimality");
  if (sol.status != MipStatus::Optimal)
    throw SolverError("interdiction: dual MILP did not solve to optimality");

  InterdictionResult out;
  out.throughput = sol.objective;
  out.nodes = sol.nodes;
  for (int e : graph.removable_edges) {
    auto it = idx.z.find(e);
    if (it == idx.z.end()) continue;
    if (sol.values[it->second] > 0.5) {
      out.removed_edges.push_back(e);
      out.removed_devices.push_back(graph.edges[e].tx_device);
    }
  }
  std::sort(out.removed_devices.begin(), out.removed_devices.end());
  for (size_t j = 0; j < mip.lp.vars.size(); ++j)
    out.certificate[mip.lp.vars[j].name] = sol.values[j];
  return out;
}

InterdictionResult brute_force_interdiction(const ModifiedFlowGraph& graph,
                                            double bandwidth_hz, int budget,
                                            const SimplexOptions& opt,
                                            long subset_cap) {
  std::vector<int> eligible;
  for (int e : graph.removable_edges)
    if (!graph.removed[e]) eligible.push_back(e);
  const int n = static_cast<int>(eligible.size());
  if (budget < 0 || budget > n)
    throw ConfigError("interdiction: budget outside [0, |E^m|]");

  double total = 0, binom = 1;  // sum_{s<=u} C(n, s)
  for (int s = 0; s <= budget; ++s) {
    total += binom;
    binom = binom * (n - s) / (s + 1);
    if (total > static_cast<double>(subset_cap))
      throw OracleCapError("brute force: subset count exceeds cap");
  }

  ThroughputProblem pr = make_throughput_problem(graph, bandwidth_hz);
  InterdictionResult best;
  best.throughput = kInf;
  long tried = 0;
  std::vector<int> chosen;

  auto evaluate = [&]() {
    for (int e : eligible) pr.z[e] = 0;
    for (int e : chosen) pr.z[e] = 1;
    double t = solve_throughput(pr, opt).throughput;
    ++tried;
    if (!std::isfinite(best.throughput) ||
        t < best.throughput - 1e-9 * (1.0 + std::fabs(best.throughput))) {
      best.throughput = t;
      best.removed_edges = chosen;
    }
  };

  // depth-first in lexicographic order over ascending id sequences:
  // {} < {e0} < {e0,e1} < ... < {e1} < ...
  auto dfs = [&](auto&& self, int from) -> void {
    evaluate();
    if (static_cast<int>(chosen.size()) == budget) return;
    for (int i = from; i < n; ++i) {
      chosen.push_back(eligible[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);

  best.nodes = tried;
  std::sort(best.removed_edges.begin(), best.removed_edges.end());
  for (int e : best.removed_edges)
    best.removed_devices.push_back(graph.edges[e].tx_device);
  std::sort(best.removed_devices.begin(), best.removed_devices.end());
  return best;
}

NceResult nce(const ModifiedFlowGraph& graph, double bandwidth_hz,
              const std::vector<int>& budgets, const MipOptions& opt) {
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    throw ConfigError("nce: budgets must be sorted ascending");
  NceResult out;
  out.budgets = budgets;
  for (const auto& [dev, edge] : graph.removable_of_device) {
    (void)edge;
    out.criticality[dev] = 0.0;
  }
  for (int u : budgets) {
    InterdictionResult r = solve_interdiction(graph, bandwidth_hz, u, opt);
    for (int dev : r.removed_devices) out.criticality[dev] += 1.0;
    out.removed_per_budget.push_back(r.removed_devices);
    out.throughput_per_budget.push_back(r.throughput);
  }
  return out;
}

std::vector<int> default_budgets(int k, int num_d2d) {
  if (num_d2d <= 0) return {};
  int lo = std::min(std::max(k, 0), num_d2d);
  int hi = num_d2d;
  int w = std::min(20, hi - lo + 1);
  std::vector<int> out;
  for (int p = 0; p < w; ++p) {
    double t = (w == 1) ? 0.0 : static_cast<double>(p) / (w - 1);
    int u = static_cast<int>(std::lround(lo + t * (hi - lo)));
    if (out.empty() || out.back() != u) out.push_back(u);
  }
  return out;
}

std::string criticality_csv(const NceResult& result) {
  std::ostringstream os;
  os << "# rcf-criticality-v1 tie-break=solver-determined,fixed-branching\n";
  os << "device_id,cr,budgets_hit\n";
  std::vector<int> devices;
  for (const auto& [dev, cr] : result.criticality) devices.push_back(dev);
  std::sort(devices.begin(), devices.end());
  for (int dev : devices) {
    os << dev << ',' << result.criticality.at(dev) << ',';
    bool first = true;
    for (size_t p = 0; p < result.budgets.size(); ++p) {
      const auto& rem = result.removed_per_budget[p];
      if (std::find(rem.begin(), rem.end(), dev) != rem.end()) {
        if (!first) os << ';';
        os << result.budgets[p];
        first = false;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace rcf
