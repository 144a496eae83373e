#include "rcf/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "rcf/errors.hpp"

namespace rcf {

namespace {

double snapshot_throughput(const ModifiedFlowGraph& graph,
                           const std::vector<int>& disabled,
                           const SimplexOptions& opt) {
  if (disabled.empty())
    return solve_throughput(
               make_throughput_problem(graph, graph.topo.wireless.bandwidth_hz),
               opt)
        .throughput;
  ModifiedFlowGraph cut = apply_disable(graph, disabled);
  return solve_throughput(
             make_throughput_problem(cut, cut.topo.wireless.bandwidth_hz), opt)
      .throughput;
}

void finish_stats(PostRumorResult& r) {
  size_t n = r.trials.size();
  double sum_t = 0, sum_q = 0;
  for (const auto& t : r.trials) {
    sum_t += t.tk;
    sum_q += qk_percent(r.t0, t.tk);
  }
  r.mean_tk = sum_t / double(n);
  r.mean_qk = sum_q / double(n);
  if (n < 2) return;
  double ss_t = 0, ss_q = 0;
  for (const auto& t : r.trials) {
    double dt = t.tk - r.mean_tk;
    double dq = qk_percent(r.t0, t.tk) - r.mean_qk;
    ss_t += dt * dt;
    ss_q += dq * dq;
  }
  r.stderr_tk = std::sqrt(ss_t / (double(n) * double(n - 1)));
  r.stderr_qk = std::sqrt(ss_q / (double(n) * double(n - 1)));
}

int count_d2d(const CellularTopology& topo) {
  int n = 0;
  for (const auto& d : topo.devices) n += d.d2d_enabled();
  return n;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(int v) { return v < 0 ? "" : std::to_string(v); }

}  // namespace

PreparedScenario prepare_scenario(const ScenarioBundle& bundle,
                                  const SimplexOptions& opt) {
  bundle.validate();
  PreparedScenario out;
  for (const auto& topo : bundle.snapshots) {
    out.graphs.push_back(build_modified_graph(topo, bundle.beta));
    out.t0 += snapshot_throughput(out.graphs.back(), {}, opt);
  }
  return out;
}

std::map<int, double> compute_device_criticality(const ScenarioBundle& bundle,
                                                 const std::vector<int>& budgets,
                                                 const MipOptions& opt) {
  bundle.validate();
  std::map<int, double> total;
  for (const auto& topo : bundle.snapshots) {
    ModifiedFlowGraph graph = build_modified_graph(topo, bundle.beta);
    NceResult res = nce(graph, topo.wireless.bandwidth_hz, budgets, opt);
    for (const auto& [dev, cr] : res.criticality) total[dev] += cr;
  }
  return total;
}

std::unordered_map<int, double> project_to_users(
    const ScenarioBundle& bundle, const std::map<int, double>& device_cr) {
  std::unordered_map<int, double> user_cr;
  for (const auto& [dev, user] : bundle.interconnection.user_of_device) {
    auto it = device_cr.find(dev);
    user_cr[user] = it == device_cr.end() ? 0.0 : it->second;
  }
  return user_cr;
}

RcfResult run_rcf(const ScenarioBundle& bundle, int k,
                  std::vector<int> budgets, double epsilon, double delta,
                  int delta_arg, const MipOptions& opt) {
  bundle.validate();
  if (budgets.empty()) budgets = default_budgets(k, count_d2d(bundle.topo()));
  RcfResult res;
  res.device_criticality = compute_device_criticality(bundle, budgets, opt);
  res.user_criticality = project_to_users(bundle, res.device_criticality);
  bool any = false;
  for (const auto& [user, cr] : res.user_criticality) any = any || cr > 0;
  if (!any)
    throw ConfigError(
        "rcf pipeline: projected criticality is all zero, nothing to target");
  res.seeds = targeted_im(bundle.social, res.user_criticality,
                          bundle.awareness, k, epsilon, delta,
                          bundle.master_seed, delta_arg);
  return res;
}

std::unordered_map<int, double> degree_user_criticality(
    const ScenarioBundle& bundle, bool social_degree) {
  bundle.validate();
  std::unordered_map<int, double> user_cr;
  if (social_degree) {
    for (const auto& [dev, user] : bundle.interconnection.user_of_device)
      user_cr[user] = double(bundle.social.out[bundle.social.index_of(user)].size());
    return user_cr;
  }
  std::map<int, double> dev_degree;
  for (const auto& topo : bundle.snapshots)
    for (const auto& [dev, nbrs] : d2d_neighbors(topo))
      dev_degree[dev] += double(nbrs.size());
  for (const auto& [dev, user] : bundle.interconnection.user_of_device) {
    auto it = dev_degree.find(dev);
    user_cr[user] = it == dev_degree.end() ? 0.0 : it->second;
  }
  return user_cr;
}

std::unordered_map<int, double> random_user_criticality(
    const ScenarioBundle& bundle, uint64_t seed) {
  bundle.validate();
  std::vector<int> users;
  for (const auto& [dev, user] : bundle.interconnection.user_of_device)
    users.push_back(user);
  std::sort(users.begin(), users.end());
  Rng rng(derive_seed(seed, Stream::RandomBaseline, 0));
  std::unordered_map<int, double> user_cr;
  for (int u : users) user_cr[u] = rng.next_double();
  return user_cr;
}

SeedResult baseline_im(const ScenarioBundle& bundle, int k, BaselineKind kind,
                       double epsilon, double delta, int delta_arg) {
  std::unordered_map<int, double> user_cr =
      kind == BaselineKind::Degree
          ? degree_user_criticality(bundle)
          : random_user_criticality(bundle, bundle.master_seed);
  return targeted_im(bundle.social, user_cr, bundle.awareness, k, epsilon,
                     delta, bundle.master_seed, delta_arg);
}

double qk_percent(double t0, double tk) {
  if (t0 <= 0) throw ConfigError("qk: rumor-free throughput must be positive");
  return 100.0 * (t0 - tk) / t0;
}

PostRumorResult evaluate_post_rumor(const ScenarioBundle& bundle,
                                    const std::vector<int>& seeds, int trials,
                                    const std::vector<int>& protected_devices,
                                    const SimplexOptions& opt) {
  if (trials < 1) throw ConfigError("post rumor: trials must be positive");
  PreparedScenario prep = prepare_scenario(bundle, opt);
  if (prep.t0 <= 0)
    throw ConfigError("post rumor: rumor-free throughput is zero");
  std::unordered_set<int> guarded(protected_devices.begin(),
                                  protected_devices.end());

  PostRumorResult out;
  out.t0 = prep.t0;
  size_t num_edges = bundle.social.edges.size();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(bundle.master_seed, Stream::Trial, uint64_t(t)));
    std::vector<double> draws(num_edges);
    for (double& d : draws) d = rng.next_double();
    CascadeOutcome cascade =
        simulate_ic_with_draws(bundle.social, seeds, bundle.awareness, draws);

    std::vector<int> disabled;
    for (int user : cascade.activated) {
      auto it = bundle.interconnection.device_of_user.find(user);
      if (it == bundle.interconnection.device_of_user.end()) continue;
      if (guarded.count(it->second)) continue;
      disabled.push_back(it->second);
    }
    std::sort(disabled.begin(), disabled.end());

    PostRumorTrial row;
    row.influenced_users = int(cascade.activated.size());
    for (const auto& graph : prep.graphs)
      row.tk += snapshot_throughput(graph, disabled, opt);
    row.disabled = std::move(disabled);
    out.trials.push_back(row);
  }
  finish_stats(out);
  return out;
}

double extra_bandwidth(double bandwidth_hz, double t0, double tk) {
  if (bandwidth_hz <= 0 || t0 < 0 || tk < 0)
    throw ConfigError("extra bandwidth: bad inputs");
  if (tk == 0) return std::numeric_limits<double>::infinity();
  return bandwidth_hz * (t0 / tk - 1.0);
}

bool extra_bandwidth_crosscheck(const ScenarioBundle& bundle,
                                const std::vector<int>& disabled_devices,
                                double t0, double tk, double rel_tol,
                                const SimplexOptions& opt) {
  if (t0 <= 0 || tk <= 0)
    throw ConfigError("bandwidth crosscheck: throughputs must be positive");
  double scale = t0 / tk;
  double widened = 0;
  for (const auto& snap : bundle.snapshots) {
    CellularTopology topo = snap;
    topo.wireless.bandwidth_hz *= scale;
    ModifiedFlowGraph graph = build_modified_graph(topo, bundle.beta);
    widened += snapshot_throughput(graph, disabled_devices, opt);
  }
  return std::abs(widened - t0) <= rel_tol * t0;
}

std::vector<int> top_critical_devices(const std::map<int, double>& cr, int l) {
  if (l < 0) throw ConfigError("retention: budget must be nonnegative");
  std::vector<std::pair<int, double>> ranked(cr.begin(), cr.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (size_t(l) < ranked.size()) ranked.resize(size_t(l));
  std::vector<int> picks;
  for (const auto& [dev, value] : ranked) picks.push_back(dev);
  return picks;
}

RetentionResult retention(const ScenarioBundle& bundle,
                          const std::vector<int>& seeds,
                          const std::map<int, double>& device_criticality,
                          int l, int trials, const SimplexOptions& opt) {
  RetentionResult res;
  res.protected_devices = top_critical_devices(device_criticality, l);
  res.unprotected = evaluate_post_rumor(bundle, seeds, trials, {}, opt);
  res.protected_run =
      evaluate_post_rumor(bundle, seeds, trials, res.protected_devices, opt);
  if (res.unprotected.mean_tk <= 0)
    throw ConfigError("retention: unprotected throughput is zero");
  res.gain = (res.protected_run.mean_tk - res.unprotected.mean_tk) /
             res.unprotected.mean_tk;
  return res;
}

std::vector<UaRow> ua_sweep(const ScenarioBundle& bundle,
                            const std::vector<int>& seeds,
                            const std::vector<double>& levels, int trials,
                            const SimplexOptions& opt) {
  for (double level : levels)
    if (!(level >= 0.0 && level <= 1.0))
      throw ConfigError("ua sweep: level outside [0, 1]");
  std::vector<UaRow> rows;
  for (double level : levels) {
    ScenarioBundle tuned = bundle;
    tuned.awareness.w.clear();
    for (int user : bundle.social.users) tuned.awareness.w[user] = level;
    rows.push_back({level, evaluate_post_rumor(tuned, seeds, trials, {}, opt)});
  }
  return rows;
}

std::vector<ExperimentRow> rows_from(const std::string& method, int k,
                                     const PostRumorResult& result) {
  std::vector<ExperimentRow> rows;
  for (size_t t = 0; t < result.trials.size(); ++t) {
    ExperimentRow row;
    row.method = method;
    row.k = k;
    row.trial = int(t);
    row.t0 = result.t0;
    row.tk = result.trials[t].tk;
    row.qk = qk_percent(result.t0, result.trials[t].tk);
    row.influenced_users = result.trials[t].influenced_users;
    row.disabled_devices = int(result.trials[t].disabled.size());
    rows.push_back(row);
  }
  return rows;
}

std::string results_csv(const std::vector<ExperimentRow>& rows) {
  std::string text =
      "# rcf-results-v1\n"
      "method,k,trial,t0,tk,qk,influenced_users,disabled_devices,"
      "extra_bandwidth_hz,retention_l,ua_level\n";
  for (const auto& r : rows) {
    text += r.method;
    text += ',' + fmt_int(r.k) + ',' + fmt_int(r.trial);
    text += ',' + fmt_double(r.t0) + ',' + fmt_double(r.tk) + ',' +
            fmt_double(r.qk);
    text += ',' + fmt_int(r.influenced_users) + ',' +
            fmt_int(r.disabled_devices);
    text += ',' + fmt_double(r.extra_bandwidth_hz) + ',' +
            fmt_int(r.retention_l) + ',' + fmt_double(r.ua_level);
    text += '\n';
  }
  return text;
}

}  // namespace rcf
