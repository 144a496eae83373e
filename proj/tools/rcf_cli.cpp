#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcf/errors.hpp"
#include "rcf/harness.hpp"

using namespace rcf;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    parts.push_back(item.substr(a, b - a + 1));
  }
  return parts;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const std::string& p : split_list(text)) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad integer '" + p + "'");
    }
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text,
                                  const std::string& what) {
  std::vector<double> out;
  for (const std::string& p : split_list(text)) {
    try {
      size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad number '" + p + "'");
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path);
  f << content;
}

int count_d2d(const CellularTopology& topo) {
  int n = 0;
  for (const auto& d : topo.devices) n += d.d2d_enabled();
  return n;
}

// every run-family command shares these
struct RunArgs {
  std::string scenario, out;
  uint64_t seed = 0;
  bool seed_set = false;
  int trials = 50;
  double epsilon = 0.1, delta = 0.01;
  int delta_arg = 2;
  std::string budgets;
};

void add_run_args(CLI::App* cmd, RunArgs& a, bool im_params = true) {
  cmd->add_option("--scenario", a.scenario, "scenario directory")->required();
  cmd->add_option("--out", a.out, "output CSV path")->required();
  cmd->add_option("--seed", a.seed, "override the scenario's master seed")
      ->each([&a](const std::string&) { a.seed_set = true; });
  cmd->add_option("--trials", a.trials, "monte-carlo trials per configuration");
  if (im_params) {
    cmd->add_option("--epsilon", a.epsilon, "seed-selection accuracy");
    cmd->add_option("--delta", a.delta, "seed-selection failure probability");
    cmd->add_option("--delta-arg", a.delta_arg,
                    "2 for the stock threshold, 3 for the conservative one");
    cmd->add_option("--budgets", a.budgets,
                    "criticality budget list, e.g. 1,3,5 (default: sweep)");
  }
}

ScenarioBundle load_bundle(const RunArgs& a) {
  ScenarioBundle b = load_scenario(a.scenario);
  if (a.seed_set) b.master_seed = a.seed;
  return b;
}

std::vector<int> budgets_or_default(const RunArgs& a, int k,
                                    const ScenarioBundle& b) {
  std::vector<int> budgets = parse_ints(a.budgets, "budgets");
  if (budgets.empty()) budgets = default_budgets(k, count_d2d(b.topo()));
  return budgets;
}

std::unordered_map<int, double> criticality_for(const std::string& method,
                                                const ScenarioBundle& bundle,
                                                const std::vector<int>& budgets,
                                                std::map<int, double>* device_cr) {
  if (method == "degree") return degree_user_criticality(bundle);
  if (method == "random")
    return random_user_criticality(bundle, bundle.master_seed);
  if (method != "rcf") throw ConfigError("unknown method '" + method + "'");
  if (device_cr->empty())
    *device_cr = compute_device_criticality(bundle, budgets);
  std::unordered_map<int, double> user_cr =
      project_to_users(bundle, *device_cr);
  bool any = false;
  for (const auto& [u, v] : user_cr) any = any || v > 0;
  if (!any)
    throw ConfigError(
        "rcf pipeline: projected criticality is all zero, nothing to target");
  return user_cr;
}

int cmd_generate(const std::string& out, uint64_t seed,
                 const std::string& preset, double p1, double p2, int p_set,
                 int cellular, int d2d, int relays, const std::string& social,
                 int syn_nodes, int syn_epn, double ceiling, double beta,
                 double noise_dbm, double bandwidth_hz, double d2d_range,
                 bool rayleigh, uint64_t fading_seed) {
  GenerateOptions o;
  InterconnectPreset pre =
      preset == "mall" ? kMallPreset : kStadiumPreset;
  o.p1 = (p_set & 1) ? p1 : pre.p1;
  o.p2 = (p_set & 2) ? p2 : pre.p2;
  o.cellular_requesters = cellular;
  o.d2d_requesters = d2d;
  o.relays = relays;
  o.social_edge_file = social;
  o.synthetic_nodes = syn_nodes;
  o.synthetic_edges_per_node = syn_epn;
  o.weight_ceiling = ceiling;
  o.beta = beta;
  o.seed = seed;
  o.base.wireless.noise_dbm_per_hz = noise_dbm;
  o.base.wireless.bandwidth_hz = bandwidth_hz;
  o.base.wireless.rayleigh_fading = rayleigh;
  o.base.wireless.fading_seed = fading_seed;
  o.base.d2d_range = d2d_range;

  ScenarioBundle b = generate_scenario(o);
  write_scenario(out, b);
  std::cout << "scenario written to " << out << "\n"
            << "  devices: " << b.topo().devices.size() << " (d2d-capable "
            << count_d2d(b.topo()) << ")\n"
            << "  social users: " << b.social.users.size() << ", links "
            << b.interconnection.user_of_device.size() << " (p1=" << o.p1
            << ", p2=" << o.p2 << ")\n";
  return 0;
}

int cmd_run(const RunArgs& a, const std::string& k_list,
            const std::string& method_list) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> ks = parse_ints(k_list, "k");
  std::vector<std::string> methods = split_list(method_list);
  std::vector<ExperimentRow> rows;
  if (!ks.empty()) {
    int min_k = *std::min_element(ks.begin(), ks.end());
    std::vector<int> budgets = budgets_or_default(a, min_k, bundle);
    std::map<int, double> device_cr;  // filled once, shared across k
    for (const std::string& method : methods) {
      std::unordered_map<int, double> user_cr =
          criticality_for(method, bundle, budgets, &device_cr);
      for (int k : ks) {
        SeedResult seeds =
            targeted_im(bundle.social, user_cr, bundle.awareness, k, a.epsilon,
                        a.delta, bundle.master_seed, a.delta_arg);
        PostRumorResult result =
            evaluate_post_rumor(bundle, seeds.seeds, a.trials);
        for (ExperimentRow& row : rows_from(method, k, result))
          rows.push_back(std::move(row));
        std::cout << method << " k=" << k << ": Qk=" << result.mean_qk
                  << "% +-" << result.stderr_qk << ", Tk=" << result.mean_tk
                  << "\n";
      }
    }
  }
  write_text(a.out, results_csv(rows));
  return 0;
}

int cmd_sweep_ua(const RunArgs& a, const std::string& seed_users,
                 const std::string& level_list) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> seeds = parse_ints(seed_users, "seeds");
  if (seeds.empty()) throw ConfigError("sweep-ua: --seeds must not be empty");
  std::vector<double> levels = parse_doubles(level_list, "levels");
  std::vector<UaRow> sweep = ua_sweep(bundle, seeds, levels, a.trials);
  std::vector<ExperimentRow> rows;
  for (const UaRow& u : sweep) {
    for (ExperimentRow& row : rows_from("manual", -1, u.outcome)) {
      row.ua_level = u.level;
      rows.push_back(std::move(row));
    }
    std::cout << "ua=" << u.level << ": Tk=" << u.outcome.mean_tk << " +-"
              << u.outcome.stderr_tk << ", Qk=" << u.outcome.mean_qk << "%\n";
  }
  write_text(a.out, results_csv(rows));
  return 0;
}

int cmd_retention(const RunArgs& a, const std::string& seed_users, int k,
                  const std::string& l_list) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> budgets = budgets_or_default(a, k, bundle);
  std::map<int, double> device_cr =
      compute_device_criticality(bundle, budgets);

  std::vector<int> seeds = parse_ints(seed_users, "seeds");
  std::string method = "manual";
  if (seeds.empty()) {
    method = "rcf";
    std::unordered_map<int, double> user_cr =
        project_to_users(bundle, device_cr);
    bool any = false;
    for (const auto& [u, v] : user_cr) any = any || v > 0;
    if (!any)
      throw ConfigError(
          "rcf pipeline: projected criticality is all zero, nothing to target");
    seeds = targeted_im(bundle.social, user_cr, bundle.awareness, k, a.epsilon,
                        a.delta, bundle.master_seed, a.delta_arg)
                .seeds;
  }

  std::vector<int> ls = parse_ints(l_list, "l");
  PostRumorResult unprotected = evaluate_post_rumor(bundle, seeds, a.trials);
  std::vector<ExperimentRow> rows;
  for (int l : ls) {
    std::vector<int> guard = top_critical_devices(device_cr, l);
    PostRumorResult prot =
        l == 0 ? unprotected
               : evaluate_post_rumor(bundle, seeds, a.trials, guard);
    for (ExperimentRow& row : rows_from(method, k, prot)) {
      row.retention_l = l;
      rows.push_back(std::move(row));
    }
    double gain =
        (prot.mean_tk - unprotected.mean_tk) / unprotected.mean_tk;
    std::cout << "l=" << l << ": Tk=" << prot.mean_tk << ", gain=" << gain
              << "\n";
  }
  write_text(a.out, results_csv(rows));
  return 0;
}

int cmd_bandwidth(const RunArgs& a, const std::string& seed_users) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> seeds = parse_ints(seed_users, "seeds");
  if (seeds.empty()) throw ConfigError("bandwidth: --seeds must not be empty");
  PostRumorResult result = evaluate_post_rumor(bundle, seeds, a.trials);
  double W = bundle.topo().wireless.bandwidth_hz;

  std::string csv =
      "# rcf-bandwidth-v1\n"
      "trial,t0,tk,qk,extra_bandwidth_hz,crosscheck\n";
  double mean_extra = 0;
  int priced = 0;
  for (size_t t = 0; t < result.trials.size(); ++t) {
    const PostRumorTrial& trial = result.trials[t];
    double extra = extra_bandwidth(W, result.t0, trial.tk);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,", t, result.t0,
                  trial.tk, qk_percent(result.t0, trial.tk));
    csv += buf;
    if (std::isinf(extra)) {
      csv += "inf,\n";  // nothing to widen toward; no re-solve possible
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.17g,", extra);
    csv += buf;
    bool ok = extra_bandwidth_crosscheck(bundle, trial.disabled, result.t0,
                                         trial.tk);
    csv += ok ? "1\n" : "0\n";
    mean_extra += extra;
    ++priced;
  }
  write_text(a.out, csv);
  if (priced)
    std::cout << "mean extra bandwidth: " << mean_extra / priced << " Hz over "
              << priced << " trials\n";
  return 0;
}

int cmd_nce(const RunArgs& a) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> budgets = budgets_or_default(a, 1, bundle);
  const CellularTopology& topo = bundle.topo();
  ModifiedFlowGraph graph = build_modified_graph(topo, bundle.beta);
  NceResult res = nce(graph, topo.wireless.bandwidth_hz, budgets);
  write_text(a.out, criticality_csv(res));
  for (size_t i = 0; i < res.budgets.size(); ++i)
    std::cout << "budget " << res.budgets[i]
              << ": T=" << res.throughput_per_budget[i] << " after removing "
              << res.removed_per_budget[i].size() << " device(s)\n";
  return 0;
}

int cmd_im(const RunArgs& a, int k, const std::string& method) {
  ScenarioBundle bundle = load_bundle(a);
  std::vector<int> budgets = budgets_or_default(a, k, bundle);
  std::map<int, double> device_cr;
  std::unordered_map<int, double> user_cr =
      criticality_for(method, bundle, budgets, &device_cr);
  SeedResult res =
      targeted_im(bundle.social, user_cr, bundle.awareness, k, a.epsilon,
                  a.delta, bundle.master_seed, a.delta_arg);
  write_text(a.out, seeds_csv(res));
  std::cout << im_diagnostics_json(res) << "\n";
  return 0;
}

// quick self-test of the solver stack against its own oracles
int cmd_oracle_check(uint64_t seed, int instances) {
  bool all_ok = true;
  auto report = [&all_ok](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  };

  for (int i = 0; i < instances; ++i) {
    CellularTopology base;
    base.wireless.noise_dbm_per_hz = 31.0;  // regime where removals matter
    CellularTopology topo =
        generate_topology(1, 2, 2, seed + uint64_t(i), base);
    ModifiedFlowGraph graph = build_modified_graph(topo, 1.0);
    double W = topo.wireless.bandwidth_hz;
    for (int budget : {1, 2}) {
      InterdictionResult milp = solve_interdiction(graph, W, budget);
      InterdictionResult brute = brute_force_interdiction(graph, W, budget);
      std::ostringstream name;
      name << "interdiction matches enumeration (instance " << i << ", budget "
           << budget << ")";
      report(name.str(), std::abs(milp.throughput - brute.throughput) <=
                             1e-5 * std::max(1.0, brute.throughput));
      double worst = 0;
      for (const auto& [key, value] : milp.certificate) {
        if (key.rfind("d_", 0) != 0) continue;
        std::string edge = key.substr(2);
        double r = milp.certificate.at("r_" + edge);
        double z = milp.certificate.at("z_" + edge);
        worst = std::max(worst, std::abs(value - r * z));
      }
      std::ostringstream lin;
      lin << "removal linearization is tight (instance " << i << ", budget "
          << budget << ")";
      report(lin.str(), worst <= 1e-6);
    }
  }

  SocialGraph chain = social_from_pairs({{0, 1}, {1, 2}, {2, 3}});
  for (auto& e : chain.edges) e.p = 0.5;
  InfluenceEstimate mc =
      estimate_influence(chain, {0}, nullptr, {}, 20000, seed);
  double exact = exact_influence_small(chain, {0}, nullptr, {});
  report("cascade simulation matches exhaustive enumeration",
         std::abs(mc.mean - exact) <= 4 * mc.stderr_);

  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rumor-to-throughput vulnerability toolkit for d2d cells"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI/TOML config file; explicit flags take precedence");

  // generate
  auto* gen = app.add_subcommand("generate", "write a scenario directory");
  std::string gen_out, gen_preset = "stadium", gen_social;
  uint64_t gen_seed = 0, gen_fading_seed = 0;
  double gen_p1 = 0, gen_p2 = 0, gen_ceiling = 0.1, gen_beta = 1.0;
  double gen_noise = -174.0, gen_bandwidth = 1e5, gen_range = 15.0;
  int gen_cell = 20, gen_d2d = 30, gen_relays = 60;
  int gen_nodes = 4039, gen_epn = 22;
  bool gen_rayleigh = false;
  gen->add_option("--out", gen_out, "scenario directory to create")->required();
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--preset", gen_preset, "interconnection preset")
      ->check(CLI::IsMember({"stadium", "mall"}));
  auto* p1_opt = gen->add_option("--p1", gen_p1, "own-device link probability");
  auto* p2_opt = gen->add_option("--p2", gen_p2, "hop probability");
  gen->add_option("--cellular", gen_cell, "cellular-only requesters");
  gen->add_option("--d2d", gen_d2d, "d2d-mode requesters");
  gen->add_option("--relays", gen_relays, "relay devices");
  gen->add_option("--social", gen_social,
                  "edge-list file (default: synthetic graph)");
  gen->add_option("--synthetic-nodes", gen_nodes, "synthetic graph size");
  gen->add_option("--synthetic-epn", gen_epn, "synthetic edges per node");
  gen->add_option("--weight-ceiling", gen_ceiling, "edge weight upper bound");
  gen->add_option("--beta", gen_beta, "interference radius multiplier");
  gen->add_option("--noise-dbm", gen_noise, "noise floor, dBm/Hz");
  gen->add_option("--bandwidth-hz", gen_bandwidth, "cell bandwidth");
  gen->add_option("--d2d-range", gen_range, "d2d link range, meters");
  gen->add_flag("--rayleigh", gen_rayleigh, "sample per-link fading gains");
  gen->add_option("--fading-seed", gen_fading_seed, "fading stream seed");

  // run
  auto* run = app.add_subcommand("run", "k-sweep of seed methods vs damage");
  RunArgs run_args;
  std::string run_k = "2,4,6,8,10", run_methods = "rcf,degree,random";
  add_run_args(run, run_args);
  run->add_option("--k", run_k, "seed set sizes, e.g. 2,4,6 (empty: none)");
  run->add_option("--methods", run_methods, "subset of rcf,degree,random");

  // sweep-ua
  auto* ua = app.add_subcommand("sweep-ua", "awareness level sweep");
  RunArgs ua_args;
  std::string ua_seeds, ua_levels = "0,0.2,0.4,1.0";
  add_run_args(ua, ua_args, false);
  ua->add_option("--seeds", ua_seeds, "seed user ids")->required();
  ua->add_option("--levels", ua_levels, "awareness levels in [0,1]");

  // retention
  auto* ret = app.add_subcommand("retention", "protect top-critical devices");
  RunArgs ret_args;
  std::string ret_seeds, ret_l = "0,1,2,3,4,5,6,7,8,9,10";
  int ret_k = 10;
  add_run_args(ret, ret_args);
  ret->add_option("--seeds", ret_seeds,
                  "seed user ids (default: pipeline seeds at --k)");
  ret->add_option("--k", ret_k, "seed set size when seeds are computed");
  ret->add_option("--l", ret_l, "protection budgets");

  // bandwidth
  auto* bw = app.add_subcommand("bandwidth", "price the throughput loss in Hz");
  RunArgs bw_args;
  std::string bw_seeds;
  add_run_args(bw, bw_args, false);
  bw->add_option("--seeds", bw_seeds, "seed user ids")->required();

  // nce
  auto* nc = app.add_subcommand("nce", "criticality table for one scenario");
  RunArgs nce_args;
  add_run_args(nc, nce_args);

  // im
  auto* im = app.add_subcommand("im", "seed selection only");
  RunArgs im_args;
  int im_k = 10;
  std::string im_method = "rcf";
  add_run_args(im, im_args);
  im->add_option("--k", im_k, "seed set size");
  im->add_option("--method", im_method, "criticality source")
      ->check(CLI::IsMember({"rcf", "degree", "random"}));

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check", "fast solver self-test");
  uint64_t oc_seed = 0;
  int oc_instances = 5;
  oc->add_option("--seed", oc_seed, "instance seed");
  oc->add_option("--instances", oc_instances, "random instances to try");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_out, gen_seed, gen_preset, gen_p1, gen_p2,
                          (p1_opt->count() ? 1 : 0) | (p2_opt->count() ? 2 : 0),
                          gen_cell, gen_d2d, gen_relays, gen_social, gen_nodes,
                          gen_epn, gen_ceiling, gen_beta, gen_noise,
                          gen_bandwidth, gen_range, gen_rayleigh,
                          gen_fading_seed);
    if (run->parsed()) return cmd_run(run_args, run_k, run_methods);
    if (ua->parsed()) return cmd_sweep_ua(ua_args, ua_seeds, ua_levels);
    if (ret->parsed()) return cmd_retention(ret_args, ret_seeds, ret_k, ret_l);
    if (bw->parsed()) return cmd_bandwidth(bw_args, bw_seeds);
    if (nc->parsed()) return cmd_nce(nce_args);
    if (im->parsed()) return cmd_im(im_args, im_k, im_method);
    if (oc->parsed()) return cmd_oracle_check(oc_seed, oc_instances);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const OracleCapError& e) {
    std::cerr << "oracle cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
