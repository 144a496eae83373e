#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcf/im.hpp"
#include "rcf/interdiction.hpp"
#include "rcf/scenario.hpp"

namespace rcf {

// flow graphs built once per snapshot, plus the rumor-free throughput
struct PreparedScenario {
  std::vector<ModifiedFlowGraph> graphs;
  double t0 = 0;  // bits/s, summed over snapshots
};

PreparedScenario prepare_scenario(const ScenarioBundle& bundle,
                                  const SimplexOptions& opt = {});

// interdiction-based criticality per d2d device, summed across snapshots
std::map<int, double> compute_device_criticality(
    const ScenarioBundle& bundle, const std::vector<int>& budgets,
    const MipOptions& opt = {});

// push device criticality through the interconnection; users without a
// device stay absent (criticality zero)
std::unordered_map<int, double> project_to_users(
    const ScenarioBundle& bundle, const std::map<int, double>& device_cr);

struct RcfResult {
  std::map<int, double> device_criticality;
  std::unordered_map<int, double> user_criticality;
  SeedResult seeds;
};

// end-to-end attack pipeline: criticality -> projection -> seed selection.
// empty budgets fall back to default_budgets(k, d2d devices in snapshot 0).
RcfResult run_rcf(const ScenarioBundle& bundle, int k,
                  std::vector<int> budgets, double epsilon, double delta,
                  int delta_arg = 2, const MipOptions& opt = {});

enum class BaselineKind { Degree, Random };

// criticality stand-ins for the comparison baselines: the device's d2d link
// count (or the user's social degree), and independent uniform draws
std::unordered_map<int, double> degree_user_criticality(
    const ScenarioBundle& bundle, bool social_degree = false);
std::unordered_map<int, double> random_user_criticality(
    const ScenarioBundle& bundle, uint64_t seed);

SeedResult baseline_im(const ScenarioBundle& bundle, int k, BaselineKind kind,
                       double epsilon, double delta, int delta_arg = 2);

struct PostRumorTrial {
  double tk = 0;              // bits/s once the rumor has settled
  int influenced_users = 0;   // cascade size, seeds included
  std::vector<int> disabled;  // device ids knocked off d2d, ascending
};

struct PostRumorResult {
  double t0 = 0;
  std::vector<PostRumorTrial> trials;
  double mean_tk = 0, stderr_tk = 0;
  double mean_qk = 0, stderr_qk = 0;
};

// relative throughput decrease, in percent
double qk_percent(double t0, double tk);

// monte-carlo rumor evaluation: per trial one cascade, then one throughput
// solve per snapshot with the influenced devices' d2d links removed.
// protected devices never disable. trial t draws from the Trial stream of
// the bundle's master seed, so equal trial indices share cascades.
PostRumorResult evaluate_post_rumor(
    const ScenarioBundle& bundle, const std::vector<int>& seeds, int trials,
    const std::vector<int>& protected_devices = {},
    const SimplexOptions& opt = {});

// bandwidth needed on top of the current allocation to win back t0;
// infinite when tk is zero
double extra_bandwidth(double bandwidth_hz, double t0, double tk);

// re-solve with every snapshot's bandwidth widened by t0/tk and confirm the
// rumor-free throughput comes back within rel_tol
bool extra_bandwidth_crosscheck(const ScenarioBundle& bundle,
                                const std::vector<int>& disabled_devices,
                                double t0, double tk, double rel_tol = 1e-6,
                                const SimplexOptions& opt = {});

// top-l device ids by criticality, highest first, ties to the lower id
std::vector<int> top_critical_devices(const std::map<int, double>& cr, int l);

struct RetentionResult {
  std::vector<int> protected_devices;
  PostRumorResult unprotected;
  PostRumorResult protected_run;
  double gain = 0;  // relative mean-throughput improvement
};

// keep the l most critical devices on d2d no matter what the rumor does,
// and measure how much throughput that buys
RetentionResult retention(const ScenarioBundle& bundle,
                          const std::vector<int>& seeds,
                          const std::map<int, double>& device_criticality,
                          int l, int trials, const SimplexOptions& opt = {});

struct UaRow {
  double level = 0;
  PostRumorResult outcome;
};

// overwrite every user's awareness with one uniform level and re-evaluate;
// trials stay coupled across levels through the shared master seed
std::vector<UaRow> ua_sweep(const ScenarioBundle& bundle,
                            const std::vector<int>& seeds,
                            const std::vector<double>& levels, int trials,
                            const SimplexOptions& opt = {});

struct ExperimentRow {
  std::string method;  // rcf / degree / random
  int k = -1;          // negative ints and NaN doubles print as empty cells
  int trial = -1;
  double t0 = 0, tk = 0, qk = 0;
  int influenced_users = -1;
  int disabled_devices = -1;
  double extra_bandwidth_hz = std::numeric_limits<double>::quiet_NaN();
  int retention_l = -1;
  double ua_level = std::numeric_limits<double>::quiet_NaN();
};

std::vector<ExperimentRow> rows_from(const std::string& method, int k,
                                     const PostRumorResult& result);

std::string results_csv(const std::vector<ExperimentRow>& rows);

}  // namespace rcf
