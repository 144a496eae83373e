#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcf/errors.hpp"
#include "rcf/harness.hpp"
#include "rcf/scenario.hpp"

namespace py = pybind11;
using namespace rcf;

PYBIND11_MODULE(pyrcf, m) {
  m.doc() = "rumor-combating framework: scenarios, criticality, seed "
            "selection and post-rumor throughput";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<OracleCapError>(m, "OracleCapError");

  py::class_<GenerateOptions>(m, "GenerateOptions")
      .def(py::init<>())
      .def_readwrite("cellular_requesters",
                     &GenerateOptions::cellular_requesters)
      .def_readwrite("d2d_requesters", &GenerateOptions::d2d_requesters)
      .def_readwrite("relays", &GenerateOptions::relays)
      .def_readwrite("beta", &GenerateOptions::beta)
      .def_readwrite("p1", &GenerateOptions::p1)
      .def_readwrite("p2", &GenerateOptions::p2)
      .def_readwrite("social_edge_file", &GenerateOptions::social_edge_file)
      .def_readwrite("synthetic_nodes", &GenerateOptions::synthetic_nodes)
      .def_readwrite("synthetic_edges_per_node",
                     &GenerateOptions::synthetic_edges_per_node)
      .def_readwrite("weight_ceiling", &GenerateOptions::weight_ceiling)
      .def_readwrite("seed", &GenerateOptions::seed)
      .def_property(
          "noise_dbm_per_hz",
          [](const GenerateOptions& o) {
            return o.base.wireless.noise_dbm_per_hz;
          },
          [](GenerateOptions& o, double v) {
            o.base.wireless.noise_dbm_per_hz = v;
          })
      .def_property(
          "bandwidth_hz",
          [](const GenerateOptions& o) { return o.base.wireless.bandwidth_hz; },
          [](GenerateOptions& o, double v) { o.base.wireless.bandwidth_hz = v; })
      .def_property(
          "d2d_range",
          [](const GenerateOptions& o) { return o.base.d2d_range; },
          [](GenerateOptions& o, double v) { o.base.d2d_range = v; });

  py::class_<ScenarioBundle>(m, "ScenarioBundle")
      .def_readwrite("master_seed", &ScenarioBundle::master_seed)
      .def_readonly("beta", &ScenarioBundle::beta)
      .def_readonly("p1", &ScenarioBundle::p1)
      .def_readonly("p2", &ScenarioBundle::p2)
      .def_property_readonly(
          "num_snapshots",
          [](const ScenarioBundle& b) { return b.snapshots.size(); })
      .def_property_readonly(
          "num_devices",
          [](const ScenarioBundle& b) { return b.topo().devices.size(); })
      .def_property_readonly(
          "users", [](const ScenarioBundle& b) { return b.social.users; })
      .def_property_readonly("user_of_device",
                             [](const ScenarioBundle& b) {
                               return b.interconnection.user_of_device;
                             })
      .def("set_awareness",
           [](ScenarioBundle& b, int user, double level) {
             b.awareness.w[user] = level;
             b.validate();
           },
           py::arg("user"), py::arg("level"))
      .def("validate", &ScenarioBundle::validate);

  m.def("generate_scenario", &generate_scenario, py::arg("options"));
  m.def("load_scenario", &load_scenario, py::arg("directory"));
  m.def("write_scenario", &write_scenario, py::arg("directory"),
        py::arg("bundle"));

  m.def(
      "throughput",
      [](const ScenarioBundle& b) { return prepare_scenario(b).t0; },
      py::arg("bundle"),
      "rumor-free throughput: sum of the max-flow objectives per snapshot");

  m.def(
      "device_criticality",
      [](const ScenarioBundle& b, const std::vector<int>& budgets) {
        return compute_device_criticality(b, budgets);
      },
      py::arg("bundle"), py::arg("budgets"));
  m.def("default_budgets", &default_budgets, py::arg("k"),
        py::arg("num_d2d_devices"));
  m.def("top_critical_devices", &top_critical_devices, py::arg("criticality"),
        py::arg("l"));

  py::class_<ImParams>(m, "ImParams")
      .def_readonly("k", &ImParams::k)
      .def_readonly("epsilon", &ImParams::epsilon)
      .def_readonly("delta", &ImParams::delta)
      .def_readonly("delta_arg", &ImParams::delta_arg)
      .def_readonly("tau", &ImParams::tau)
      .def_readonly("sigma", &ImParams::sigma)
      .def_readonly("phi", &ImParams::phi)
      .def_readonly("gamma", &ImParams::gamma);

  py::class_<SeedResult>(m, "SeedResult")
      .def_readonly("seeds", &SeedResult::seeds)
      .def_readonly("marginals", &SeedResult::marginals)
      .def_readonly("estimate", &SeedResult::estimate)
      .def_readonly("deg", &SeedResult::deg)
      .def_readonly("rr_sets_used", &SeedResult::rr_sets_used)
      .def_readonly("doublings", &SeedResult::doublings)
      .def_readonly("params", &SeedResult::params);

  py::class_<RcfResult>(m, "RcfResult")
      .def_readonly("device_criticality", &RcfResult::device_criticality)
      .def_readonly("user_criticality", &RcfResult::user_criticality)
      .def_readonly("seeds", &RcfResult::seeds);

  m.def(
      "run_rcf",
      [](const ScenarioBundle& b, int k, const std::vector<int>& budgets,
         double epsilon, double delta, int delta_arg) {
        return run_rcf(b, k, budgets, epsilon, delta, delta_arg);
      },
      py::arg("bundle"), py::arg("k"),
      py::arg("budgets") = std::vector<int>{}, py::arg("epsilon") = 0.1,
      py::arg("delta") = 0.01, py::arg("delta_arg") = 2);

  py::enum_<BaselineKind>(m, "BaselineKind")
      .value("Degree", BaselineKind::Degree)
      .value("Random", BaselineKind::Random);
  m.def(
      "baseline_im",
      [](const ScenarioBundle& b, int k, BaselineKind kind, double epsilon,
         double delta, int delta_arg) {
        return baseline_im(b, k, kind, epsilon, delta, delta_arg);
      },
      py::arg("bundle"), py::arg("k"), py::arg("kind"),
      py::arg("epsilon") = 0.1, py::arg("delta") = 0.01,
      py::arg("delta_arg") = 2);
  m.def("degree_user_criticality", &degree_user_criticality, py::arg("bundle"),
        py::arg("social_degree") = false);
  m.def("random_user_criticality", &random_user_criticality, py::arg("bundle"),
        py::arg("seed"));

  py::class_<PostRumorTrial>(m, "PostRumorTrial")
      .def_readonly("tk", &PostRumorTrial::tk)
      .def_readonly("influenced_users", &PostRumorTrial::influenced_users)
      .def_readonly("disabled", &PostRumorTrial::disabled);

  py::class_<PostRumorResult>(m, "PostRumorResult")
      .def_readonly("t0", &PostRumorResult::t0)
      .def_readonly("trials", &PostRumorResult::trials)
      .def_readonly("mean_tk", &PostRumorResult::mean_tk)
      .def_readonly("stderr_tk", &PostRumorResult::stderr_tk)
      .def_readonly("mean_qk", &PostRumorResult::mean_qk)
      .def_readonly("stderr_qk", &PostRumorResult::stderr_qk);

  m.def(
      "evaluate_post_rumor",
      [](const ScenarioBundle& b, const std::vector<int>& seeds, int trials,
         const std::vector<int>& protected_devices) {
        return evaluate_post_rumor(b, seeds, trials, protected_devices);
      },
      py::arg("bundle"), py::arg("seeds"), py::arg("trials") = 50,
      py::arg("protected_devices") = std::vector<int>{});

  py::class_<RetentionResult>(m, "RetentionResult")
      .def_readonly("protected_devices", &RetentionResult::protected_devices)
      .def_readonly("unprotected", &RetentionResult::unprotected)
      .def_readonly("protected_run", &RetentionResult::protected_run)
      .def_readonly("gain", &RetentionResult::gain);

  m.def(
      "retention",
      [](const ScenarioBundle& b, const std::vector<int>& seeds,
         const std::map<int, double>& cr, int l, int trials) {
        return retention(b, seeds, cr, l, trials);
      },
      py::arg("bundle"), py::arg("seeds"), py::arg("device_criticality"),
      py::arg("l"), py::arg("trials") = 50);

  py::class_<UaRow>(m, "UaRow")
      .def_readonly("level", &UaRow::level)
      .def_readonly("outcome", &UaRow::outcome);

  m.def(
      "ua_sweep",
      [](const ScenarioBundle& b, const std::vector<int>& seeds,
         const std::vector<double>& levels, int trials) {
        return ua_sweep(b, seeds, levels, trials);
      },
      py::arg("bundle"), py::arg("seeds"), py::arg("levels"),
      py::arg("trials") = 50);

  m.def("qk_percent", &qk_percent, py::arg("t0"), py::arg("tk"));
  m.def("extra_bandwidth", &extra_bandwidth, py::arg("bandwidth_hz"),
        py::arg("t0"), py::arg("tk"));
  m.def(
      "extra_bandwidth_crosscheck",
      [](const ScenarioBundle& b, const std::vector<int>& disabled, double t0,
         double tk, double rel_tol) {
        return extra_bandwidth_crosscheck(b, disabled, t0, tk, rel_tol);
      },
      py::arg("bundle"), py::arg("disabled_devices"), py::arg("t0"),
      py::arg("tk"), py::arg("rel_tol") = 1e-6);
}
