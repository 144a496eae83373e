#include "rcf/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rcf/errors.hpp"
#include "rcf/random.hpp"

namespace rcf {

const CellularTopology& ScenarioBundle::topo() const {
  if (snapshots.empty()) throw ConfigError("scenario: no snapshots");
  return snapshots.front();
}

void ScenarioBundle::validate() const {
  if (snapshots.empty()) throw ConfigError("scenario: no snapshots");
  if (!(beta > 0)) throw ConfigError("scenario: beta must be positive");
  if (!(p1 >= 0 && p1 <= 1) || !(p2 >= 0 && p2 <= 1))
    throw ConfigError("scenario: interconnection probabilities out of [0,1]");
  for (const auto& t : snapshots) t.validate();
  social.validate();
  awareness.validate();
  for (const auto& [dev, user] : interconnection.user_of_device) {
    if (social.index_of(user) < 0)
      throw ConfigError("scenario: interconnection user " +
                        std::to_string(user) + " not in the social graph");
    for (const auto& t : snapshots) {
      const Device& d = t.device(dev);  // throws on unknown id
      if (!d.d2d_enabled())
        throw ConfigError("scenario: interconnection device " +
                          std::to_string(dev) + " cannot use d2d");
    }
  }
}

CellularTopology generate_topology(int cellular_requesters, int d2d_requesters,
                                   int relays, uint64_t seed,
                                   CellularTopology base) {
  if (cellular_requesters < 0 || d2d_requesters < 0 || relays < 0)
    throw ConfigError("topology: negative device count");
  CellularTopology t = std::move(base);
  t.devices.clear();
  Rng rng(derive_seed(seed, Stream::Positions, 0));
  int id = 0;
  auto place = [&](int count, Role role) {
    for (int i = 0; i < count; ++i) {
      Device d;
      d.id = id++;
      d.x = t.bs_x + rng.next_double() * t.cell_width;
      d.y = t.bs_y + rng.next_double() * t.cell_height;
      d.role = role;
      t.devices.push_back(d);
    }
  };
  place(cellular_requesters, Role::CellularRequester);
  place(d2d_requesters, Role::D2dRequester);
  place(relays, Role::Relay);
  t.validate();
  return t;
}

ScenarioBundle generate_scenario(const GenerateOptions& opt) {
  ScenarioBundle b;
  b.master_seed = opt.seed;
  b.beta = opt.beta;
  b.weight_ceiling = opt.weight_ceiling;
  b.weight_seed = opt.seed;
  b.p1 = opt.p1;
  b.p2 = opt.p2;
  b.snapshots.push_back(generate_topology(opt.cellular_requesters,
                                          opt.d2d_requesters, opt.relays,
                                          opt.seed, opt.base));
  b.social = opt.social_edge_file.empty()
                 ? synthetic_social(opt.synthetic_nodes,
                                    opt.synthetic_edges_per_node, opt.seed)
                 : load_edge_list(opt.social_edge_file);
  assign_weights_uniform(b.social, opt.weight_ceiling, opt.seed);
  b.interconnection = generate_interconnection(b.snapshots.front(), b.social,
                                               opt.p1, opt.p2, opt.seed);
  b.validate();
  return b;
}

ScenarioPaths scenario_paths(const std::string& dir) {
  ScenarioPaths p;
  p.json = dir + "/scenario.json";
  p.social = dir + "/social_edges.txt";
  p.interconnection = dir + "/interconnection.csv";
  p.awareness = dir + "/awareness.txt";
  return p;
}

namespace {

std::string role_name(Role r) {
  switch (r) {
    case Role::CellularRequester: return "cellular";
    case Role::D2dRequester: return "d2d";
    case Role::Relay: return "relay";
  }
  throw ConfigError("scenario: unknown role");
}

Role role_from(const std::string& s) {
  if (s == "cellular") return Role::CellularRequester;
  if (s == "d2d") return Role::D2dRequester;
  if (s == "relay") return Role::Relay;
  throw ConfigError("scenario: unknown role '" + s + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("scenario: cannot write " + path);
  f << text;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("scenario: cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

void write_scenario(const std::string& dir, const ScenarioBundle& bundle) {
  bundle.validate();
  if (bundle.snapshots.size() != 1)
    throw ConfigError("scenario files hold a single snapshot");
  std::filesystem::create_directories(dir);
  ScenarioPaths paths = scenario_paths(dir);
  const CellularTopology& t = bundle.topo();

  nlohmann::ordered_json j;
  j["format"] = "rcf-scenario-v1";
  j["seed"] = bundle.master_seed;
  j["beta"] = bundle.beta;
  j["cell"] = {{"width", t.cell_width},
               {"height", t.cell_height},
               {"bs_x", t.bs_x},
               {"bs_y", t.bs_y},
               {"d2d_range", t.d2d_range}};
  j["wireless"] = {{"bandwidth_hz", t.wireless.bandwidth_hz},
                   {"bs_power_w", t.wireless.bs_power_w},
                   {"device_power_w", t.wireless.device_power_w},
                   {"path_loss_exponent", t.wireless.path_loss_exponent},
                   {"noise_dbm_per_hz", t.wireless.noise_dbm_per_hz},
                   {"rayleigh_fading", t.wireless.rayleigh_fading},
                   {"fading_seed", t.wireless.fading_seed}};
  j["social"] = {{"edges", "social_edges.txt"},
                 {"weight_ceiling", bundle.weight_ceiling},
                 {"weight_seed", bundle.weight_seed}};
  j["interconnect"] = {{"p1", bundle.p1}, {"p2", bundle.p2}};
  nlohmann::ordered_json devs = nlohmann::ordered_json::array();
  for (const auto& d : t.devices)
    devs.push_back({{"id", d.id}, {"role", role_name(d.role)},
                    {"x", d.x}, {"y", d.y}});
  j["devices"] = std::move(devs);
  write_text(paths.json, j.dump(2) + "\n");

  std::ostringstream social;
  social << "# undirected interactions, one per line\n";
  for (const auto& e : bundle.social.edges)
    if (e.tail < e.head) social << e.tail << ' ' << e.head << '\n';
  write_text(paths.social, social.str());

  write_text(paths.interconnection, interconnection_csv(bundle.interconnection));

  if (!bundle.awareness.w.empty())
    write_text(paths.awareness, awareness_text(bundle.awareness));
  else
    std::filesystem::remove(paths.awareness);
}

ScenarioBundle load_scenario(const std::string& dir) {
  ScenarioPaths paths = scenario_paths(dir);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(paths.json));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: bad json: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "rcf-scenario-v1")
      throw ConfigError("scenario: unsupported format tag");
    ScenarioBundle b;
    b.master_seed = j.at("seed").get<uint64_t>();
    b.beta = j.at("beta").get<double>();
    CellularTopology t;
    const auto& cell = j.at("cell");
    t.cell_width = cell.at("width").get<double>();
    t.cell_height = cell.at("height").get<double>();
    t.bs_x = cell.at("bs_x").get<double>();
    t.bs_y = cell.at("bs_y").get<double>();
    t.d2d_range = cell.at("d2d_range").get<double>();
    const auto& w = j.at("wireless");
    t.wireless.bandwidth_hz = w.at("bandwidth_hz").get<double>();
    t.wireless.bs_power_w = w.at("bs_power_w").get<double>();
    t.wireless.device_power_w = w.at("device_power_w").get<double>();
    t.wireless.path_loss_exponent = w.at("path_loss_exponent").get<double>();
    t.wireless.noise_dbm_per_hz = w.at("noise_dbm_per_hz").get<double>();
    t.wireless.rayleigh_fading = w.at("rayleigh_fading").get<bool>();
    t.wireless.fading_seed = w.at("fading_seed").get<uint64_t>();
    for (const auto& d : j.at("devices")) {
      Device dev;
      dev.id = d.at("id").get<int>();
      dev.role = role_from(d.at("role").get<std::string>());
      dev.x = d.at("x").get<double>();
      dev.y = d.at("y").get<double>();
      t.devices.push_back(dev);
    }
    b.snapshots.push_back(std::move(t));

    const auto& s = j.at("social");
    b.weight_ceiling = s.at("weight_ceiling").get<double>();
    b.weight_seed = s.at("weight_seed").get<uint64_t>();
    std::string rel = s.at("edges").get<std::string>();
    b.social = load_edge_list(dir + "/" + rel);
    assign_weights_uniform(b.social, b.weight_ceiling, b.weight_seed);

    const auto& ic = j.at("interconnect");
    b.p1 = ic.at("p1").get<double>();
    b.p2 = ic.at("p2").get<double>();

    b.interconnection =
        parse_interconnection_csv(read_text(paths.interconnection));
    if (std::filesystem::exists(paths.awareness))
      b.awareness = parse_awareness_text(read_text(paths.awareness));
    b.validate();
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: bad field: ") + e.what());
  }
}

}  // namespace rcf
