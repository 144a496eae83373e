#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcf/cellular.hpp"
#include "rcf/social.hpp"

namespace rcf {

// everything one experiment needs, in memory
struct ScenarioBundle {
  std::vector<CellularTopology> snapshots;  // usually one
  double beta = 1.0;
  SocialGraph social;  // weights assigned
  Interconnection interconnection;
  AwarenessProfile awareness;
  uint64_t master_seed = 0;
  // provenance of the social weights, so files can rebuild them exactly
  double weight_ceiling = 0.1;
  uint64_t weight_seed = 0;
  // interconnection probabilities the bundle was generated with
  double p1 = kStadiumPreset.p1;
  double p2 = kStadiumPreset.p2;

  const CellularTopology& topo() const;  // first snapshot
  void validate() const;
};

// devices placed uniformly in the cell: ids 0.., roles in blocks
// (cellular requesters, then d2d requesters, then relays)
CellularTopology generate_topology(int cellular_requesters, int d2d_requesters,
                                   int relays, uint64_t seed,
                                   CellularTopology base = {});

struct GenerateOptions {
  int cellular_requesters = 20;
  int d2d_requesters = 30;
  int relays = 60;
  double beta = 1.0;
  double p1 = kStadiumPreset.p1;
  double p2 = kStadiumPreset.p2;
  std::string social_edge_file;  // empty -> synthetic graph below
  int synthetic_nodes = 4039;
  int synthetic_edges_per_node = 22;
  double weight_ceiling = 0.1;
  uint64_t seed = 0;
  CellularTopology base;  // cell and wireless parameter block
};

// one master seed drives positions, weights, and the interconnection
ScenarioBundle generate_scenario(const GenerateOptions& opt);

// fixed member file names inside a scenario directory
struct ScenarioPaths {
  std::string json, social, interconnection, awareness;
};
ScenarioPaths scenario_paths(const std::string& dir);

// writes scenario.json + social_edges.txt + interconnection.csv (+
// awareness.txt when any user carries awareness); single snapshot only
void write_scenario(const std::string& dir, const ScenarioBundle& bundle);

ScenarioBundle load_scenario(const std::string& dir);

}  // namespace rcf
