#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcf/lp.hpp"  // kInf

namespace rcf {

enum class Role { CellularRequester, D2dRequester, Relay };

struct Device {
  int id = -1;
  double x = 0, y = 0;
  Role role = Role::CellularRequester;
  bool d2d_enabled() const { return role != Role::CellularRequester; }
  bool requester() const { return role != Role::Relay; }
};

struct WirelessParams {
  double bandwidth_hz = 1e5;        // W
  double bs_power_w = 100.0;        // p_B
  double device_power_w = 10.0;     // p_j
  double path_loss_exponent = 3.0;  // alpha
  double noise_dbm_per_hz = -174.0;
  bool rayleigh_fading = false;  // per-link |m0|^2 ~ Exp(1) when on
  uint64_t fading_seed = 0;
};

struct CellularTopology {
  double cell_width = 50.0, cell_height = 50.0;
  double bs_x = 0.0, bs_y = 0.0;  // lower-left corner by default
  double d2d_range = 15.0;        // d0
  WirelessParams wireless;
  std::vector<Device> devices;

  // noise power over the 1 Hz reference bandwidth, in watts
  double noise_watts() const;
  const Device& device(int id) const;
  void validate() const;
};

// gamma_{B,i}; gain is the sampled |m0|^2 (1 when deterministic)
double cellular_snr(const CellularTopology& topo, const Device& dev,
                    double gain = 1.0);

// a directed physical link between two devices, by device id
struct LinkRef {
  int tx = -1;
  int rx = -1;
};

// SINR of `link` while every other member of `concurrent` transmits.
// Interference terms use each member's own fading gain when provided
// (parallel to `concurrent`); the link itself is skipped if present.
double d2d_sinr(const CellularTopology& topo, LinkRef link,
                const std::vector<LinkRef>& concurrent, double signal_gain = 1.0,
                const std::vector<double>* concurrent_gains = nullptr);

double unit_capacity(double snr_or_sinr);  // log2(1 + gamma), b/s per Hz

// Interference relation between two same-band links: transmitter-to-
// transmitter distance at most beta*d0. Symmetric by construction.
bool links_interfere(const CellularTopology& topo, LinkRef a, LinkRef b,
                     double beta);

// I(e) over an edge-id-indexed list of links; always contains e itself.
std::vector<int> interference_set(const CellularTopology& topo,
                                  const std::vector<LinkRef>& links, int e,
                                  double beta);

// L(e): greedy concurrent-transmission set. Starts at {e}; repeatedly adds
// the link (not interfering with any member) whose activation drops the
// members' aggregate rate the most, lowest id on ties, until none is left.
std::vector<int> concurrent_set(const CellularTopology& topo,
                                const std::vector<LinkRef>& links, int e,
                                double beta,
                                const std::vector<double>* gains = nullptr);

// undirected D2D adjacency among d2d-enabled devices within d0 (G^d)
std::unordered_map<int, std::vector<int>> d2d_neighbors(
    const CellularTopology& topo);

enum class NodeKind { Bs, Sink, Plain, SplitIn, SplitOut };
enum class EdgeKind { Cellular, D2d, Removable, Virtual };

struct FlowNode {
  int id = -1;
  NodeKind kind = NodeKind::Plain;
  int device_id = -1;  // -1 for BS/sink
};

struct FlowEdge {
  int id = -1;
  int tail = -1, head = -1;  // node ids
  EdgeKind kind = EdgeKind::Virtual;
  double capacity = kInf;  // c(e), b/s per Hz; kInf for removable/virtual
  int tx_device = -1;      // -1 when the transmitter is the BS
  int rx_device = -1;
  double gain = 1.0;              // sampled fading |m0|^2
  std::vector<int> interference;  // I(e) as sorted edge ids; empty if infinite
};

struct ModifiedFlowGraph {
  CellularTopology topo;
  double beta = 1.0;
  std::vector<FlowNode> nodes;
  std::vector<FlowEdge> edges;
  int bs_node = -1, sink_node = -1, return_edge = -1;
  std::vector<int> cellular_edges, d2d_edges, removable_edges, virtual_edges;
  std::unordered_map<int, int> removable_of_device;  // device id -> edge id
  std::vector<std::vector<int>> out_edges, in_edges;
  std::vector<char> removed;  // per edge; set only on removable edges

  int node_of_device(int device_id, NodeKind kind) const;
};

ModifiedFlowGraph build_modified_graph(const CellularTopology& topo,
                                       double beta = 1.0);

// graph view with the given devices' removable edges deleted (z fixed to 1)
ModifiedFlowGraph apply_disable(const ModifiedFlowGraph& graph,
                                const std::vector<int>& device_ids);

// plain-text edge list (tail, head, kind, capacity) for debugging
std::string graph_dump(const ModifiedFlowGraph& graph);

}  // namespace rcf
