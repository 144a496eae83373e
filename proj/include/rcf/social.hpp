#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcf/cellular.hpp"
#include "rcf/random.hpp"

namespace rcf {

// directed social graph; two opposite edges per undirected interaction
struct SocialGraph {
  struct Edge {
    int tail = -1, head = -1;
    double p = std::numeric_limits<double>::quiet_NaN();  // unassigned
  };
  std::vector<int> users;   // sorted unique ids
  std::vector<Edge> edges;  // canonical order: ascending (tail, head)
  std::vector<std::vector<int>> out, in;  // user index -> edge ids

  int index_of(int user) const;  // -1 when absent
  bool weights_assigned() const;
  void validate() const;
};

// whitespace-separated id pairs, one undirected interaction per line,
// '#' comments skipped, duplicate pairs folded
SocialGraph load_edge_list(const std::string& path);
SocialGraph social_from_pairs(const std::vector<std::pair<int, int>>& pairs);

// independent U(0, ceiling) weight per directed edge, in canonical order
void assign_weights_uniform(SocialGraph& graph, double ceiling, uint64_t seed);

// preferential-attachment stand-in for the real interaction data set
SocialGraph synthetic_social(int nodes, int edges_per_node, uint64_t seed);

struct AwarenessProfile {
  std::unordered_map<int, double> w;  // user -> W_v, absent = 0
  double at(int user) const {
    auto it = w.find(user);
    return it == w.end() ? 0.0 : it->second;
  }
  void validate() const;
};

std::string awareness_text(const AwarenessProfile& profile);
AwarenessProfile parse_awareness_text(const std::string& text);

// one-to-one partial mapping between d2d devices and users
struct Interconnection {
  std::map<int, int> user_of_device;
  std::map<int, int> device_of_user;
  // how the generator produced each link: own-iteration draw vs. hop
  int primary_links = 0;
  int hop_links = 0;
  void link(int device, int user);  // rejects reuse of either endpoint
};

std::string interconnection_csv(const Interconnection& ic);
Interconnection parse_interconnection_csv(const std::string& text);

struct InterconnectPreset {
  double p1 = 0, p2 = 0;
};
inline constexpr InterconnectPreset kStadiumPreset{0.7, 0.4};
inline constexpr InterconnectPreset kMallPreset{0.9, 0.6};

// couple each d2d device to a user, then with probability p1 pair one
// unassigned d2d neighbor with an unassigned social neighbor, and with
// probability p2 extend that one more hop; collisions skip, never overwrite
Interconnection generate_interconnection(const CellularTopology& topo,
                                         const SocialGraph& graph, double p1,
                                         double p2, uint64_t seed);

struct CascadeOutcome {
  std::vector<int> activated;  // sorted user ids, seeds included
  int rounds = 0;
};

// independent-cascade via live edges: edge (u,v) is live when its uniform
// draw falls under p(u,v)*(1 - W_v); draws indexed by canonical edge order
CascadeOutcome simulate_ic_with_draws(const SocialGraph& graph,
                                      const std::vector<int>& seeds,
                                      const AwarenessProfile& awareness,
                                      const std::vector<double>& edge_draws);
CascadeOutcome simulate_ic(const SocialGraph& graph,
                           const std::vector<int>& seeds,
                           const AwarenessProfile& awareness, Rng& rng);

struct InfluenceEstimate {
  double mean = 0;
  double stderr_ = 0;
  int trials = 0;
};

// Monte Carlo E[sum of criticality over activated users]; null criticality
// weights every user 1 (plain influence spread)
InfluenceEstimate estimate_influence(
    const SocialGraph& graph, const std::vector<int>& seeds,
    const std::unordered_map<int, double>* criticality,
    const AwarenessProfile& awareness, int trials, uint64_t seed);

// exact expectation by enumerating every live-edge world; |E| capped
double exact_influence_small(const SocialGraph& graph,
                             const std::vector<int>& seeds,
                             const std::unordered_map<int, double>* criticality,
                             const AwarenessProfile& awareness);

}  // namespace rcf
