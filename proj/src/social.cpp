#include "rcf/social.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rcf/errors.hpp"

namespace rcf {

int SocialGraph::index_of(int user) const {
  auto it = std::lower_bound(users.begin(), users.end(), user);
  if (it == users.end() || *it != user) return -1;
  return static_cast<int>(it - users.begin());
}

bool SocialGraph::weights_assigned() const {
  for (const auto& e : edges)
    if (std::isnan(e.p)) return false;
  return true;
}

void SocialGraph::validate() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.tail == e.head) throw ConfigError("social: self-loop");
    if (index_of(e.tail) < 0 || index_of(e.head) < 0)
      throw ConfigError("social: edge endpoint not a listed user");
    if (!seen.insert({e.tail, e.head}).second)
      throw ConfigError("social: duplicate directed edge");
    if (!std::isnan(e.p) && (e.p < 0.0 || e.p > 1.0))
      throw ConfigError("social: edge probability outside [0,1]");
  }
}

SocialGraph social_from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::set<std::pair<int, int>> undirected;
  for (auto [a, b] : pairs) {
    if (a == b) throw ConfigError("social: self-loop interaction");
    undirected.insert({std::min(a, b), std::max(a, b)});
  }
  SocialGraph g;
  std::set<int> ids;
  for (auto [a, b] : undirected) {
    ids.insert(a);
    ids.insert(b);
  }
  g.users.assign(ids.begin(), ids.end());
  std::set<std::pair<int, int>> directed;
  for (auto [a, b] : undirected) {
    directed.insert({a, b});
    directed.insert({b, a});
  }
  for (auto [t, h] : directed)
    g.edges.push_back({t, h, std::numeric_limits<double>::quiet_NaN()});
  g.out.assign(g.users.size(), {});
  g.in.assign(g.users.size(), {});
  for (size_t k = 0; k < g.edges.size(); ++k) {
    g.out[g.index_of(g.edges[k].tail)].push_back(static_cast<int>(k));
    g.in[g.index_of(g.edges[k].head)].push_back(static_cast<int>(k));
  }
  return g;
}

SocialGraph load_edge_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("social: cannot open " + path);
  std::vector<std::pair<int, int>> pairs;
  std::string line;
  long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream is(line);
    long a, b;
    if (!(is >> a))
      throw ConfigError("social: parse error at line " + std::to_string(lineno));
    if (!(is >> b))
      throw ConfigError("social: parse error at line " + std::to_string(lineno));
    std::string extra;
    if (is >> extra)
      throw ConfigError("social: trailing tokens at line " + std::to_string(lineno));
    if (a == b)
      throw ConfigError("social: self-loop at line " + std::to_string(lineno));
    pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  return social_from_pairs(pairs);
}

void assign_weights_uniform(SocialGraph& graph, double ceiling, uint64_t seed) {
  if (ceiling < 0.0 || ceiling > 1.0)
    throw ConfigError("social: weight ceiling outside [0,1]");
  Rng rng(derive_seed(seed, Stream::EdgeWeights, 0));
  for (auto& e : graph.edges) e.p = ceiling * rng.next_double();
}

SocialGraph synthetic_social(int nodes, int edges_per_node, uint64_t seed) {
  if (nodes < 2 || edges_per_node < 1)
    throw ConfigError("social: synthetic graph needs >= 2 nodes, >= 1 edge each");
  Rng rng(derive_seed(seed, Stream::SocialGen, 0));
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> endpoint_pool{0};  // node repeated once per incident edge
  for (int i = 1; i < nodes; ++i) {
    int k = std::min(i, edges_per_node);
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < k) {
      int t = endpoint_pool[rng.next_below(endpoint_pool.size())];
      targets.insert(t);
    }
    for (int t : targets) {
      pairs.push_back({t, i});
      endpoint_pool.push_back(t);
      endpoint_pool.push_back(i);
    }
  }
  return social_from_pairs(pairs);
}

void AwarenessProfile::validate() const {
  for (const auto& [user, wv] : w) {
    (void)user;
    if (!(wv >= 0.0 && wv <= 1.0))
      throw ConfigError("awareness: value outside [0,1]");
  }
}

std::string awareness_text(const AwarenessProfile& profile) {
  std::map<int, double> sorted(profile.w.begin(), profile.w.end());
  std::ostringstream os;
  for (const auto& [user, wv] : sorted) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", wv);
    os << user << '=' << buf << '\n';
  }
  return os.str();
}

AwarenessProfile parse_awareness_text(const std::string& text) {
  AwarenessProfile out;
  std::istringstream is(text);
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("awareness: missing '=' at line " + std::to_string(lineno));
    try {
      int user = std::stoi(line.substr(0, eq));
      double wv = std::stod(line.substr(eq + 1));
      if (out.w.count(user))
        throw ConfigError("awareness: duplicate user at line " +
                          std::to_string(lineno));
      out.w[user] = wv;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("awareness: parse error at line " + std::to_string(lineno));
    }
  }
  out.validate();
  return out;
}

void Interconnection::link(int device, int user) {
  if (user_of_device.count(device) || device_of_user.count(user))
    throw ConfigError("interconnection: endpoint already linked");
  user_of_device[device] = user;
  device_of_user[user] = device;
}

std::string interconnection_csv(const Interconnection& ic) {
  std::ostringstream os;
  os << "# rcf-interconnection-v1\n";
  os << "device_id,user_id\n";
  for (const auto& [dev, user] : ic.user_of_device)
    os << dev << ',' << user << '\n';
  return os.str();
}

Interconnection parse_interconnection_csv(const std::string& text) {
  Interconnection ic;
  std::istringstream is(text);
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line == "device_id,user_id" || (line.size() > 1 && line.back() == '\r' &&
                                        line.substr(0, line.size() - 1) ==
                                            "device_id,user_id"))
      continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("interconnection: bad row at line " +
                        std::to_string(lineno));
    try {
      ic.link(std::stoi(line.substr(0, comma)),
              std::stoi(line.substr(comma + 1)));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("interconnection: parse error at line " +
                        std::to_string(lineno));
    }
  }
  return ic;
}

namespace {

// sorted ids, minus anything already linked
template <typename Assigned>
std::vector<int> unassigned_of(const std::vector<int>& candidates,
                               const Assigned& taken) {
  std::vector<int> out;
  for (int c : candidates)
    if (!taken.count(c)) out.push_back(c);
  return out;
}

}  // namespace

Interconnection generate_interconnection(const CellularTopology& topo,
                                         const SocialGraph& graph, double p1,
                                         double p2, uint64_t seed) {
  if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1)
    throw ConfigError("interconnection: probabilities outside [0,1]");
  auto adj = d2d_neighbors(topo);
  std::vector<int> devices;
  for (const auto& d : topo.devices)
    if (d.d2d_enabled()) devices.push_back(d.id);
  std::sort(devices.begin(), devices.end());
  if (devices.size() > graph.users.size())
    throw ConfigError("interconnection: more d2d devices than users");

  std::vector<int> pool = graph.users;  // stays sorted; shrinks as users link
  auto take_user = [&pool](int user) {
    auto it = std::lower_bound(pool.begin(), pool.end(), user);
    pool.erase(it);
  };
  auto social_neighbors = [&graph](int user) {
    std::vector<int> out;
    int ui = graph.index_of(user);
    for (int e : graph.out[ui]) out.push_back(graph.edges[e].head);
    return out;  // already ascending: canonical edge order
  };

  Interconnection ic;
  Rng rng(derive_seed(seed, Stream::Interconnect, 0));

  // one extra hop from (from_dev, from_user); reports the pair it linked
  auto hop = [&](int from_dev, int from_user, int* dev_out,
                 int* user_out) -> bool {
    auto dcand = unassigned_of(adj.at(from_dev), ic.user_of_device);
    auto ucand = unassigned_of(social_neighbors(from_user), ic.device_of_user);
    if (dcand.empty() || ucand.empty()) return false;
    int d = dcand[rng.next_below(dcand.size())];
    int u = ucand[rng.next_below(ucand.size())];
    ic.link(d, u);
    ic.hop_links++;
    take_user(u);
    if (dev_out) *dev_out = d;
    if (user_out) *user_out = u;
    return true;
  };

  for (int i : devices) {
    if (ic.user_of_device.count(i)) continue;  // claimed by an earlier hop
    int v = pool[rng.next_below(pool.size())];
    ic.link(i, v);
    ic.primary_links++;
    take_user(v);
    if (rng.next_double() >= p1) continue;  // coin drawn for every device
    int ip = -1, vp = -1;
    if (!hop(i, v, &ip, &vp)) continue;
    if (rng.next_double() >= p2) continue;  // coin drawn only after a success
    hop(ip, vp, nullptr, nullptr);
  }
  return ic;
}

CascadeOutcome simulate_ic_with_draws(const SocialGraph& graph,
                                      const std::vector<int>& seeds,
                                      const AwarenessProfile& awareness,
                                      const std::vector<double>& edge_draws) {
  if (edge_draws.size() != graph.edges.size())
    throw ConfigError("cascade: one draw per directed edge required");
  if (!graph.weights_assigned())
    throw ConfigError("cascade: edge weights not assigned");

  std::vector<char> active(graph.users.size(), 0);
  std::vector<int> frontier;
  for (int s : seeds) {
    int si = graph.index_of(s);
    if (si < 0) throw ConfigError("cascade: unknown seed user");
    if (!active[si]) {
      active[si] = 1;
      frontier.push_back(si);
    }
  }

  CascadeOutcome out;
  int cap = static_cast<int>(graph.users.size());
  while (!frontier.empty() && out.rounds < cap) {
    std::vector<int> next;
    for (int ui : frontier) {
      for (int e : graph.out[ui]) {
        const auto& edge = graph.edges[e];
        int hi = graph.index_of(edge.head);
        if (active[hi]) continue;
        double q = edge.p * (1.0 - awareness.at(edge.head));
        if (edge_draws[e] < q) {
          active[hi] = 1;
          next.push_back(hi);
        }
      }
    }
    if (next.empty()) break;
    ++out.rounds;
    frontier = std::move(next);
  }
  for (size_t ui = 0; ui < active.size(); ++ui)
    if (active[ui]) out.activated.push_back(graph.users[ui]);
  return out;
}

CascadeOutcome simulate_ic(const SocialGraph& graph,
                           const std::vector<int>& seeds,
                           const AwarenessProfile& awareness, Rng& rng) {
  std::vector<double> draws(graph.edges.size());
  for (auto& d : draws) d = rng.next_double();
  return simulate_ic_with_draws(graph, seeds, awareness, draws);
}

InfluenceEstimate estimate_influence(
    const SocialGraph& graph, const std::vector<int>& seeds,
    const std::unordered_map<int, double>* criticality,
    const AwarenessProfile& awareness, int trials, uint64_t seed) {
  if (trials < 1) throw ConfigError("influence: trials must be >= 1");
  auto weight = [&](int user) {
    if (!criticality) return 1.0;
    auto it = criticality->find(user);
    return it == criticality->end() ? 0.0 : it->second;
  };
  std::vector<double> xs(trials);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, Stream::InfluenceTrial, t));
    CascadeOutcome c = simulate_ic(graph, seeds, awareness, rng);
    double x = 0;
    for (int u : c.activated) x += weight(u);
    xs[t] = x;
  }
  InfluenceEstimate est;
  est.trials = trials;
  for (double x : xs) est.mean += x;
  est.mean /= trials;
  if (trials > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - est.mean) * (x - est.mean);
    est.stderr_ = std::sqrt(ss / (static_cast<double>(trials) * (trials - 1)));
  }
  return est;
}

double exact_influence_small(const SocialGraph& graph,
                             const std::vector<int>& seeds,
                             const std::unordered_map<int, double>* criticality,
                             const AwarenessProfile& awareness) {
  const size_t m = graph.edges.size();
  if (m > 22) throw OracleCapError("influence oracle: too many edges");
  if (!graph.weights_assigned())
    throw ConfigError("influence oracle: edge weights not assigned");
  auto weight = [&](int user) {
    if (!criticality) return 1.0;
    auto it = criticality->find(user);
    return it == criticality->end() ? 0.0 : it->second;
  };
  std::vector<double> q(m);
  std::vector<int> tail_idx(m), head_idx(m);
  for (size_t e = 0; e < m; ++e) {
    q[e] = graph.edges[e].p * (1.0 - awareness.at(graph.edges[e].head));
    tail_idx[e] = graph.index_of(graph.edges[e].tail);
    head_idx[e] = graph.index_of(graph.edges[e].head);
  }
  std::vector<int> seed_idx;
  for (int s : seeds) {
    int si = graph.index_of(s);
    if (si < 0) throw ConfigError("influence oracle: unknown seed user");
    seed_idx.push_back(si);
  }

  double total = 0;
  const uint64_t worlds = 1ull << m;
  std::vector<char> active(graph.users.size());
  std::vector<int> stack;
  for (uint64_t mask = 0; mask < worlds; ++mask) {
    double prob = 1.0;
    for (size_t e = 0; e < m && prob > 0; ++e)
      prob *= (mask >> e & 1) ? q[e] : 1.0 - q[e];
    if (prob == 0) continue;
    std::fill(active.begin(), active.end(), 0);
    stack.clear();
    for (int si : seed_idx)
      if (!active[si]) {
        active[si] = 1;
        stack.push_back(si);
      }
    while (!stack.empty()) {
      int ui = stack.back();
      stack.pop_back();
      for (int e : graph.out[ui]) {
        if (!(mask >> e & 1)) continue;
        if (!active[head_idx[e]]) {
          active[head_idx[e]] = 1;
          stack.push_back(head_idx[e]);
        }
      }
    }
    double value = 0;
    for (size_t ui = 0; ui < active.size(); ++ui)
      if (active[ui]) value += weight(graph.users[ui]);
    total += prob * value;
  }
  return total;
}

}  // namespace rcf
