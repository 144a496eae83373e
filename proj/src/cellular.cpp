#include "rcf/cellular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

#include "rcf/errors.hpp"
#include "rcf/random.hpp"

namespace rcf {

double CellularTopology::noise_watts() const {
  return std::pow(10.0, (wireless.noise_dbm_per_hz - 30.0) / 10.0);
}

const Device& CellularTopology::device(int id) const {
  for (const auto& d : devices)
    if (d.id == id) return d;
  throw ConfigError("topology: unknown device id " + std::to_string(id));
}

void CellularTopology::validate() const {
  if (cell_width <= 0 || cell_height <= 0 || d2d_range <= 0 ||
      wireless.bandwidth_hz <= 0 || wireless.path_loss_exponent <= 0 ||
      wireless.bs_power_w <= 0 || wireless.device_power_w <= 0)
    throw ConfigError("topology: non-positive dimension or wireless parameter");
  std::vector<int> ids;
  for (const auto& d : devices) {
    ids.push_back(d.id);
    const double slack = 1e-9;
    if (d.x < -slack || d.x > cell_width + slack || d.y < -slack ||
        d.y > cell_height + slack)
      throw ConfigError("topology: device " + std::to_string(d.id) +
                        " outside the cell rectangle");
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ConfigError("topology: duplicate device id");
}

namespace {

double dist(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

double device_dist(const CellularTopology& t, int a, int b) {
  const Device& da = t.device(a);
  const Device& db = t.device(b);
  return dist(da.x, da.y, db.x, db.y);
}

}  // namespace

double cellular_snr(const CellularTopology& topo, const Device& dev,
                    double gain) {
  double d = dist(topo.bs_x, topo.bs_y, dev.x, dev.y);
  if (d == 0.0)
    throw ConfigError("snr: device " + std::to_string(dev.id) +
                      " coincides with the base station");
  const auto& w = topo.wireless;
  return w.bs_power_w * std::pow(d, -w.path_loss_exponent) * gain /
         topo.noise_watts();
}

double d2d_sinr(const CellularTopology& topo, LinkRef link,
                const std::vector<LinkRef>& concurrent, double signal_gain,
                const std::vector<double>* concurrent_gains) {
  const auto& w = topo.wireless;
  double d = device_dist(topo, link.tx, link.rx);
  if (d == 0.0)
    throw ConfigError("sinr: zero-length link " + std::to_string(link.tx) +
                      "->" + std::to_string(link.rx));
  double signal =
      w.device_power_w * std::pow(d, -w.path_loss_exponent) * signal_gain;
  const Device& rx = topo.device(link.rx);
  double interference = 0;
  for (size_t i = 0; i < concurrent.size(); ++i) {
    const LinkRef& h = concurrent[i];
    if (h.tx == link.tx && h.rx == link.rx) continue;
    const Device& htx = topo.device(h.tx);
    double dh = dist(htx.x, htx.y, rx.x, rx.y);
    double g = concurrent_gains ? (*concurrent_gains)[i] : 1.0;
    interference +=
        w.device_power_w * std::pow(dh, -w.path_loss_exponent) * g;
  }
  return signal / (topo.noise_watts() + interference);
}

double unit_capacity(double snr_or_sinr) { return std::log2(1.0 + snr_or_sinr); }

bool links_interfere(const CellularTopology& topo, LinkRef a, LinkRef b,
                     double beta) {
  return device_dist(topo, a.tx, b.tx) <= beta * topo.d2d_range;
}

std::vector<int> interference_set(const CellularTopology& topo,
                                  const std::vector<LinkRef>& links, int e,
                                  double beta) {
  std::vector<int> out;
  for (size_t i = 0; i < links.size(); ++i)
    if (links_interfere(topo, links[i], links[e], beta))
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> concurrent_set(const CellularTopology& topo,
                                const std::vector<LinkRef>& links, int e,
                                double beta,
                                const std::vector<double>* gains) {
  const auto& w = topo.wireless;
  const double n0 = topo.noise_watts();
  const double alpha = w.path_loss_exponent;
  const double p = w.device_power_w;
  const int n = static_cast<int>(links.size());

  std::vector<double> txx(n), txy(n), rxx(n), rxy(n), g(n, 1.0), sig(n);
  for (int i = 0; i < n; ++i) {
    const Device& t = topo.device(links[i].tx);
    const Device& r = topo.device(links[i].rx);
    txx[i] = t.x; txy[i] = t.y; rxx[i] = r.x; rxy[i] = r.y;
    if (gains) g[i] = (*gains)[i];
    double d = dist(t.x, t.y, r.x, r.y);
    if (d == 0.0)
      throw ConfigError("sinr: zero-length link in concurrent-set build");
    sig[i] = p * std::pow(d, -alpha) * g[i];
  }
  auto inter_power = [&](int from, int to) {
    double d = dist(txx[from], txy[from], rxx[to], rxy[to]);
    return p * std::pow(d, -alpha) * g[from];
  };
  auto rate = [&](int i, double ipow) {
    return std::log2(1.0 + sig[i] / (n0 + ipow));
  };

  std::vector<int> members{e};
  std::vector<double> ipow{0.0};  // interference seen by each member
  std::vector<char> eligible(n, 1);
  eligible[e] = 0;
  const double range = beta * topo.d2d_range;
  for (int i = 0; i < n; ++i)
    if (eligible[i] && dist(txx[i], txy[i], txx[e], txy[e]) <= range)
      eligible[i] = 0;

  while (true) {
    int best = -1;
    double best_drop = -1.0;
    for (int c = 0; c < n; ++c) {
      if (!eligible[c]) continue;
      double drop = 0;
      for (size_t m = 0; m < members.size(); ++m) {
        int gm = members[m];
        drop += rate(gm, ipow[m]) - rate(gm, ipow[m] + inter_power(c, gm));
      }
      if (drop > best_drop) {  // strict: ascending scan keeps the lowest id
        best_drop = drop;
        best = c;
      }
    }
    if (best < 0) break;
    double bipow = 0;
    for (size_t m = 0; m < members.size(); ++m) {
      ipow[m] += inter_power(best, members[m]);
      bipow += inter_power(members[m], best);
    }
    members.push_back(best);
    ipow.push_back(bipow);
    eligible[best] = 0;
    for (int i = 0; i < n; ++i)
      if (eligible[i] &&
          dist(txx[i], txy[i], txx[best], txy[best]) <= range)
        eligible[i] = 0;
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::unordered_map<int, std::vector<int>> d2d_neighbors(
    const CellularTopology& topo) {
  std::vector<const Device*> d2d;
  for (const auto& d : topo.devices)
    if (d.d2d_enabled()) d2d.push_back(&d);
  std::sort(d2d.begin(), d2d.end(),
            [](const Device* a, const Device* b) { return a->id < b->id; });
  std::unordered_map<int, std::vector<int>> adj;
  for (const Device* d : d2d) adj[d->id];
  for (size_t i = 0; i < d2d.size(); ++i)
    for (size_t j = i + 1; j < d2d.size(); ++j) {
      if (dist(d2d[i]->x, d2d[i]->y, d2d[j]->x, d2d[j]->y) <=
          topo.d2d_range) {
        adj[d2d[i]->id].push_back(d2d[j]->id);
        adj[d2d[j]->id].push_back(d2d[i]->id);
      }
    }
  for (auto& [id, list] : adj) std::sort(list.begin(), list.end());
  return adj;
}

int ModifiedFlowGraph::node_of_device(int device_id, NodeKind kind) const {
  for (const auto& n : nodes)
    if (n.device_id == device_id && n.kind == kind) return n.id;
  throw ConfigError("graph: no node of requested kind for device " +
                    std::to_string(device_id));
}

ModifiedFlowGraph build_modified_graph(const CellularTopology& topo,
                                       double beta) {
  topo.validate();
  ModifiedFlowGraph g;
  g.topo = topo;
  g.beta = beta;

  std::vector<const Device*> devs;
  for (const auto& d : topo.devices) devs.push_back(&d);
  std::sort(devs.begin(), devs.end(),
            [](const Device* a, const Device* b) { return a->id < b->id; });

  auto add_node = [&](NodeKind kind, int device_id) {
    FlowNode n;
    n.id = static_cast<int>(g.nodes.size());
    n.kind = kind;
    n.device_id = device_id;
    g.nodes.push_back(n);
    return n.id;
  };

  g.bs_node = add_node(NodeKind::Bs, -1);
  std::unordered_map<int, int> plain, split_in, split_out;
  for (const Device* d : devs) {
    if (d->d2d_enabled()) {
      split_in[d->id] = add_node(NodeKind::SplitIn, d->id);
      split_out[d->id] = add_node(NodeKind::SplitOut, d->id);
    } else {
      plain[d->id] = add_node(NodeKind::Plain, d->id);
    }
  }
  g.sink_node = add_node(NodeKind::Sink, -1);

  auto add_edge = [&](int tail, int head, EdgeKind kind, int tx, int rx) {
    FlowEdge e;
    e.id = static_cast<int>(g.edges.size());
    e.tail = tail;
    e.head = head;
    e.kind = kind;
    e.tx_device = tx;
    e.rx_device = rx;
    g.edges.push_back(e);
    return e.id;
  };

  // cellular edges: requesters without D2D get a plain node; relays are
  // served upstream of their removable edge, D2D requesters downstream
  for (const Device* d : devs) {
    int head;
    if (!d->d2d_enabled()) head = plain[d->id];
    else if (d->role == Role::Relay) head = split_in[d->id];
    else head = split_out[d->id];
    g.cellular_edges.push_back(
        add_edge(g.bs_node, head, EdgeKind::Cellular, -1, d->id));
  }

  // D2D edges: only relays transmit (requesters have no data to forward)
  std::vector<LinkRef> d2d_links;
  for (const Device* t : devs) {
    if (t->role != Role::Relay) continue;
    for (const Device* r : devs) {
      if (r->id == t->id || !r->d2d_enabled()) continue;
      if (dist(t->x, t->y, r->x, r->y) > topo.d2d_range) continue;
      g.d2d_edges.push_back(add_edge(split_out[t->id], split_in[r->id],
                                     EdgeKind::D2d, t->id, r->id));
      d2d_links.push_back({t->id, r->id});
    }
  }

  for (const Device* d : devs) {
    if (!d->d2d_enabled()) continue;
    int id = add_edge(split_in[d->id], split_out[d->id], EdgeKind::Removable,
                      d->id, d->id);
    g.removable_edges.push_back(id);
    g.removable_of_device[d->id] = id;
  }

  for (const Device* d : devs) {
    if (!d->requester()) continue;
    int tail = d->d2d_enabled() ? split_out[d->id] : plain[d->id];
    g.virtual_edges.push_back(
        add_edge(tail, g.sink_node, EdgeKind::Virtual, -1, -1));
  }
  g.return_edge = add_edge(g.sink_node, g.bs_node, EdgeKind::Virtual, -1, -1);
  g.virtual_edges.push_back(g.return_edge);

  // fading gains, sampled per finite-capacity edge in id order
  for (auto& e : g.edges) {
    if (e.kind != EdgeKind::Cellular && e.kind != EdgeKind::D2d) continue;
    if (topo.wireless.rayleigh_fading) {
      Rng r(derive_seed(topo.wireless.fading_seed, Stream::Fading,
                        static_cast<uint64_t>(e.id)));
      e.gain = r.next_exp();
    }
  }

  // interference sets: cellular links all share the BS transmitter
  for (int id : g.cellular_edges) g.edges[id].interference = g.cellular_edges;
  for (size_t a = 0; a < d2d_links.size(); ++a) {
    auto& ia = g.edges[g.d2d_edges[a]].interference;
    for (size_t b = 0; b < d2d_links.size(); ++b)
      if (links_interfere(topo, d2d_links[a], d2d_links[b], beta))
        ia.push_back(g.d2d_edges[b]);
  }

  // capacities
  for (int id : g.cellular_edges) {
    auto& e = g.edges[id];
    e.capacity =
        unit_capacity(cellular_snr(topo, topo.device(e.rx_device), e.gain));
  }
  std::vector<double> gains(d2d_links.size(), 1.0);
  for (size_t a = 0; a < d2d_links.size(); ++a)
    gains[a] = g.edges[g.d2d_edges[a]].gain;
  for (size_t a = 0; a < d2d_links.size(); ++a) {
    auto& e = g.edges[g.d2d_edges[a]];
    std::vector<int> L =
        concurrent_set(topo, d2d_links, static_cast<int>(a), beta, &gains);
    std::vector<LinkRef> conc;
    std::vector<double> cg;
    for (int m : L) {
      conc.push_back(d2d_links[m]);
      cg.push_back(gains[m]);
    }
    e.capacity = unit_capacity(
        d2d_sinr(topo, d2d_links[a], conc, gains[a], &cg));
  }

  g.out_edges.assign(g.nodes.size(), {});
  g.in_edges.assign(g.nodes.size(), {});
  for (const auto& e : g.edges) {
    g.out_edges[e.tail].push_back(e.id);
    g.in_edges[e.head].push_back(e.id);
  }
  g.removed.assign(g.edges.size(), 0);

  // sanity: every requester must be reachable from the BS
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<int> q{g.bs_node};
  seen[g.bs_node] = 1;
  while (!q.empty()) {
    int n = q.front();
    q.pop_front();
    for (int eid : g.out_edges[n]) {
      int h = g.edges[eid].head;
      if (!seen[h]) {
        seen[h] = 1;
        q.push_back(h);
      }
    }
  }
  for (const Device* d : devs) {
    if (!d->requester()) continue;
    int n = d->d2d_enabled() ? split_out[d->id] : plain[d->id];
    if (!seen[n])
      throw ConfigError("graph: requester " + std::to_string(d->id) +
                        " unreachable from the base station");
  }
  return g;
}

ModifiedFlowGraph apply_disable(const ModifiedFlowGraph& graph,
                                const std::vector<int>& device_ids) {
  ModifiedFlowGraph g = graph;
  for (int id : device_ids) {
    auto it = g.removable_of_device.find(id);
    if (it == g.removable_of_device.end())
      throw ConfigError("disable: device " + std::to_string(id) +
                        " has no removable edge");
    g.removed[it->second] = 1;
  }
  return g;
}

std::string graph_dump(const ModifiedFlowGraph& graph) {
  std::ostringstream os;
  os << "# rcf-graph-v1\n";
  auto kind_name = [](EdgeKind k) {
    switch (k) {
      case EdgeKind::Cellular: return "cellular";
      case EdgeKind::D2d: return "d2d";
      case EdgeKind::Removable: return "removable";
      case EdgeKind::Virtual: return "virtual";
    }
    return "?";
  };
  for (const auto& e : graph.edges) {
    os << e.tail << ' ' << e.head << ' ' << kind_name(e.kind) << ' ';
    if (e.capacity == kInf) os << "inf";
    else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", e.capacity);
      os << buf;
    }
    if (graph.removed[e.id]) os << " removed";
    os << '\n';
  }
  return os.str();
}

}  // namespace rcf
