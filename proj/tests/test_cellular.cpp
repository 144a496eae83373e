#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rcf/cellular.hpp"
#include "rcf/errors.hpp"
#include "rcf/random.hpp"

using namespace rcf;

namespace {

CellularTopology base_topo() {
  CellularTopology t;
  return t;  // 50x50 cell, BS at the lower-left corner, stock parameters
}

Device dev(int id, double x, double y, Role r = Role::CellularRequester) {
  Device d;
  d.id = id;
  d.x = x;
  d.y = y;
  d.role = r;
  return d;
}

// step-by-step greedy re-implementation that recomputes every rate with
// d2d_sinr from scratch instead of tracking incremental interference
std::vector<int> greedy_oracle(const CellularTopology& topo,
                               const std::vector<LinkRef>& links, int e,
                               double beta, const std::vector<double>* gains) {
  auto gain_of = [&](int i) { return gains ? (*gains)[i] : 1.0; };
  std::vector<int> S{e};
  auto rate_sum_members = [&](const std::vector<int>& members,
                              const std::vector<int>& transmitting) {
    std::vector<LinkRef> conc;
    std::vector<double> cg;
    for (int o : transmitting) {
      conc.push_back(links[o]);
      cg.push_back(gain_of(o));
    }
    double tot = 0;
    for (int m : members)
      tot += std::log2(1.0 + d2d_sinr(topo, links[m], conc, gain_of(m), &cg));
    return tot;
  };
  while (true) {
    int best = -1;
    double best_drop = -1;
    double base = rate_sum_members(S, S);
    for (int c = 0; c < static_cast<int>(links.size()); ++c) {
      if (std::find(S.begin(), S.end(), c) != S.end()) continue;
      bool clash = false;
      for (int m : S)
        if (links_interfere(topo, links[c], links[m], beta)) clash = true;
      if (clash) continue;
      std::vector<int> with = S;
      with.push_back(c);
      double drop = base - rate_sum_members(S, with);
      if (drop > best_drop) {
        best_drop = drop;
        best = c;
      }
    }
    if (best < 0) break;
    S.push_back(best);
  }
  std::sort(S.begin(), S.end());
  return S;
}

}  // namespace

TEST_CASE("noise power matches the -174 dBm/Hz reference") {
  CellularTopology t = base_topo();
  CHECK(t.noise_watts() == doctest::Approx(std::pow(10.0, -20.4)).epsilon(1e-14));
  CHECK(t.noise_watts() == doctest::Approx(3.9810717055349725e-21).epsilon(1e-14));
}

TEST_CASE("cellular snr reproduces the 50 m corner value") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 50, 0)};
  double snr = cellular_snr(t, t.device(0));
  double expect = 100.0 * std::pow(50.0, -3.0) / std::pow(10.0, -20.4);
  CHECK(snr == doctest::Approx(expect).epsilon(1e-12));
  // worst-case spectral efficiency across the cell
  CHECK(unit_capacity(snr) == doctest::Approx(57.48).epsilon(2e-4));
}

TEST_CASE("snr follows the cubic path-loss law") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 10, 0), dev(1, 20, 0)};
  double near = cellular_snr(t, t.device(0));
  double far = cellular_snr(t, t.device(1));
  CHECK(near / far == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("zero-length paths are rejected") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 0), dev(1, 5, 5), dev(2, 5, 5)};
  CHECK_THROWS_AS(cellular_snr(t, t.device(0)), ConfigError);
  CHECK_THROWS_AS(d2d_sinr(t, {1, 2}, {}), ConfigError);
}

TEST_CASE("interference-free sinr is plain snr and the link skips itself") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 10, Role::Relay), dev(1, 5, 10, Role::D2dRequester)};
  double expect = 10.0 * std::pow(5.0, -3.0) / std::pow(10.0, -20.4);
  CHECK(d2d_sinr(t, {0, 1}, {}) == doctest::Approx(expect).epsilon(1e-12));
  std::vector<LinkRef> self{{0, 1}};
  CHECK(d2d_sinr(t, {0, 1}, self) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("three-link sinr matches hand arithmetic") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 10, Role::Relay), dev(1, 5, 10, Role::D2dRequester),
               dev(2, 30, 10, Role::Relay), dev(3, 35, 10, Role::D2dRequester),
               dev(4, 10, 20, Role::Relay), dev(5, 12, 24, Role::D2dRequester)};
  std::vector<LinkRef> conc{{0, 1}, {2, 3}, {4, 5}};
  double n0 = std::pow(10.0, -20.4);
  double sig = 10.0 * std::pow(5.0, -3.0);
  double i1 = 10.0 * std::pow(25.0, -3.0);                 // tx 2 -> rx 1
  double i2 = 10.0 * std::pow(std::hypot(5.0, 10.0), -3.0);  // tx 4 -> rx 1
  CHECK(d2d_sinr(t, {0, 1}, conc) ==
        doctest::Approx(sig / (n0 + i1 + i2)).epsilon(1e-12));

  SUBCASE("per-link gains scale both signal and interference") {
    std::vector<double> g{0.5, 2.0, 3.0};
    double got = d2d_sinr(t, {0, 1}, conc, 0.5, &g);
    CHECK(got ==
          doctest::Approx(0.5 * sig / (n0 + 2.0 * i1 + 3.0 * i2)).epsilon(1e-12));
  }
}

TEST_CASE("unit capacity at the anchor points") {
  CHECK(unit_capacity(0.0) == 0.0);
  CHECK(unit_capacity(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit_capacity(3.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("interference sets use transmitter distance only") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 0, Role::Relay),  dev(1, 0, 14, Role::D2dRequester),
               dev(2, 10, 0, Role::Relay), dev(3, 10, 14, Role::D2dRequester),
               dev(4, 20, 0, Role::Relay), dev(5, 20, 14, Role::D2dRequester),
               dev(6, 40, 0, Role::Relay), dev(7, 40, 14, Role::D2dRequester)};

  SUBCASE("single link contains itself") {
    std::vector<LinkRef> links{{0, 1}};
    CHECK(interference_set(t, links, 0, 1.0) == std::vector<int>{0});
  }
  SUBCASE("transmitters 10 m apart are mutual members") {
    std::vector<LinkRef> links{{0, 1}, {2, 3}};
    CHECK(interference_set(t, links, 0, 1.0) == std::vector<int>({0, 1}));
    CHECK(interference_set(t, links, 1, 1.0) == std::vector<int>({0, 1}));
  }
  SUBCASE("transmitters at 0, 20, 40 m are isolated") {
    std::vector<LinkRef> links{{0, 1}, {4, 5}, {6, 7}};
    for (int e = 0; e < 3; ++e)
      CHECK(interference_set(t, links, e, 1.0) == std::vector<int>{e});
  }
  SUBCASE("receiver positions are irrelevant") {
    // receivers adjacent, transmitters 40 m apart
    std::vector<LinkRef> links{{0, 3}, {6, 5}};
    CHECK(interference_set(t, links, 0, 1.0) == std::vector<int>{0});
    // beta stretches the radius: 40 <= 3*15
    CHECK(interference_set(t, links, 0, 3.0) == std::vector<int>({0, 1}));
  }
  SUBCASE("symmetry and self-membership on a random instance") {
    Rng rng(77);
    std::vector<Device> ds;
    for (int i = 0; i < 12; ++i)
      ds.push_back(dev(i, 50 * rng.next_double(), 50 * rng.next_double(),
                       Role::Relay));
    t.devices = ds;
    std::vector<LinkRef> links;
    for (int i = 0; i + 1 < 12; i += 2) links.push_back({i, i + 1});
    for (int e = 0; e < static_cast<int>(links.size()); ++e) {
      auto ie = interference_set(t, links, e, 1.0);
      CHECK(std::binary_search(ie.begin(), ie.end(), e));
      for (int o : ie) {
        auto io = interference_set(t, links, o, 1.0);
        CHECK(std::binary_search(io.begin(), io.end(), e));
      }
    }
  }
}

TEST_CASE("concurrent set degenerate shapes") {
  CellularTopology t = base_topo();
  // three links with transmitters within 15 m of each other
  t.devices = {dev(0, 0, 0, Role::Relay),  dev(1, 4, 3, Role::D2dRequester),
               dev(2, 5, 0, Role::Relay),  dev(3, 9, 3, Role::D2dRequester),
               dev(4, 10, 0, Role::Relay), dev(5, 14, 3, Role::D2dRequester)};
  std::vector<LinkRef> links{{0, 1}, {2, 3}, {4, 5}};
  CHECK(concurrent_set(t, links, 0, 1.0) == std::vector<int>{0});
  CHECK(concurrent_set(t, links, 1, 1.0) == std::vector<int>{1});

  // pull the third transmitter out of everyone's radius
  t.devices[4].x = 40;
  t.devices[5].x = 44;
  CHECK(concurrent_set(t, links, 0, 1.0) == std::vector<int>({0, 2}));
  // from link 2 both far links are eligible; tx 1 sits closer to rx 5,
  // causes the bigger drop, and then blocks link 0
  CHECK(concurrent_set(t, links, 2, 1.0) == std::vector<int>({1, 2}));
}

TEST_CASE("concurrent set matches an independent greedy oracle") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 0, Role::Relay),   dev(1, 4, 3, Role::D2dRequester),
               dev(2, 20, 0, Role::Relay),  dev(3, 24, 3, Role::D2dRequester),
               dev(4, 40, 0, Role::Relay),  dev(5, 44, 3, Role::D2dRequester),
               dev(6, 20, 30, Role::Relay), dev(7, 24, 33, Role::D2dRequester)};
  std::vector<LinkRef> links{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  for (int e = 0; e < 4; ++e) {
    auto got = concurrent_set(t, links, e, 1.0);
    auto want = greedy_oracle(t, links, e, 1.0, nullptr);
    CHECK(got == want);
    CHECK(std::binary_search(got.begin(), got.end(), e));
  }

  SUBCASE("randomized instances, with and without fading gains") {
    int checked = 0;
    for (uint64_t seed = 1; seed <= 30; ++seed) {
      Rng rng(seed);
      int ndev = 8 + static_cast<int>(rng.next_below(5)) * 2;
      std::vector<Device> ds;
      for (int i = 0; i < ndev; ++i)
        ds.push_back(dev(i, 50 * rng.next_double(), 50 * rng.next_double(),
                         Role::Relay));
      CellularTopology tt = base_topo();
      tt.devices = ds;
      std::vector<LinkRef> ls;
      std::vector<double> gains;
      for (int i = 0; i + 1 < ndev; i += 2) {
        ls.push_back({i, i + 1});
        gains.push_back(rng.next_exp());
      }
      const std::vector<double>* gp = (seed % 2) ? &gains : nullptr;
      for (int e = 0; e < static_cast<int>(ls.size()); ++e) {
        CHECK(concurrent_set(tt, ls, e, 1.0, gp) ==
              greedy_oracle(tt, ls, e, 1.0, gp));
        ++checked;
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("adding an interferer never raises sinr") {
  CellularTopology t = base_topo();
  Rng rng(5150);
  for (int it = 0; it < 50; ++it) {
    std::vector<Device> ds;
    for (int i = 0; i < 8; ++i)
      ds.push_back(
          dev(i, 50 * rng.next_double(), 50 * rng.next_double(), Role::Relay));
    t.devices = ds;
    std::vector<LinkRef> all{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    std::vector<LinkRef> sub(all.begin(), all.begin() + 3);
    double with = d2d_sinr(t, all[0], all);
    double without = d2d_sinr(t, all[0], sub);
    CHECK(with <= without + 1e-18);
  }
}

TEST_CASE("d2d adjacency is symmetric, sorted, and range-limited") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 0, Role::Relay), dev(1, 10, 0, Role::D2dRequester),
               dev(2, 22, 0, Role::Relay), dev(3, 25, 25),
               dev(4, 10, 10, Role::D2dRequester)};
  auto adj = d2d_neighbors(t);
  CHECK(adj.size() == 4);  // plain cellular requester excluded
  CHECK(adj.at(0) == std::vector<int>({1, 4}));
  CHECK(adj.at(1) == std::vector<int>({0, 2, 4}));
  CHECK(adj.at(2) == std::vector<int>({1}));
  CHECK(adj.at(4) == std::vector<int>({0, 1}));
}

TEST_CASE("graph with no d2d devices degenerates to pure cellular") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 10, 10), dev(1, 20, 20), dev(2, 30, 30)};
  auto g = build_modified_graph(t);
  CHECK(g.cellular_edges.size() == 3);
  CHECK(g.d2d_edges.empty());
  CHECK(g.removable_edges.empty());
  CHECK(g.virtual_edges.size() == 4);  // |R| + 1
  CHECK(g.edges.size() == 7);
  CHECK(g.nodes.size() == 5);  // BS + 3 plain + sink
  CHECK(g.return_edge == static_cast<int>(g.edges.size()) - 1);
  CHECK(g.edges[g.return_edge].tail == g.sink_node);
  CHECK(g.edges[g.return_edge].head == g.bs_node);
}

TEST_CASE("relay plus d2d requester transcribes the construction rules") {
  CellularTopology t = base_topo();
  t.devices = {dev(7, 10, 10, Role::Relay), dev(9, 18, 10, Role::D2dRequester)};
  auto g = build_modified_graph(t);

  CHECK(g.removable_edges.size() == 2);
  CHECK(g.d2d_edges.size() == 1);
  CHECK(g.cellular_edges.size() == 2);
  CHECK(g.virtual_edges.size() == 2);  // one requester + return

  int relay_in = g.node_of_device(7, NodeKind::SplitIn);
  int relay_out = g.node_of_device(7, NodeKind::SplitOut);
  int req_in = g.node_of_device(9, NodeKind::SplitIn);
  int req_out = g.node_of_device(9, NodeKind::SplitOut);

  const auto& d2d = g.edges[g.d2d_edges[0]];
  CHECK(d2d.tail == relay_out);
  CHECK(d2d.head == req_in);
  CHECK(d2d.tx_device == 7);
  CHECK(d2d.rx_device == 9);

  // cellular feeds a relay above its removable edge, a requester below it
  CHECK(g.edges[g.cellular_edges[0]].head == relay_in);
  CHECK(g.edges[g.cellular_edges[1]].head == req_out);
  for (int id : g.cellular_edges) CHECK(g.edges[id].tail == g.bs_node);

  for (int id : g.removable_edges) {
    const auto& e = g.edges[id];
    CHECK(e.capacity == kInf);
    CHECK(e.interference.empty());
  }
  CHECK(g.edges[g.removable_of_device.at(7)].tail == relay_in);
  CHECK(g.edges[g.removable_of_device.at(7)].head == relay_out);
  CHECK(g.edges[g.removable_of_device.at(9)].tail == req_in);
  CHECK(g.edges[g.removable_of_device.at(9)].head == req_out);

  // sink edge leaves the requester's split-out side
  const auto& sinkE = g.edges[g.virtual_edges[0]];
  CHECK(sinkE.tail == req_out);
  CHECK(sinkE.head == g.sink_node);

  // edge ids are laid out cellular, d2d, removable, virtual
  CHECK(g.cellular_edges == std::vector<int>({0, 1}));
  CHECK(g.d2d_edges == std::vector<int>({2}));
  CHECK(g.removable_edges == std::vector<int>({3, 4}));
  CHECK(g.virtual_edges == std::vector<int>({5, 6}));
}

TEST_CASE("relays may chain but requesters never transmit") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 0, 10, Role::Relay), dev(1, 10, 10, Role::Relay),
               dev(2, 20, 10, Role::D2dRequester)};
  auto g = build_modified_graph(t);
  // relay<->relay both directions, relay1->requester; requester transmits nothing
  CHECK(g.d2d_edges.size() == 3);
  for (int id : g.d2d_edges) CHECK(g.edges[id].tx_device != 2);
  std::set<std::pair<int, int>> pairs;
  for (int id : g.d2d_edges)
    pairs.insert({g.edges[id].tx_device, g.edges[id].rx_device});
  CHECK(pairs == std::set<std::pair<int, int>>({{0, 1}, {1, 0}, {1, 2}}));
}

TEST_CASE("full-size deployment produces the expected graph shape") {
  CellularTopology t = base_topo();
  Rng rng(derive_seed(42, Stream::Positions, 0));
  int id = 0;
  auto place = [&](Role r) {
    t.devices.push_back(
        dev(id++, 50 * rng.next_double(), 50 * rng.next_double(), r));
  };
  for (int i = 0; i < 20; ++i) place(Role::CellularRequester);
  for (int i = 0; i < 30; ++i) place(Role::D2dRequester);
  for (int i = 0; i < 60; ++i) place(Role::Relay);
  auto g = build_modified_graph(t);

  CHECK(g.cellular_edges.size() == 110);  // one per device
  CHECK(g.removable_edges.size() == 90);  // one per d2d-enabled device
  CHECK(g.virtual_edges.size() == 51);    // 50 requesters + return
  CHECK(!g.d2d_edges.empty());

  SUBCASE("cellular edges are one fully time-shared band") {
    for (int e : g.cellular_edges) {
      CHECK(g.edges[e].interference == g.cellular_edges);
      CHECK(g.edges[e].capacity > 0);
      CHECK(g.edges[e].capacity < kInf);
    }
  }
  SUBCASE("d2d interference sets are sorted, self-containing, symmetric") {
    for (int e : g.d2d_edges) {
      const auto& ie = g.edges[e].interference;
      CHECK(std::is_sorted(ie.begin(), ie.end()));
      CHECK(std::binary_search(ie.begin(), ie.end(), e));
      for (int o : ie) {
        const auto& io = g.edges[o].interference;
        CHECK(std::binary_search(io.begin(), io.end(), e));
      }
    }
  }
  SUBCASE("d2d capacity equals the sinr over its concurrent set") {
    std::vector<LinkRef> links;
    std::vector<double> gains;
    for (int e : g.d2d_edges) {
      links.push_back({g.edges[e].tx_device, g.edges[e].rx_device});
      gains.push_back(g.edges[e].gain);
    }
    for (int k = 0; k < 3; ++k) {
      int probe = static_cast<int>(g.d2d_edges.size()) * k / 3;
      auto L = concurrent_set(t, links, probe, 1.0, &gains);
      std::vector<LinkRef> conc;
      std::vector<double> cg;
      for (int m : L) {
        conc.push_back(links[m]);
        cg.push_back(gains[m]);
      }
      double c = unit_capacity(
          d2d_sinr(t, links[probe], conc, gains[probe], &cg));
      CHECK(g.edges[g.d2d_edges[probe]].capacity ==
            doctest::Approx(c).epsilon(1e-12));
    }
  }
  SUBCASE("node layout: BS first, devices ascending, sink last") {
    CHECK(g.bs_node == 0);
    CHECK(g.sink_node == static_cast<int>(g.nodes.size()) - 1);
    CHECK(g.nodes.size() == 1 + 20 + 2 * 90 + 1);
    int prev = -1;
    for (const auto& n : g.nodes) {
      if (n.device_id < 0) continue;
      CHECK(n.device_id >= prev);
      prev = n.device_id;
    }
  }
}

TEST_CASE("cellular capacity folds in the sampled fading gain") {
  CellularTopology t = base_topo();
  t.wireless.rayleigh_fading = true;
  t.wireless.fading_seed = 99;
  t.devices = {dev(0, 25, 25), dev(1, 40, 10, Role::Relay),
               dev(2, 40, 20, Role::D2dRequester)};
  auto g = build_modified_graph(t);
  bool some_gain_differs = false;
  for (int e : g.cellular_edges) {
    const auto& ed = g.edges[e];
    if (std::abs(ed.gain - 1.0) > 1e-6) some_gain_differs = true;
    CHECK(ed.capacity ==
          doctest::Approx(unit_capacity(
                              cellular_snr(t, t.device(ed.rx_device), ed.gain)))
              .epsilon(1e-12));
  }
  CHECK(some_gain_differs);

  SUBCASE("same seed rebuilds identically, another seed differs") {
    auto g2 = build_modified_graph(t);
    CHECK(graph_dump(g2) == graph_dump(g));
    CellularTopology t3 = t;
    t3.wireless.fading_seed = 100;
    auto g3 = build_modified_graph(t3);
    CHECK(graph_dump(g3) != graph_dump(g));
  }
  SUBCASE("gains average to one across many edges") {
    CellularTopology big = base_topo();
    big.wireless.rayleigh_fading = true;
    big.wireless.fading_seed = 7;
    Rng rng(3);
    for (int i = 0; i < 400; ++i)
      big.devices.push_back(
          dev(i, 50 * rng.next_double(), 50 * rng.next_double(),
              Role::CellularRequester));
    auto gb = build_modified_graph(big);
    double sum = 0;
    for (int e : gb.cellular_edges) sum += gb.edges[e].gain;
    double mean = sum / 400;  // Exp(1): sd of the mean = 1/20
    CHECK(std::abs(mean - 1.0) < 3.0 / 20.0);
  }
}

TEST_CASE("disabling devices removes exactly their removable edges") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 10, 10, Role::Relay), dev(1, 18, 10, Role::D2dRequester),
               dev(2, 30, 30)};
  auto g = build_modified_graph(t);

  auto same = apply_disable(g, {});
  CHECK(graph_dump(same) == graph_dump(g));

  auto both = apply_disable(g, {0, 1});
  auto stepwise = apply_disable(apply_disable(g, {0}), {1});
  CHECK(graph_dump(both) == graph_dump(stepwise));
  CHECK(both.removed[both.removable_of_device.at(0)] == 1);
  CHECK(both.removed[both.removable_of_device.at(1)] == 1);
  int flags = 0;
  for (char c : both.removed) flags += c;
  CHECK(flags == 2);

  CHECK_THROWS_AS(apply_disable(g, {5}), ConfigError);   // unknown id
  CHECK_THROWS_AS(apply_disable(g, {2}), ConfigError);   // plain cellular
}

TEST_CASE("topology validation rejects malformed inputs") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 10, 10), dev(0, 20, 20)};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t.devices = {dev(0, 10, 10), dev(1, 60, 20)};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t.devices = {dev(0, 10, 10), dev(1, -3, 20)};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t.devices = {dev(0, 10, 10)};
  CHECK_NOTHROW(t.validate());
  t.d2d_range = 0;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("graph dump is stable text") {
  CellularTopology t = base_topo();
  t.devices = {dev(0, 10, 10, Role::Relay), dev(1, 18, 10, Role::D2dRequester)};
  auto g = build_modified_graph(t);
  std::string dump = graph_dump(g);
  CHECK(dump.rfind("# rcf-graph-v1\n", 0) == 0);
  CHECK(dump.find("cellular") != std::string::npos);
  CHECK(dump.find("removable") != std::string::npos);
  CHECK(dump.find("virtual") != std::string::npos);
  CHECK(dump.find(" inf") != std::string::npos);
  CHECK(graph_dump(build_modified_graph(t)) == dump);
  auto d = apply_disable(g, {0});
  CHECK(graph_dump(d).find(" removed") != std::string::npos);
}
