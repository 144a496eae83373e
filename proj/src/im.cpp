#include "rcf/im.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rcf/errors.hpp"

namespace rcf {

void RrCollection::add(RrSet set) {
  int idx = static_cast<int>(sets.size());
  for (int u : set.members) cover[u].push_back(idx);
  sets.push_back(std::move(set));
}

OriginSampler::OriginSampler(
    const SocialGraph& graph,
    const std::unordered_map<int, double>& criticality) {
  users_ = graph.users;
  cum_.reserve(users_.size());
  for (int u : users_) {
    auto it = criticality.find(u);
    double cr = it == criticality.end() ? 0.0 : it->second;
    if (cr < 0) throw ConfigError("origin sampling: negative criticality");
    omega_ += cr;
    cum_.push_back(omega_);
  }
  if (!(omega_ > 0))
    throw ConfigError(
        "origin sampling: total criticality is zero, no user can seed");
}

int OriginSampler::draw(Rng& rng) const {
  double x = rng.next_double() * omega_;
  size_t idx = std::upper_bound(cum_.begin(), cum_.end(), x) - cum_.begin();
  if (idx >= users_.size()) idx = users_.size() - 1;
  // an exact hit on a repeated prefix value must land on a positive slice
  while (idx > 0 && cum_[idx] == cum_[idx - 1]) --idx;
  return users_[idx];
}

int sample_origin(const SocialGraph& graph,
                  const std::unordered_map<int, double>& criticality,
                  Rng& rng) {
  return OriginSampler(graph, criticality).draw(rng);
}

namespace {

// live-edge thresholds, one per directed edge in canonical order
std::vector<double> damped_weights(const SocialGraph& graph,
                                   const AwarenessProfile& awareness) {
  if (!graph.weights_assigned())
    throw ConfigError("rr sampling: edge weights not assigned");
  awareness.validate();
  std::vector<double> q(graph.edges.size());
  for (size_t e = 0; e < q.size(); ++e)
    q[e] = graph.edges[e].p * (1.0 - awareness.at(graph.edges[e].head));
  return q;
}

RrSet rr_from_origin(const SocialGraph& graph, const std::vector<double>& q,
                     int origin, Rng& rng) {
  std::vector<char> member(graph.users.size(), 0);
  std::deque<int> queue;
  int oi = graph.index_of(origin);
  member[oi] = 1;
  queue.push_back(oi);
  while (!queue.empty()) {
    int vi = queue.front();
    queue.pop_front();
    for (int e : graph.in[vi]) {
      if (rng.next_double() >= q[e]) continue;
      int ui = graph.index_of(graph.edges[e].tail);
      if (!member[ui]) {
        member[ui] = 1;
        queue.push_back(ui);
      }
    }
  }
  RrSet r;
  r.origin = origin;
  for (size_t ui = 0; ui < member.size(); ++ui)
    if (member[ui]) r.members.push_back(graph.users[ui]);
  return r;
}

}  // namespace

RrSet generate_rr_set(const SocialGraph& graph,
                      const std::unordered_map<int, double>& criticality,
                      const AwarenessProfile& awareness, Rng& rng) {
  std::vector<double> q = damped_weights(graph, awareness);
  OriginSampler sampler(graph, criticality);
  return rr_from_origin(graph, q, sampler.draw(rng), rng);
}

RrCollection sample_rr_collection(
    const SocialGraph& graph,
    const std::unordered_map<int, double>& criticality,
    const AwarenessProfile& awareness, long long count, uint64_t seed) {
  if (count < 0) throw ConfigError("rr sampling: negative count");
  std::vector<double> q = damped_weights(graph, awareness);
  OriginSampler sampler(graph, criticality);
  RrCollection col;
  col.omega = sampler.omega();
  for (long long i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, Stream::RrSet, static_cast<uint64_t>(i)));
    col.add(rr_from_origin(graph, q, sampler.draw(rng), rng));
  }
  return col;
}

ImParams im_params(int n, int k, double epsilon, double delta, int delta_arg) {
  if (n < 1) throw ConfigError("im params: empty user set");
  if (k < 1 || k > n) throw ConfigError("im params: k outside [1, n]");
  if (!(epsilon > 0)) throw ConfigError("im params: epsilon must be positive");
  if (!(delta > 0 && delta < 1))
    throw ConfigError("im params: delta outside (0,1)");
  if (delta_arg != 2 && delta_arg != 3)
    throw ConfigError("im params: log-argument numerator must be 2 or 3");
  ImParams p;
  p.k = k;
  p.epsilon = epsilon;
  p.delta = delta;
  p.delta_arg = delta_arg;
  const double e_frac = 1.0 - 1.0 / std::exp(1.0);
  const double log_term = std::log(delta_arg / delta);
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0);
  p.tau = std::sqrt(log_term);
  p.sigma = std::sqrt(e_frac * (log_choose + log_term));
  p.phi = (e_frac * p.sigma + p.tau) / epsilon;
  p.gamma = 2.0 * (p.phi * p.phi + log_term);
  if (!std::isfinite(p.gamma) || p.gamma <= 0)
    throw ConfigError("im params: stop threshold not finite");
  return p;
}

GreedyResult greedy_max_coverage(const RrCollection& collection, int k) {
  if (k < 1) throw ConfigError("greedy cover: k must be >= 1");
  std::vector<std::pair<int, const std::vector<int>*>> cand;
  cand.reserve(collection.cover.size());
  for (const auto& [user, idxs] : collection.cover) cand.push_back({user, &idxs});
  std::sort(cand.begin(), cand.end());  // ascending ids fix the tie-break

  std::vector<char> covered(collection.sets.size(), 0);
  GreedyResult out;
  for (int pick = 0; pick < k; ++pick) {
    int best_user = -1, best_gain = 0;
    for (const auto& [user, idxs] : cand) {
      int gain = 0;
      for (int s : *idxs) gain += !covered[s];
      if (gain > best_gain) {
        best_gain = gain;
        best_user = user;
      }
    }
    if (best_user < 0) break;  // nothing left to cover
    for (int s : *std::find_if(cand.begin(), cand.end(), [&](const auto& c) {
           return c.first == best_user;
         })->second)
      covered[s] = 1;
    out.seeds.push_back(best_user);
    out.marginals.push_back(best_gain);
    out.covered += best_gain;
  }
  return out;
}

double estimate_from_collection(const RrCollection& collection,
                                const std::vector<int>& seeds) {
  if (collection.sets.empty())
    throw ConfigError("coverage estimate: empty collection");
  std::vector<char> covered(collection.sets.size(), 0);
  for (int u : std::set<int>(seeds.begin(), seeds.end())) {
    auto it = collection.cover.find(u);
    if (it == collection.cover.end()) continue;
    for (int s : it->second) covered[s] = 1;
  }
  double deg = 0;
  for (char c : covered) deg += c;
  return deg / static_cast<double>(collection.sets.size()) * collection.omega;
}

SeedResult targeted_im(const SocialGraph& graph,
                       const std::unordered_map<int, double>& criticality,
                       const AwarenessProfile& awareness, int k, double epsilon,
                       double delta, uint64_t seed, int delta_arg) {
  ImParams params = im_params(static_cast<int>(graph.users.size()), k, epsilon,
                              delta, delta_arg);
  std::vector<double> q = damped_weights(graph, awareness);
  OriginSampler sampler(graph, criticality);

  RrCollection col;
  col.omega = sampler.omega();
  long long target = static_cast<long long>(std::ceil(params.gamma));
  const int max_doublings = 40;
  for (int doubling = 0;; ++doubling) {
    while (static_cast<long long>(col.sets.size()) < target) {
      Rng rng(derive_seed(seed, Stream::RrSet,
                          static_cast<uint64_t>(col.sets.size())));
      col.add(rr_from_origin(graph, q, sampler.draw(rng), rng));
    }
    GreedyResult g = greedy_max_coverage(col, k);
    if (g.covered >= params.gamma) {
      SeedResult out;
      out.seeds = g.seeds;
      out.marginals = g.marginals;
      out.deg = g.covered;
      out.rr_sets_used = static_cast<long long>(col.sets.size());
      out.doublings = doubling;
      out.estimate = g.covered / static_cast<double>(col.sets.size()) *
                     col.omega;
      out.params = params;
      return out;
    }
    if (doubling >= max_doublings)
      throw SolverError(
          "targeted im: cover never reached the stop threshold after 40 "
          "doublings");
    target *= 2;
  }
}

std::string seeds_csv(const SeedResult& result) {
  std::ostringstream os;
  os << "# rcf-seeds-v1\n";
  os << "rank,user_id,marginal_coverage\n";
  for (size_t i = 0; i < result.seeds.size(); ++i)
    os << i + 1 << ',' << result.seeds[i] << ',' << result.marginals[i] << '\n';
  return os.str();
}

std::string im_diagnostics_json(const SeedResult& result) {
  nlohmann::json j;
  j["epsilon"] = result.params.epsilon;
  j["delta"] = result.params.delta;
  j["gamma"] = result.params.gamma;
  j["rr_sets"] = result.rr_sets_used;
  j["deg"] = result.deg;
  j["estimate"] = result.estimate;
  return j.dump();
}

}  // namespace rcf
