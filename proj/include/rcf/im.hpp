#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcf/random.hpp"
#include "rcf/social.hpp"

namespace rcf {

// the users that can reach the origin through sampled live edges
struct RrSet {
  int origin = -1;
  std::vector<int> members;  // sorted unique, always includes origin
};

struct RrCollection {
  std::vector<RrSet> sets;
  std::unordered_map<int, std::vector<int>> cover;  // user -> set indices
  double omega = 0;  // criticality mass behind origin sampling
  void add(RrSet set);
};

// draws origins proportionally to user criticality
class OriginSampler {
 public:
  OriginSampler(const SocialGraph& graph,
                const std::unordered_map<int, double>& criticality);
  int draw(Rng& rng) const;
  double omega() const { return omega_; }

 private:
  std::vector<int> users_;
  std::vector<double> cum_;
  double omega_ = 0;
};

int sample_origin(const SocialGraph& graph,
                  const std::unordered_map<int, double>& criticality, Rng& rng);

// reverse traversal from a sampled origin; an incoming edge (u,v) of a
// member v is live with probability p(u,v) * (1 - W_v)
RrSet generate_rr_set(const SocialGraph& graph,
                      const std::unordered_map<int, double>& criticality,
                      const AwarenessProfile& awareness, Rng& rng);

// `count` sets with one rng stream per set index, so any prefix of a larger
// collection is bit-identical to a smaller one
RrCollection sample_rr_collection(
    const SocialGraph& graph,
    const std::unordered_map<int, double>& criticality,
    const AwarenessProfile& awareness, long long count, uint64_t seed);

struct ImParams {
  int k = 0;
  double epsilon = 0;
  double delta = 0;
  int delta_arg = 2;  // numerator of the log arguments; 3 = conservative
  double tau = 0, sigma = 0, phi = 0, gamma = 0;
};

// n is the social user count; gamma is the sampling stop threshold
ImParams im_params(int n, int k, double epsilon, double delta,
                   int delta_arg = 2);

struct GreedyResult {
  std::vector<int> seeds;      // pick order
  std::vector<int> marginals;  // newly covered sets per pick
  int covered = 0;
};

// repeatedly take the user covering the most uncovered sets (smallest id on
// ties), up to k picks, stopping early once nothing new can be covered
GreedyResult greedy_max_coverage(const RrCollection& collection, int k);

// (covered sets / |collection|) * omega
double estimate_from_collection(const RrCollection& collection,
                                const std::vector<int>& seeds);

struct SeedResult {
  std::vector<int> seeds;  // greedy pick order
  std::vector<int> marginals;
  double estimate = 0;
  int deg = 0;  // sets covered by the seeds at termination
  long long rr_sets_used = 0;
  int doublings = 0;  // batches beyond the first
  ImParams params;
};

// sample-until-confident seed selection: grow the collection to gamma sets,
// run the greedy cover, and double until the cover reaches gamma sets
SeedResult targeted_im(const SocialGraph& graph,
                       const std::unordered_map<int, double>& criticality,
                       const AwarenessProfile& awareness, int k, double epsilon,
                       double delta, uint64_t seed, int delta_arg = 2);

std::string seeds_csv(const SeedResult& result);
std::string im_diagnostics_json(const SeedResult& result);

}  // namespace rcf
