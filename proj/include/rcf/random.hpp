#pragma once
#include <cmath>
#include <cstdint>

namespace rcf {

// splitmix64; used both as a small fast PRNG and to derive independent
// sub-stream seeds from (master seed, purpose tag, index).
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d4a2fa9d5ae64full;
  return z ^ (z >> 31);
}

enum class Stream : uint64_t {
  Positions = 1,
  Fading = 2,
  EdgeWeights = 3,
  Interconnect = 4,
  Trial = 5,
  RrSet = 6,
  RandomBaseline = 7,
  InfluenceTrial = 8,
  SocialGen = 9,
};

inline uint64_t derive_seed(uint64_t master, Stream tag, uint64_t index) {
  uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x6a09e667f3bcc909ull * static_cast<uint64_t>(tag);
  (void)splitmix64(s);
  s ^= 0xd6e8feb86659fd93ull * (index + 1);
  return splitmix64(s);
}

// Deterministic, platform-independent generator: xoshiro-free, just splitmix
// iterated. Good enough statistically for simulation draws at these scales
// and keeps every output bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}
  uint64_t next_u64() { return splitmix64(state_); }
  // uniform in [0,1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
  // uniform integer in [0, n)
  uint64_t next_below(uint64_t n) {
    // modulo bias is < 2^-40 for n < 2^24; fine for index draws here
    return next_u64() % n;
  }
  // unit-mean exponential
  double next_exp() {
    double u = next_double();
    return -std::log1p(-u);
  }

 private:
  uint64_t state_;
};

}  // namespace rcf
