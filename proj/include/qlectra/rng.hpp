// Deterministic random streams.
//
// All randomized operations take an explicit Stream. Substreams are derived
// by a counter-based mix of (seed, stream id), so Monte-Carlo repetitions can
// be assigned stable per-repetition streams independent of worker count or
// scheduling order. Distributions are implemented here rather than taken
// from <random> because the standard leaves their output unspecified and we
// promise bit-identical results across toolchains.
#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

#include "qlectra/common.hpp"

namespace qlectra::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Stream {
public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {
    state_ = splitmix64(seed ^ 0x853c49e6748fea9bULL);
    if (state_ == 0) state_ = 0x2545f4914f6cdd1dULL;
  }

  // xorshift64* core
  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform integer in [0, n)
  std::uint64_t uniform_int(std::uint64_t n) {
    // multiply-shift; bias is < 2^-53 for the desk-scale n used here
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  // sample an index from unnormalized non-negative weights
  int discrete(const std::vector<double>& w) {
    double total = 0;
    for (double x : w) total += x;
    double u = uniform() * total;
    double acc = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;
  }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // independent child stream; stable under the parent's call history
  Stream substream(std::uint64_t id) const {
    return Stream(splitmix64(seed_ ^ splitmix64(id ^ 0xa0761d6478bd642fULL)));
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

} // namespace qlectra::rng
