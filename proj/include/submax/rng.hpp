#pragma once

#include <cstdint>
#include <random>

#include "submax/element_set.hpp"

namespace submax {

// Deterministic generator: (seed, stream) fully determines the draw
// sequence on every platform. Distinct streams of one seed are
// statistically independent, so parallel trials derive their own
// generator from (master seed, trial index) without coordination.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_double();      // uniform in [0, 1)
  bool bernoulli(double p);  // p must lie in [0, 1]
  int next_below(int bound);  // uniform in [0, bound), bound >= 1

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit sub-seed for trial `index` of a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// Bernoulli sample over the ground set [0, n): each element is included
// independently with probability p. Identical inputs give identical sets.
ElementSet sample_subset(int n, double p, Rng& rng);

}  // namespace submax
