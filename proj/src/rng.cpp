#include "submax/rng.hpp"

#include <cmath>

#include "submax/errors.hpp"

namespace submax {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_double() {
  // 53 uniform bits; avoids the implementation-defined behavior of
  // std::uniform_real_distribution.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool Rng::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("probability p must lie in [0, 1], got " +
                      std::to_string(p));
  }
  return next_double() < p;
}

int Rng::next_below(int bound) {
  if (bound <= 0) {
    throw ConfigError("next_below requires a positive bound");
  }
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return static_cast<int>(draw % b);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 finalizer over master + index * golden gamma.
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ElementSet sample_subset(int n, double p, Rng& rng) {
  if (n < 0) throw DomainError("ground-set size must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("sampling probability must lie in [0, 1], got " +
                      std::to_string(p));
  }
  ElementSet out(n);
  for (int u = 0; u < n; ++u) {
    if (rng.bernoulli(p)) out.insert(u);
  }
  return out;
}

}  // namespace submax
