#include <doctest.h>

#include <vector>

#include "submax/errors.hpp"
#include "submax/rng.hpp"

using submax::ConfigError;
using submax::derive_seed;
using submax::ElementSet;
using submax::Rng;
using submax::sample_subset;

TEST_CASE("identical seed and stream reproduce the draw sequence") {
  Rng a(7, 0);
  Rng b(7, 0);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams of one seed differ") {
  Rng a(7, 0);
  Rng b(7, 1);
  int differing = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() != b.next_u64()) ++differing;
  }
  CHECK(differing > 60);
}

TEST_CASE("doubles live in the unit interval") {
  Rng rng(123, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sampling certainty and impossibility cases") {
  Rng rng(99, 0);
  CHECK(sample_subset(5, 1.0, rng).elements() ==
        std::vector<int>{0, 1, 2, 3, 4});
  CHECK(sample_subset(5, 0.0, rng).empty());
  CHECK(sample_subset(0, 0.5, rng).empty());
  CHECK_THROWS_AS(sample_subset(5, 1.5, rng), ConfigError);
  CHECK_THROWS_AS(sample_subset(5, -0.1, rng), ConfigError);
}

TEST_CASE("a fixed seed pins the sampled set exactly") {
  Rng first(42, 0);
  Rng second(42, 0);
  const ElementSet a = sample_subset(1000, 0.5, first);
  const ElementSet b = sample_subset(1000, 0.5, second);
  CHECK(a == b);
  // Binomial(1000, 0.5) tails put the size outside [400, 600] with
  // probability below 1e-9.
  CHECK(a.size() >= 400);
  CHECK(a.size() <= 600);
}

TEST_CASE("fresh states replay sampling deterministically") {
  Rng a(7, 0);
  Rng b(7, 0);
  CHECK(sample_subset(10, 0.5, a) == sample_subset(10, 0.5, b));
}

TEST_CASE("derived sub-seeds are distinct and stable") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("per-element inclusion frequency stays near p") {
  const int n = 100;
  const int seeds = 10000;
  std::vector<int> hits(n, 0);
  for (int t = 0; t < seeds; ++t) {
    Rng rng(9001, static_cast<std::uint64_t>(t));
    sample_subset(n, 0.3, rng).for_each([&](int u) { ++hits[u]; });
  }
  for (int u = 0; u < n; ++u) {
    const double freq = static_cast<double>(hits[u]) / seeds;
    CHECK(freq >= 0.28);
    CHECK(freq <= 0.32);
  }
}
