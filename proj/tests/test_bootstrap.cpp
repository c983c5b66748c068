#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>

#include "rfuq/bootstrap.hpp"

using namespace rfuq;

TEST_CASE("n=1 draws the only index") {
  RandomStream rng(0);
  BootstrapRecord r = bootstrap_sample(1, rng);
  REQUIRE(r.counts.size() == 1);
  CHECK(r.counts[0] == 1);
  CHECK(r.oob.empty());
  CHECK(r.in_bag == std::vector<std::uint32_t>{0});
}

TEST_CASE("counts always sum to n") {
  RandomStream rng(11);
  for (std::size_t n : {4u, 7u, 100u, 523u}) {
    BootstrapRecord r = bootstrap_sample(n, rng);
    std::size_t total = std::accumulate(r.counts.begin(), r.counts.end(), std::size_t{0});
    CHECK(total == n);
  }
}

TEST_CASE("in_bag and oob partition the indices") {
  RandomStream rng(5);
  BootstrapRecord r = bootstrap_sample(200, rng);
  std::vector<std::uint8_t> seen(200, 0);
  for (std::uint32_t j : r.in_bag) {
    CHECK(r.counts[j] > 0);
    seen[j]++;
  }
  for (std::uint32_t j : r.oob) {
    CHECK(r.counts[j] == 0);
    seen[j]++;
  }
  for (std::uint8_t s : seen) CHECK(s == 1);
}

TEST_CASE("mean OOB fraction matches (1-1/n)^n over many seeds") {
  // Monte Carlo oracle: each index is OOB with probability (1-1/n)^n.
  const std::size_t n = 1000;
  const int seeds = 500;
  double total_fraction = 0.0;
  for (int s = 0; s < seeds; ++s) {
    RandomStream rng = RandomStream::derive(777, static_cast<std::uint64_t>(s));
    BootstrapRecord r = bootstrap_sample(n, rng);
    total_fraction += static_cast<double>(r.oob.size()) / static_cast<double>(n);
  }
  double mean_fraction = total_fraction / seeds;
  double expected = std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(n));
  CHECK(std::abs(mean_fraction - expected) < 0.01);
}

TEST_CASE("n=0 is rejected") {
  RandomStream rng(1);
  CHECK_THROWS_AS(bootstrap_sample(0, rng), std::invalid_argument);
}
