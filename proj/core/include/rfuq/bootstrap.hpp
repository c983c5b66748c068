#pragma once

#include <cstdint>
#include <vector>

#include "rfuq/random.hpp"

namespace rfuq {

// One tree's bootstrap draw. counts[j] is the multiplicity of training
// instance j in the sample; counts sum to n. oob holds the indices with
// counts[j] == 0, in_bag the rest, both ascending.
struct BootstrapRecord {
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> in_bag;
  std::vector<std::uint32_t> oob;
};

// n draws with replacement from {0..n-1}, tallied per index.
BootstrapRecord bootstrap_sample(std::size_t n, RandomStream& rng);

}  // namespace rfuq
