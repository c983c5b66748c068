#pragma once

#include <cstddef>
#include <cstdint>

#include "rfuq/dataset.hpp"

namespace rfuq {

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_features = 0;      // 0 = ceil(p/3) regression, ceil(sqrt(p)) classification
  std::size_t min_samples_leaf = 0;  // 0 = 5 regression, 1 classification
  std::size_t max_depth = 0;         // 0 = unlimited
  std::uint64_t seed = 0;
  std::size_t thread_count = 1;      // 0 = hardware concurrency

  // Fills task-dependent defaults and validates ranges against the dataset.
  ForestConfig resolved(const Dataset& d) const;
};

}  // namespace rfuq
