#include "rfuq/bootstrap.hpp"

#include <stdexcept>

namespace rfuq {

BootstrapRecord bootstrap_sample(std::size_t n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("bootstrap_sample: n must be >= 1");
  BootstrapRecord rec;
  rec.counts.assign(n, 0);
  for (std::size_t d = 0; d < n; ++d) rec.counts[rng.uniform_index(n)]++;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (rec.counts[j] > 0)
      rec.in_bag.push_back(j);
    else
      rec.oob.push_back(j);
  }
  return rec;
}

}  // namespace rfuq
