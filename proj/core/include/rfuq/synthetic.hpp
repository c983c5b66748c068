#pragma once

#include <cstdint>

#include "rfuq/dataset.hpp"

namespace rfuq {

// Bundled generators for benchmarking without external data. Each returns
// the dataset plus the ground-truth side information tests need.

// y = x + eps with sd(eps) = 0.2 + 0.2 x, x ~ U(0, 10).
struct HeteroscedasticSample {
  Dataset data;
  std::vector<double> noise_sd;  // true sd(eps) per instance
};
HeteroscedasticSample make_heteroscedastic(std::size_t n, std::uint64_t seed);

// Two unit-variance 2-d Gaussians at (-1, 0) and (+1, 0); classes alternate.
// in_overlap marks points with |x1| < 0.75, where the classes mix.
struct GaussianOverlapSample {
  Dataset data;
  std::vector<std::uint8_t> in_overlap;
};
GaussianOverlapSample make_gaussian_overlap(std::size_t n, std::uint64_t seed);

// Interleaved half-moons with coordinate noise sd 0.15 and a fraction of
// labels flipped at random.
struct TwoMoonsSample {
  Dataset data;
  std::vector<std::uint8_t> flipped;
};
TwoMoonsSample make_two_moons(std::size_t n, double label_noise, std::uint64_t seed);

// Name-based dispatch for the CLI: heteroscedastic | gaussians | two-moons.
Dataset make_synthetic(const std::string& name, std::size_t n, double label_noise,
                       std::uint64_t seed);

}  // namespace rfuq
