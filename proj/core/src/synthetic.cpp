#include "rfuq/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rfuq/random.hpp"

namespace rfuq {

namespace {

// Generator streams live far away from tree ids (0..n_trees-1) so data and
// forest randomness never overlap for the same master seed.
constexpr std::uint64_t kSyntheticStream = 1ull << 40;

}  // namespace

HeteroscedasticSample make_heteroscedastic(std::size_t n, std::uint64_t seed) {
  RandomStream rng = RandomStream::derive(seed, kSyntheticStream);
  HeteroscedasticSample s;
  s.data.task = Task::regression;
  s.data.features = Matrix(n, 1);
  s.data.response.resize(n);
  s.data.feature_names = {"x"};
  s.noise_sd.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = 10.0 * rng.uniform();
    double sd = 0.2 + 0.2 * x;
    s.data.features(i, 0) = x;
    s.data.response[i] = x + sd * rng.normal();
    s.noise_sd[i] = sd;
  }
  return s;
}

GaussianOverlapSample make_gaussian_overlap(std::size_t n, std::uint64_t seed) {
  RandomStream rng = RandomStream::derive(seed, kSyntheticStream + 1);
  GaussianOverlapSample s;
  s.data.task = Task::classification;
  s.data.features = Matrix(n, 2);
  s.data.response.resize(n);
  s.data.feature_names = {"x1", "x2"};
  s.data.class_labels = {"a", "b"};
  s.in_overlap.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int cls = static_cast<int>(i % 2);
    double x1 = (cls == 0 ? -1.0 : 1.0) + rng.normal();
    double x2 = rng.normal();
    s.data.features(i, 0) = x1;
    s.data.features(i, 1) = x2;
    s.data.response[i] = cls;
    s.in_overlap[i] = std::abs(x1) < 0.75 ? 1 : 0;
  }
  return s;
}

TwoMoonsSample make_two_moons(std::size_t n, double label_noise, std::uint64_t seed) {
  if (!(label_noise >= 0.0 && label_noise < 1.0))
    throw std::invalid_argument("make_two_moons: label_noise outside [0,1)");
  RandomStream rng = RandomStream::derive(seed, kSyntheticStream + 2);
  TwoMoonsSample s;
  s.data.task = Task::classification;
  s.data.features = Matrix(n, 2);
  s.data.response.resize(n);
  s.data.feature_names = {"x1", "x2"};
  s.data.class_labels = {"upper", "lower"};
  s.flipped.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int cls = static_cast<int>(i % 2);
    double t = std::numbers::pi * rng.uniform();
    double x1, x2;
    if (cls == 0) {
      x1 = std::cos(t);
      x2 = std::sin(t);
    } else {
      x1 = 1.0 - std::cos(t);
      x2 = 0.5 - std::sin(t);
    }
    s.data.features(i, 0) = x1 + 0.15 * rng.normal();
    s.data.features(i, 1) = x2 + 0.15 * rng.normal();
    bool flip = rng.uniform() < label_noise;
    s.flipped[i] = flip ? 1 : 0;
    s.data.response[i] = flip ? 1 - cls : cls;
  }
  return s;
}

Dataset make_synthetic(const std::string& name, std::size_t n, double label_noise,
                       std::uint64_t seed) {
  if (name == "heteroscedastic") return make_heteroscedastic(n, seed).data;
  if (name == "gaussians") return make_gaussian_overlap(n, seed).data;
  if (name == "two-moons") return make_two_moons(n, label_noise, seed).data;
  throw std::invalid_argument("unknown synthetic dataset: " + name);
}

}  // namespace rfuq
