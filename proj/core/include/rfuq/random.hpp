#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace rfuq {

// Splittable counter-based PRNG (splitmix64). Every consumer derives its own
// stream from (seed, stream_id), so tree t draws the same numbers no matter
// which thread runs it or in which order trees are trained.
//
// Bounded draws use the multiply-shift reduction, which is reproducible
// across standard libraries (std::uniform_int_distribution is not).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  static RandomStream derive(std::uint64_t seed, std::uint64_t stream_id) {
    // Two mixing rounds keep streams for adjacent ids statistically unrelated.
    RandomStream mixer(seed);
    std::uint64_t a = mixer.next_u64();
    RandomStream stream(a ^ (stream_id * 0x9E3779B97F4A7C15ull));
    stream.next_u64();
    return stream;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Multiply-shift; bias < bound / 2^64.
  std::size_t uniform_index(std::size_t bound) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>((u128(next_u64()) * u128(bound)) >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; caches the second variate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rfuq
