#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace entrorisk::rng {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Collapses (seed, a, b, c) into one well-mixed substream seed. Used to give
// every task its own generator so results do not depend on scheduling or on
// how work is divided between threads.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix(seed ^ 0x8BADF00D5EEDULL);
  h = mix(h ^ (a + 0x9E3779B97F4A7C15ULL));
  h = mix(h ^ (b + 0xC2B2AE3D27D4EB4FULL));
  h = mix(h ^ (c + 0x165667B19E3779F9ULL));
  return h;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log argument.
  double unit_pos() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes exactly two words.
  double normal() {
    const double u1 = unit_pos();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Uniform integer in [0, n) by 128-bit multiply.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// First k slots of a Fisher-Yates shuffle of 0..n-1, returned sorted
// ascending: a uniform k-subset without replacement.
inline std::vector<std::uint32_t> sample_indices(std::uint32_t k,
                                                 std::uint32_t n,
                                                 SplitMix64& g) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(g.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::uint32_t> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace entrorisk::rng
