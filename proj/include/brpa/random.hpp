#ifndef BRPA_RANDOM_HPP_
#define BRPA_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace brpa {

// Reproducibility contract. Bump the suffix whenever any draw order or
// conversion below changes.
inline constexpr std::string_view kRngName = "mt19937_64+splitmix64/v1";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th child stream of `master`. Children of different
/// indices are decorrelated by two SplitMix64 rounds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Seeded 64-bit stream. All conversions are spelled out here rather than
/// delegated to <random> distributions, whose output is implementation
/// defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1) with 52-bit resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Unit-mean exponential by inversion, w = -ln(1 - U). Always > 0.
  double exponential() { return -std::log1p(-uniform()); }

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace brpa

#endif  // BRPA_RANDOM_HPP_
