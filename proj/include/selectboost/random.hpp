#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace selectboost {

// SplitMix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds a path of counters into a key, so that (seed, a, b) and (seed, b, a)
// land on unrelated streams.
constexpr std::uint64_t derive_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = mix64(seed);
  for (std::uint64_t step : path) key = mix64(key ^ mix64(step + 0x632be59bd9b4e019ULL));
  return key;
}

// A seeded random stream. Each parallel task gets its own instance built from
// a derived key; streams never share state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : engine_(derive_key(seed, path)) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }
  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace selectboost
