#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace blackboard {

/// Seeded random source with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are not, so bounded integers use
/// Lemire's multiply-and-reject method and probabilities compare a 53-bit
/// uniform double against the threshold.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// True with probability p; p <= 0 never, p >= 1 always.
  bool chance(double p) { return unit() < p; }

  bool coin() { return (next() >> 63) != 0; }

  /// k distinct indices from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a bijection on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-test seed. Distinct (combination, test) pairs below 2^32 map to distinct
/// seeds for a fixed master seed, since every step is a bijection.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint32_t combination, std::uint32_t test) noexcept {
  const std::uint64_t packed = (std::uint64_t{combination} << 32) | test;
  return mix64(master ^ mix64(packed));
}

}  // namespace blackboard
