#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qmetric {

/// Seedable generator with a platform-independent output stream.
///
/// std::mt19937_64 has its sequence fixed by the standard; the uniform
/// mapping takes the top 53 bits, u = (w >> 11) * 2^-53 in [0, 1), instead
/// of std::uniform_real_distribution whose algorithm is unspecified.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

/// Sub-seed for stream `stream` of a parent seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace qmetric
