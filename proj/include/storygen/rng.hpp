#pragma once

#include <cstdint>

namespace storygen {

/// The single random number generator used for every draw in the pipeline.
///
/// Algorithm: splitmix64 with Vigna's reference constants. All derived draws
/// are fixed functions of next_u64(), so identical seeds give byte-identical
/// runs on every platform:
///
///   next_double()    = (next_u64() >> 11) * 2^-53, uniform in [0, 1)
///   uniform_below(n) = (next_u64() * n) >> 64      (multiply-shift reduction)
///   bernoulli(p)     = next_double() < p           (p=0 never, p=1 always)
///
/// The generator loop draws in a fixed order: verb, subject, object when
/// forming a seed sentence, then per-token Bernoulli trials left to right
/// with a candidate-index draw after each success.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform index in [0, n). Requires n >= 1.
  std::uint64_t uniform_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

/// Seed for an auxiliary stream (for example the per-iteration text
/// generation request) that must not consume draws from the main stream.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t index) {
  SplitMix64 rng(base ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return rng.next_u64();
}

}  // namespace storygen
