#pragma once

#include <cstdint>
#include <random>

namespace sdpolicy {

/// splitmix64 step, used to derive substream seeds from a master seed.
/// substream i is seeded with mix_seed(master, i); the mapping is part of
/// the reproducibility contract and must not change.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic random source. The raw stream comes from std::mt19937_64
/// (fully specified by the standard); the variate transforms below are
/// implemented here so that draws never depend on the standard library's
/// distribution internals, which vary between implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for parallel work units.
  static Rng substream(std::uint64_t master, std::uint64_t index) {
    return Rng(mix_seed(master, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (cosine branch only, no cached state).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, scale) via Marsaglia-Tsang squeeze.
  double gamma(double shape, double scale);

  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sdpolicy
