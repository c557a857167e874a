#pragma once

#include <cmath>
#include <cstdint>

namespace dwmk {

// Counter-based randomness used everywhere a --seed flag appears. The
// generator is fixed here, in-repo, so seeded runs stay reproducible across
// releases; standard-library distributions are not bit-stable across
// implementations. Gaussian draws go through libm (log/sin/cos), so exact
// bit equality holds per platform.

// SplitMix64 finalizer (Steele/Lea/Flood constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Key for substream `index` of a base seed, e.g. one stream per Monte Carlo
// trial. Double mixing decorrelates consecutive indexes, and the mapping
// depends only on (seed, index), so results never depend on the order in
// which trials run.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ (index + 0xD1B54A32D192ED03ULL));
}

// SplitMix64 stream: output k for seed s is mix64(s + (k+1)*2^64/phi).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Standard normals by the Box-Muller transform over a SplitMix64 stream.
// One uniform pair yields two values; the spare is cached. log1p(-u1) keeps
// the argument strictly negative since u1 < 1.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.next_unit();
    const double u2 = rng_.next_unit();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dwmk
