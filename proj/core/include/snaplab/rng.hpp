#pragma once

#include <cstdint>
#include <random>

namespace snaplab {

// Seeded generator whose outputs are identical on every platform: the
// standard distributions are implementation-defined, so values are built
// directly from the raw 64-bit engine output.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(bits() % span);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace snaplab
