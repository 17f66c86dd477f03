#pragma once

#include <cstdint>
#include <random>

namespace pdcgm {

/// Deterministic random source for instance generation. mt19937_64's output
/// sequence is pinned by the standard; ranges are reduced by plain modulo so
/// the same seed yields the same instance on every platform. Reals are always
/// derived from integer grids divided by fixed powers of ten.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// Uniform on the grid {lo/scale, ..., hi/scale} for scale a power of ten.
  double grid_real(std::int64_t lo, std::int64_t hi, double scale) {
    return static_cast<double>(int_in(lo, hi)) / scale;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pdcgm
