#pragma once

// Seeded, platform-stable random and low-discrepancy sources.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "korops/halfplane.hpp"

namespace korops {

/// SplitMix64 step; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for the `index`-th substream of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// mt19937_64 with an explicit 53-bit uniform conversion, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random points of H^n: Re uniform in [-re_half_width, re_half_width],
/// log(Im) uniform in [log im_min, log im_max].
struct PointSampler {
  double re_half_width = 10.0;
  double im_min = 1e-4;
  double im_max = 1e4;

  Complex sample_coordinate(Rng& rng) const;
  TubePoint sample(Rng& rng, std::size_t n) const;
};

/// Sobol sequence with Joe-Kuo direction numbers (up to 16 dimensions) and a
/// seeded random digital shift. Points lie strictly inside (0, 1)^d.
class SobolSequence {
 public:
  static constexpr std::size_t kMaxDim = 16;

  SobolSequence(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const noexcept { return dim_; }
  /// Next point in (0, 1)^dim.
  std::vector<double> next();

 private:
  std::size_t dim_;
  std::uint32_t index_ = 0;
  std::vector<std::uint32_t> state_;
  std::vector<std::uint32_t> shift_;
  std::vector<std::vector<std::uint32_t>> directions_;
};

}  // namespace korops
