#pragma once

// Seeded additive Gaussian noise.
//
// Variates come from std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) fed through the basic Box-Muller transform. Each 64-bit draw
// is reduced to a 53-bit uniform; u1 is shifted into (0, 1] so the log is
// finite. Both outputs of each Box-Muller pair are used, cosine branch first.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"

namespace wakedet {

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

class BoxMullerNormal {
 public:
  explicit BoxMullerNormal(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kInv53;
    const double u2 = static_cast<double>(engine_() >> 11) * kInv53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// out(i) = in(i) + sigma * z(i). No clamping.
inline Image add_gaussian_noise(const Image& image, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0)) throw Error(ErrorCode::NegativeSigma, "noise sigma must be >= 0");
  if (spec.sigma == 0.0) return image;
  BoxMullerNormal normal(spec.seed);
  std::vector<double> px(image.pixels().begin(), image.pixels().end());
  for (double& v : px) v += spec.sigma * normal();
  return Image(image.width(), image.height(), std::move(px));
}

/// SplitMix64 finalizer; derives independent sub-seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace wakedet
