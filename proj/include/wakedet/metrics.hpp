#pragma once

#include <cmath>
#include <limits>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"

namespace wakedet {

/// 8-bit peak used for PSNR regardless of the internal real-valued range.
inline constexpr double kPsnrPeak = 255.0;

/// Population standard deviation (divisor |I|, no Bessel correction).
inline double empirical_std(const Image& image) {
  const auto px = image.pixels();
  if (px.empty()) throw Error(ErrorCode::EmptyImage, "empirical_std of an empty image");
  double mean = 0.0;
  for (double v : px) mean += v;
  mean /= static_cast<double>(px.size());
  double acc = 0.0;
  for (double v : px) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(px.size()));
}

inline double snr(double signal_std, double noise_std) {
  if (!(noise_std > 0.0)) throw Error(ErrorCode::ZeroNoise, "noise std must be > 0");
  return signal_std / noise_std;
}

inline double mse(const Image& reference, const Image& test) {
  if (reference.width() != test.width() || reference.height() != test.height()) {
    throw Error(ErrorCode::DimensionMismatch, "images differ in size");
  }
  const auto a = reference.pixels();
  const auto b = test.pixels();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

/// 10 log10(255^2 / mse); +infinity when the images are identical.
inline double psnr_from_mse(double mse_value) noexcept {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / mse_value);
}

inline double psnr(const Image& reference, const Image& test) { return psnr_from_mse(mse(reference, test)); }

struct QualityReport {
  double mse = 0.0;
  double psnr = std::numeric_limits<double>::infinity();  ///< dB, +inf iff mse == 0
  double snr = 0.0;
  double signal_std = 0.0;
  double noise_std = 0.0;
  double peak = kPsnrPeak;
};

/// Quality of `test` against a clean reference. noise_std is the residual
/// std of (test - reference) unless a known noise level is supplied.
inline QualityReport quality_report(const Image& reference, const Image& test, double noise_std = -1.0) {
  QualityReport q;
  q.mse = mse(reference, test);
  q.psnr = psnr_from_mse(q.mse);
  q.signal_std = empirical_std(reference);
  if (noise_std < 0.0) {
    std::vector<double> diff(test.pixel_count());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = test.pixels()[i] - reference.pixels()[i];
    noise_std = empirical_std(Image(test.width(), test.height(), std::move(diff)));
  }
  q.noise_std = noise_std;
  q.snr = noise_std > 0.0 ? snr(q.signal_std, noise_std) : std::numeric_limits<double>::infinity();
  return q;
}

}  // namespace wakedet
