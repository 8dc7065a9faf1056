#pragma once

// End-to-end wake detection: optional denoise, Radon transform, peaks, arm angle.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"
#include "wakedet/metrics.hpp"
#include "wakedet/radon.hpp"
#include "wakedet/shrinkage.hpp"

namespace wakedet {

enum class Denoiser { None, Sure, NeighShrink };

inline const char* to_string(Denoiser d) noexcept {
  switch (d) {
    case Denoiser::None: return "none";
    case Denoiser::Sure: return "sure";
    case Denoiser::NeighShrink: return "neighshrink";
  }
  return "?";
}

inline Denoiser parse_denoiser(std::string_view s) {
  if (s == "none") return Denoiser::None;
  if (s == "sure") return Denoiser::Sure;
  if (s == "neighshrink") return Denoiser::NeighShrink;
  throw Error(ErrorCode::InvalidConfig, "unknown denoiser '" + std::string(s) + "'");
}

/// Applies one of the denoisers; None returns the input.
inline Image apply_denoiser(const Image& image, Denoiser method, const DenoiseOptions& opt) {
  switch (method) {
    case Denoiser::None: return image;
    case Denoiser::Sure: return denoise_sureshrink(image, opt).image;
    case Denoiser::NeighShrink: return denoise_neighshrink(image, opt);
  }
  return image;
}

struct WakeDetection {
  std::vector<Peak> peaks;  ///< descending score
  double arm_angle = 0.0;   ///< from the top peak
  bool low_confidence = false;
};

struct DetectOptions {
  Denoiser denoiser = Denoiser::None;
  DenoiseOptions denoise;
  PeakOptions peaks;
  double theta_step = 1.0;
};

struct DetectResult {
  WakeDetection detection;
  Image processed;                       ///< the image fed to the Radon transform
  std::optional<QualityReport> quality;  ///< only when a clean reference is given
  Sinogram sinogram;
};

inline WakeDetection detect_from_sinogram(const Sinogram& sino, const PeakOptions& opt) {
  WakeDetection det;
  det.peaks = find_peaks(sino, opt);
  det.arm_angle = wake_arm_angle(det.peaks.front().theta);
  det.low_confidence = !(det.peaks.front().score > 0.0);
  return det;
}

inline DetectResult detect_wake(const Image& image, const DetectOptions& opt = {},
                                const Image* clean_reference = nullptr) {
  Image processed = apply_denoiser(image, opt.denoiser, opt.denoise);
  Sinogram sino = radon_transform(processed, opt.theta_step);
  WakeDetection det = detect_from_sinogram(sino, opt.peaks);
  std::optional<QualityReport> quality;
  if (clean_reference) quality = quality_report(*clean_reference, processed);
  return {std::move(det), std::move(processed), std::move(quality), std::move(sino)};
}

inline void write_detection_csv(const WakeDetection& det, std::ostream& out) {
  out << "rank,rho,theta,score,polarity,arm_angle\n";
  const auto old_precision = out.precision(10);
  for (std::size_t i = 0; i < det.peaks.size(); ++i) {
    const auto& p = det.peaks[i];
    out << i + 1 << ',' << p.rho << ',' << p.theta << ',' << p.score << ',' << to_string(p.polarity) << ','
        << wake_arm_angle(p.theta) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace wakedet
