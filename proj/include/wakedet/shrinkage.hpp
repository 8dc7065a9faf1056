#pragma once

// Wavelet-domain denoisers: per-subband SURE-optimal soft thresholding and
// NeighShrink. The coarsest approximation band is never modified.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"
#include "wakedet/wavelet.hpp"

namespace wakedet {

/// Robust noise level: median(|HH1|) / 0.6745.
inline double estimate_noise_sigma(const WaveletPyramid& pyr) {
  if (pyr.details.empty() || pyr.details.front().hh.empty()) {
    throw Error(ErrorCode::EmptySubband, "pyramid has no level-1 HH subband");
  }
  const auto hh = pyr.details.front().hh.values();
  std::vector<double> mags(hh.size());
  std::transform(hh.begin(), hh.end(), mags.begin(), [](double v) { return std::abs(v); });
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + mid, mags.end());
  double median = mags[mid];
  if (mags.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(mags.begin(), mags.begin() + mid));
  }
  return median / 0.6745;
}

inline double soft_threshold(double x, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeThreshold, "threshold must be >= 0");
  const double mag = std::abs(x) - t;
  if (mag <= 0.0) return 0.0;
  return x < 0.0 ? -mag : mag;
}

/// Stein's unbiased estimate of soft-threshold risk for unit-variance data:
///   d - 2 #{i : |x_i| <= t} + sum_i min(|x_i|, t)^2
inline double sure_cost(std::span<const double> x, double t) {
  if (x.empty()) throw Error(ErrorCode::EmptyVector, "SURE needs at least one coefficient");
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeThreshold, "threshold must be >= 0");
  std::size_t inside = 0;
  double clipped = 0.0;
  for (double v : x) {
    const double a = std::abs(v);
    if (a <= t) ++inside;
    const double m = std::min(a, t);
    clipped += m * m;
  }
  return static_cast<double>(x.size()) - 2.0 * static_cast<double>(inside) + clipped;
}

inline double universal_threshold(std::size_t d) noexcept {
  return std::sqrt(2.0 * std::log(static_cast<double>(d)));
}

struct SureChoice {
  double threshold;
  double risk;
  bool capped;  ///< the universal threshold won
};

/// Minimizes SURE over {0} U {|x_i| <= lambda_u} U {lambda_u}. Between
/// consecutive candidates the cost only grows (t^2 term, constant count), so the
/// candidate argmin is the global argmin on [0, lambda_u]. Ties go to the
/// smaller threshold.
inline SureChoice sure_threshold(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::EmptyVector, "SURE needs at least one coefficient");
  const std::size_t d = x.size();
  const double lambda = universal_threshold(d);

  std::vector<double> mags(d);
  std::transform(x.begin(), x.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end());
  std::vector<double> prefix_sq(d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) prefix_sq[i + 1] = prefix_sq[i] + mags[i] * mags[i];

  auto cost_at = [&](double t) {
    const auto inside = static_cast<std::size_t>(std::upper_bound(mags.begin(), mags.end(), t) - mags.begin());
    return static_cast<double>(d) - 2.0 * static_cast<double>(inside) + prefix_sq[inside] +
           static_cast<double>(d - inside) * t * t;
  };

  SureChoice best{0.0, cost_at(0.0), false};
  auto consider = [&](double t, bool capped) {
    const double c = cost_at(t);
    if (c < best.risk) best = {t, c, capped};
  };
  for (std::size_t i = 0; i < d && mags[i] <= lambda; ++i) {
    if (mags[i] > 0.0 && (i == 0 || mags[i] != mags[i - 1])) consider(mags[i], false);
  }
  consider(lambda, true);
  if (best.capped && best.threshold == 0.0) best.capped = false;
  return best;
}

struct SubbandThreshold {
  std::string subband;  ///< e.g. "HH1"
  double sigma;         ///< grey levels
  double threshold;     ///< unit-variance scale
  double risk;
  bool capped;
};

struct ThresholdReport {
  std::vector<SubbandThreshold> bands;
};

inline void write_threshold_csv(const ThresholdReport& report, std::ostream& out) {
  out << "subband,sigma,t,risk,capped\n";
  const auto old_precision = out.precision(17);
  for (const auto& b : report.bands) {
    out << b.subband << ',' << b.sigma << ',' << b.threshold << ',' << b.risk << ',' << (b.capped ? 1 : 0)
        << '\n';
  }
  out.precision(old_precision);
}

struct DenoiseOptions {
  std::string wavelet = "sym8";
  std::size_t levels = 4;
  std::optional<double> sigma;  ///< grey levels; estimated from HH1 when empty
  std::size_t window = 3;       ///< NeighShrink neighborhood side, odd
};

/// Soft-thresholds every detail subband in place at its SURE-optimal level.
inline ThresholdReport sure_shrink_pyramid(WaveletPyramid& pyr, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::NegativeSigma, "sigma must be >= 0");
  ThresholdReport report;
  for_each_detail(pyr, [&](std::size_t level, BandKind kind, Matrix& band) {
    auto values = band.values();
    if (values.empty()) throw Error(ErrorCode::EmptySubband, "empty detail subband");
    SureChoice choice{0.0, 0.0, false};
    if (sigma > 0.0) {
      std::vector<double> normalized(values.size());
      std::transform(values.begin(), values.end(), normalized.begin(), [sigma](double v) { return v / sigma; });
      choice = sure_threshold(normalized);
      choice.risk = sure_cost(normalized, choice.threshold);
      const double t = choice.threshold * sigma;
      for (double& v : values) v = soft_threshold(v, t);
    } else {
      choice.risk = -static_cast<double>(values.size());
    }
    report.bands.push_back({subband_name(level, kind), sigma, choice.threshold, choice.risk, choice.capped});
  });
  return report;
}

/// NeighShrink factor for one coefficient given its window energy S^2.
inline double neigh_shrink_factor(double lambda_sq, double energy) noexcept {
  if (energy <= 0.0) return 0.0;
  return std::max(0.0, 1.0 - lambda_sq / energy);
}

/// Scales every detail coefficient by max(0, 1 - lambda^2 / S^2), with
/// lambda^2 = 2 sigma^2 ln(n) per subband and S^2 the zero-padded
/// window x window energy around the coefficient.
inline void neigh_shrink_pyramid(WaveletPyramid& pyr, double sigma, std::size_t window) {
  if (window % 2 == 0) throw Error(ErrorCode::EvenWindow, "window must be odd, got " + std::to_string(window));
  if (!(sigma >= 0.0)) throw Error(ErrorCode::NegativeSigma, "sigma must be >= 0");
  const auto half = static_cast<long long>(window / 2);
  for_each_detail(pyr, [&](std::size_t, BandKind, Matrix& band) {
    if (band.empty()) throw Error(ErrorCode::EmptySubband, "empty detail subband");
    const double lambda_sq = 2.0 * sigma * sigma * std::log(static_cast<double>(band.size()));
    const auto rows = static_cast<long long>(band.rows());
    const auto cols = static_cast<long long>(band.cols());
    const Matrix source = band;
    for (long long r = 0; r < rows; ++r) {
      for (long long c = 0; c < cols; ++c) {
        double energy = 0.0;
        for (long long rr = std::max(0LL, r - half); rr <= std::min(rows - 1, r + half); ++rr) {
          for (long long cc = std::max(0LL, c - half); cc <= std::min(cols - 1, c + half); ++cc) {
            const double v = source(rr, cc);
            energy += v * v;
          }
        }
        band(r, c) = source(r, c) * neigh_shrink_factor(lambda_sq, energy);
      }
    }
  });
}

namespace shrink_detail {

template <class Shrink>
Image run_denoiser(const Image& image, const DenoiseOptions& opt, Shrink&& shrink, double& sigma_used) {
  const FilterPair filters = wavelet_filters(opt.wavelet);
  if (opt.levels < 1) throw Error(ErrorCode::BadDimensions, "levels must be >= 1");
  const Matrix padded = pad_replicate(image, std::size_t{1} << opt.levels);
  WaveletPyramid pyr = dwt2(padded, opt.levels, filters);
  sigma_used = opt.sigma ? *opt.sigma : estimate_noise_sigma(pyr);
  if (!(sigma_used >= 0.0)) throw Error(ErrorCode::NegativeSigma, "sigma must be >= 0");
  if (sigma_used == 0.0) {
    shrink(pyr, 0.0);
    return image;
  }
  shrink(pyr, sigma_used);
  return crop(idwt2_matrix(pyr, filters), image.width(), image.height());
}

}  // namespace shrink_detail

/// MAD noise estimate of an image after the same padding the denoisers use.
inline double estimate_image_sigma(const Image& image, const DenoiseOptions& opt = {}) {
  if (opt.levels < 1) throw Error(ErrorCode::BadDimensions, "levels must be >= 1");
  const Matrix padded = pad_replicate(image, std::size_t{1} << opt.levels);
  return estimate_noise_sigma(dwt2(padded, 1, wavelet_filters(opt.wavelet)));
}

struct SureDenoised {
  Image image;
  ThresholdReport report;
  double sigma;
};

/// Pads by edge replication to a multiple of 2^levels, thresholds, reconstructs
/// and crops. sigma = 0 returns the input unchanged.
inline SureDenoised denoise_sureshrink(const Image& image, const DenoiseOptions& opt = {}) {
  ThresholdReport report;
  double sigma = 0.0;
  Image out = shrink_detail::run_denoiser(
      image, opt, [&](WaveletPyramid& p, double s) { report = sure_shrink_pyramid(p, s); }, sigma);
  return {std::move(out), std::move(report), sigma};
}

inline Image denoise_neighshrink(const Image& image, const DenoiseOptions& opt = {}) {
  if (opt.window % 2 == 0) throw Error(ErrorCode::EvenWindow, "window must be odd, got " + std::to_string(opt.window));
  double sigma = 0.0;
  return shrink_detail::run_denoiser(
      image, opt, [&](WaveletPyramid& p, double s) { neigh_shrink_pyramid(p, s, opt.window); }, sigma);
}

}  // namespace wakedet
