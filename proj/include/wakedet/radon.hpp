#pragma once

// Discrete Radon transform with nearest-neighbour sampling along each line,
// peak picking with non-maximum suppression, and the wake-arm angle rule.
//
// For a square M x M image with center-origin coordinates (see geometry.hpp),
// accum(rho, theta) = sum over integer s in [-R, R] of
//   I(rho cos - s sin, rho sin + s cos),  R = ceil(M sqrt(2) / 2),
// counting only samples that round to an in-bounds pixel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/geometry.hpp"
#include "wakedet/image.hpp"

namespace wakedet {

struct Sinogram {
  std::vector<double> thetas;  ///< degrees, ascending in [0, 180)
  int max_rho = 0;             ///< R; rho index i maps to rho = i - R
  Matrix accum;                ///< (2R + 1) x thetas.size()
  Matrix counts;
  double image_mean = 0.0;
  std::size_t image_size = 0;

  std::size_t rho_count() const noexcept { return accum.rows(); }
  std::size_t theta_count() const noexcept { return thetas.size(); }
  int rho_at(std::size_t i) const noexcept { return static_cast<int>(i) - max_rho; }
};

inline int radon_max_rho(std::size_t m) noexcept {
  return static_cast<int>(std::ceil(static_cast<double>(m) * std::sqrt(2.0) / 2.0));
}

inline Sinogram radon_transform(const Image& image, double theta_step = 1.0) {
  if (!image.is_square()) throw Error(ErrorCode::NonSquareImage, "radon transform needs a square image");
  if (!(theta_step > 0.0 && theta_step <= 90.0)) throw Error(ErrorCode::BadThetaStep, "theta_step must be in (0, 90]");

  const std::size_t m = image.width();
  const auto n = static_cast<long long>(m);
  const double ctr = center_of(m);

  Sinogram sino;
  sino.image_size = m;
  for (std::size_t i = 0;; ++i) {
    const double theta = static_cast<double>(i) * theta_step;
    if (theta >= 180.0 - 1e-9) break;
    sino.thetas.push_back(theta);
  }
  sino.max_rho = radon_max_rho(m);
  const int r_max = sino.max_rho;
  const std::size_t n_rho = 2 * static_cast<std::size_t>(r_max) + 1;
  sino.accum = Matrix(n_rho, sino.thetas.size());
  sino.counts = Matrix(n_rho, sino.thetas.size());

  double total = 0.0;
  for (double v : image.pixels()) total += v;
  sino.image_mean = total / static_cast<double>(image.pixel_count());

  for (std::size_t ti = 0; ti < sino.thetas.size(); ++ti) {
    const auto [c, s] = cos_sin_deg(sino.thetas[ti]);
    for (int rho = -r_max; rho <= r_max; ++rho) {
      double sum = 0.0;
      int count = 0;
      for (int t = -r_max; t <= r_max; ++t) {
        const double x = rho * c - t * s;
        const double y = rho * s + t * c;
        const long long col = nearest_index(x, ctr);
        const long long row = nearest_index(y, ctr);
        if (col < 0 || col >= n || row < 0 || row >= n) continue;
        sum += image.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
        ++count;
      }
      const auto ri = static_cast<std::size_t>(rho + r_max);
      sino.accum(ri, ti) = sum;
      sino.counts(ri, ti) = count;
    }
  }
  return sino;
}

enum class Polarity { Bright, Dark };

inline const char* to_string(Polarity p) noexcept { return p == Polarity::Bright ? "bright" : "dark"; }

struct Peak {
  int rho;
  double theta;
  double score;
  Polarity polarity;
};

struct PeakOptions {
  std::size_t k = 3;
  int nms_rho = 5;
  double nms_theta = 5.0;
  std::size_t min_count = 0;  ///< 0 means M / 4
};

/// Zero-mean matched-filter score |accum - counts * mean| / sqrt(counts);
/// negative for cells below min_count.
inline Matrix peak_scores(const Sinogram& sino, std::size_t min_count) {
  Matrix score(sino.rho_count(), sino.theta_count(), -1.0);
  for (std::size_t r = 0; r < sino.rho_count(); ++r) {
    for (std::size_t t = 0; t < sino.theta_count(); ++t) {
      const double cnt = sino.counts(r, t);
      if (cnt < static_cast<double>(min_count) || cnt <= 0.0) continue;
      score(r, t) = std::abs(sino.accum(r, t) - cnt * sino.image_mean) / std::sqrt(cnt);
    }
  }
  return score;
}

/// Greedy top-k with non-maximum suppression. Lines near theta = 0 and
/// theta = 180 are the same line with rho negated, so suppression wraps.
inline std::vector<Peak> find_peaks(const Sinogram& sino, const PeakOptions& opt = {}) {
  if (opt.k < 1) throw Error(ErrorCode::InvalidConfig, "k must be >= 1");
  const std::size_t min_count = opt.min_count > 0 ? opt.min_count : std::max<std::size_t>(1, sino.image_size / 4);
  Matrix score = peak_scores(sino, min_count);
  std::vector<bool> alive(score.size());
  bool any = false;
  for (std::size_t i = 0; i < score.size(); ++i) {
    alive[i] = score.values()[i] >= 0.0;
    any = any || alive[i];
  }
  if (!any) throw Error(ErrorCode::NoValidCells, "no sinogram cell has count >= " + std::to_string(min_count));

  const std::size_t cols = sino.theta_count();
  std::vector<Peak> peaks;
  while (peaks.size() < opt.k) {
    std::size_t best = score.size();
    for (std::size_t i = 0; i < score.size(); ++i) {
      if (alive[i] && (best == score.size() || score.values()[i] > score.values()[best])) best = i;
    }
    if (best == score.size()) break;
    const std::size_t br = best / cols, bt = best % cols;
    const int rho = sino.rho_at(br);
    const double theta = sino.thetas[bt];
    const double signed_dev = sino.accum(br, bt) - sino.counts(br, bt) * sino.image_mean;
    peaks.push_back({rho, theta, score.values()[best], signed_dev < 0.0 ? Polarity::Dark : Polarity::Bright});

    for (std::size_t r = 0; r < sino.rho_count(); ++r) {
      const int other_rho = sino.rho_at(r);
      for (std::size_t t = 0; t < cols; ++t) {
        const double dtheta = std::abs(sino.thetas[t] - theta);
        const bool same_side = dtheta <= opt.nms_theta && std::abs(other_rho - rho) <= opt.nms_rho;
        const bool wrapped = 180.0 - dtheta <= opt.nms_theta && std::abs(other_rho + rho) <= opt.nms_rho;
        if (same_side || wrapped) alive[r * cols + t] = false;
      }
    }
  }
  return peaks;
}

/// Arm angle from the Radon peak angle: (theta + 90) mod 180.
inline double wake_arm_angle(double theta_peak) {
  if (!(theta_peak >= 0.0 && theta_peak < 180.0)) {
    throw Error(ErrorCode::OutOfRangeTheta, "theta must be in [0, 180)");
  }
  return std::fmod(theta_peak + 90.0, 180.0);
}

inline void write_sinogram_csv(const Sinogram& sino, std::ostream& out) {
  out << "theta,rho,accum,count\n";
  const auto old_precision = out.precision(17);
  for (std::size_t t = 0; t < sino.theta_count(); ++t) {
    for (std::size_t r = 0; r < sino.rho_count(); ++r) {
      out << sino.thetas[t] << ',' << sino.rho_at(r) << ',' << sino.accum(r, t) << ','
          << static_cast<long long>(sino.counts(r, t)) << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace wakedet
