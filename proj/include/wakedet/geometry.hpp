#pragma once

// Line geometry shared by the scene generator and the Radon transform.
// Coordinates are center-origin: x = col - (M-1)/2, y = row - (M-1)/2, y down.
// A line is the set { (x, y) : x*cos(theta) + y*sin(theta) = rho }.

#include <cmath>
#include <numbers>
#include <utility>

namespace wakedet {

struct CosSin {
  double cos;
  double sin;
};

/// cos/sin of an angle in degrees, exact at multiples of 90.
inline CosSin cos_sin_deg(double degrees) noexcept {
  const double quarter = degrees / 90.0;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<long long>(std::fmod(std::fmod(quarter, 4.0) + 4.0, 4.0))) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double rad = degrees * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

/// Reduces an arbitrary (rho, theta) line to theta in [0, 180), flipping the
/// sign of rho for every half-turn removed.
inline std::pair<double, double> normalize_line(double rho, double theta_deg) noexcept {
  while (theta_deg >= 180.0) {
    theta_deg -= 180.0;
    rho = -rho;
  }
  while (theta_deg < 0.0) {
    theta_deg += 180.0;
    rho = -rho;
  }
  return {rho, theta_deg};
}

/// Image center along one axis, (M-1)/2.
inline double center_of(std::size_t extent) noexcept { return (static_cast<double>(extent) - 1.0) / 2.0; }

/// Nearest pixel index for a center-origin coordinate, ties rounded up.
inline long long nearest_index(double coord, double center) noexcept {
  return static_cast<long long>(std::floor(coord + center + 0.5));
}

}  // namespace wakedet
