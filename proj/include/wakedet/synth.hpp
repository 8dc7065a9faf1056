#pragma once

// Parametric synthetic wake scenes with exact ground truth.
//
// The ship sits at the foot of the perpendicular from the image center onto
// the track line, V = track_rho * (cos, sin)(track_theta). The track
// (turbulent centerline) is drawn across the whole image. The two arms are
// rays leaving V behind the ship, each rotated by +/- arm_half_angle from the
// track direction d = (-sin, cos)(track_theta).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/geometry.hpp"
#include "wakedet/image.hpp"
#include "wakedet/noise.hpp"

namespace wakedet {

struct WakeScene {
  std::size_t size = 120;
  double track_theta = 45.0;  ///< degrees, [0, 180)
  double track_rho = 10.0;    ///< pixels from center
  double arm_half_angle = 19.5;
  double background = 100.0;
  double line_delta = 100.0;  ///< negative for radar-dark wakes
  double texture_std = 1.0;  ///< 0..2 grey levels
  std::uint64_t seed = 1;
};

enum class LineRole { Centerline, ArmPlus, ArmMinus };

inline const char* to_string(LineRole r) noexcept {
  switch (r) {
    case LineRole::Centerline: return "centerline";
    case LineRole::ArmPlus: return "arm+";
    case LineRole::ArmMinus: return "arm-";
  }
  return "?";
}

struct WakeLine {
  LineRole role;
  double rho;
  double theta;
  int sign;  ///< +1 bright, -1 dark
};

struct GroundTruth {
  std::vector<WakeLine> lines;  ///< centerline first, then arm+, arm-
};

struct SynthResult {
  Image image;
  GroundTruth truth;
  /// Pixels touched per line, (row, col), in line order; used to verify rasterization.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touched;
};

inline void validate(const WakeScene& s) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidScene, why); };
  if (s.size < 16) fail("size must be >= 16");
  if (!(s.track_theta >= 0.0 && s.track_theta < 180.0)) fail("track_theta must be in [0, 180)");
  if (!(std::abs(s.track_rho) < static_cast<double>(s.size) / std::sqrt(2.0))) {
    fail("|track_rho| must be < size/sqrt(2)");
  }
  if (!(s.arm_half_angle > 0.0 && s.arm_half_angle < 90.0)) fail("arm_half_angle must be in (0, 90)");
  if (!std::isfinite(s.background) || !std::isfinite(s.line_delta)) fail("non-finite grey level");
  if (!(s.texture_std >= 0.0 && s.texture_std <= 2.0)) fail("texture_std must be in [0, 2]");
}

namespace synth_detail {

struct Ray {
  double vx, vy;  // origin
  double dx, dy;  // direction; ignored when full
  bool full;
};

// One pixel per row (steep lines) or per column (shallow lines), rounded to
// nearest; every touched pixel center is within 0.5 px of the line along the
// stepping axis.
inline std::vector<std::pair<std::size_t, std::size_t>> rasterize(std::size_t m, double rho, double theta,
                                                                  const Ray& ray) {
  const auto [c, s] = cos_sin_deg(theta);
  const double ctr = center_of(m);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto keep = [&](double x, double y) { return ray.full || (x - ray.vx) * ray.dx + (y - ray.vy) * ray.dy >= 0.0; };
  const auto n = static_cast<long long>(m);
  if (std::abs(c) >= std::abs(s)) {
    for (long long row = 0; row < n; ++row) {
      const double y = static_cast<double>(row) - ctr;
      const double x = (rho - y * s) / c;
      const long long col = nearest_index(x, ctr);
      if (col < 0 || col >= n || !keep(x, y)) continue;
      out.emplace_back(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
    }
  } else {
    for (long long col = 0; col < n; ++col) {
      const double x = static_cast<double>(col) - ctr;
      const double y = (rho - x * c) / s;
      const long long row = nearest_index(y, ctr);
      if (row < 0 || row >= n || !keep(x, y)) continue;
      out.emplace_back(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
    }
  }
  return out;
}

}  // namespace synth_detail

inline SynthResult synth_wake(const WakeScene& scene) {
  validate(scene);
  const std::size_t m = scene.size;
  const int sign = scene.line_delta < 0.0 ? -1 : 1;

  const auto [tc, ts] = cos_sin_deg(scene.track_theta);
  const double vx = scene.track_rho * tc;
  const double vy = scene.track_rho * ts;

  GroundTruth truth;
  std::vector<synth_detail::Ray> rays;
  truth.lines.push_back({LineRole::Centerline, scene.track_rho, scene.track_theta, sign});
  rays.push_back({vx, vy, 0.0, 0.0, true});

  const double cos_half = cos_sin_deg(scene.arm_half_angle).cos;
  for (const auto& [role, offset] : {std::pair{LineRole::ArmPlus, scene.arm_half_angle},
                                     std::pair{LineRole::ArmMinus, -scene.arm_half_angle}}) {
    const double phi = scene.track_theta + offset;
    const auto [pc, ps] = cos_sin_deg(phi);
    // The arm passes through V, so its offset is V . n(phi) = rho * cos(offset).
    const auto [rho, theta] = normalize_line(scene.track_rho * cos_half, phi);
    truth.lines.push_back({role, rho, theta, sign});
    rays.push_back({vx, vy, -ps, pc, false});
  }

  std::vector<double> px(m * m, scene.background);
  if (scene.texture_std > 0.0) {
    BoxMullerNormal normal(scene.seed);
    for (double& v : px) v += scene.texture_std * normal();
  }

  SynthResult result{Image(m, m), std::move(truth), {}};
  std::vector<bool> on_line(m * m, false);
  for (std::size_t i = 0; i < result.truth.lines.size(); ++i) {
    const auto& line = result.truth.lines[i];
    auto pixels = synth_detail::rasterize(m, line.rho, line.theta, rays[i]);
    for (const auto& [r, c] : pixels) on_line[r * m + c] = true;
    result.touched.push_back(std::move(pixels));
  }
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (on_line[i]) px[i] += scene.line_delta;
  }
  result.image = Image(m, m, std::move(px));
  return result;
}

}  // namespace wakedet
