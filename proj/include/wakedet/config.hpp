#pragma once

// Run configuration shared by the CLI subcommands and the bench harness.
// Settings come from an optional key=value text block; command-line flags are
// applied afterwards through the same setter, so flags win.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wakedet/detect.hpp"
#include "wakedet/error.hpp"
#include "wakedet/radon.hpp"
#include "wakedet/synth.hpp"

namespace wakedet {

struct SceneGeometry {
  double theta;
  double rho;
};

struct RunConfig {
  WakeScene scene;
  std::vector<SceneGeometry> bench_scenes{{85.0, -12.0}, {45.0, 10.0}};
  std::vector<double> sigmas{10, 20, 30, 50, 75, 100};
  std::vector<Denoiser> methods{Denoiser::None, Denoiser::Sure, Denoiser::NeighShrink};
  std::uint64_t seed = 20100101;
  std::string wavelet = "sym8";
  std::size_t levels = 4;
  std::size_t window = 3;
  double theta_step = 1.0;
  std::string out_dir = ".";
  PeakOptions peaks;
  bool estimate_sigma = false;
  std::optional<double> sigma;

  DenoiseOptions denoise_options() const {
    DenoiseOptions o;
    o.wavelet = wavelet;
    o.levels = levels;
    o.window = window;
    o.sigma = sigma;
    return o;
  }
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double to_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is available from libstdc++ 11.
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + ": '" + std::string(v) + "' is not a number");
  }
  return out;
}

inline std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + ": '" + std::string(v) + "' is not an unsigned integer");
  }
  return out;
}

inline bool to_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw Error(ErrorCode::InvalidConfig, std::string(key) + ": '" + std::string(v) + "' is not a boolean");
}

}  // namespace config_detail

/// Recognized keys, in documentation order.
inline const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "size",   "theta",    "rho",     "arm_half_angle", "background", "delta",      "texture",
      "seed",   "sigma",    "sigmas",  "methods",        "scenes",     "wavelet",    "levels",
      "window", "theta_step", "k",     "nms_rho",        "nms_theta",  "min_count",  "estimate_sigma",
      "out_dir"};
  return keys;
}

inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
  using namespace config_detail;
  const std::string_view v = trim(raw);
  if (key == "size") {
    cfg.scene.size = to_uint(key, v);
  } else if (key == "theta") {
    cfg.scene.track_theta = to_double(key, v);
  } else if (key == "rho") {
    cfg.scene.track_rho = to_double(key, v);
  } else if (key == "arm_half_angle") {
    cfg.scene.arm_half_angle = to_double(key, v);
  } else if (key == "background") {
    cfg.scene.background = to_double(key, v);
  } else if (key == "delta") {
    cfg.scene.line_delta = to_double(key, v);
  } else if (key == "texture") {
    cfg.scene.texture_std = to_double(key, v);
  } else if (key == "seed") {
    cfg.seed = to_uint(key, v);
    cfg.scene.seed = cfg.seed;
  } else if (key == "sigma") {
    cfg.sigma = to_double(key, v);
    if (*cfg.sigma < 0.0) throw Error(ErrorCode::NegativeSigma, "sigma must be >= 0");
  } else if (key == "sigmas") {
    cfg.sigmas.clear();
    for (auto item : split(v, ',')) {
      if (item.empty()) continue;
      const double s = to_double(key, item);
      if (s < 0.0) throw Error(ErrorCode::NegativeSigma, "sigmas must be >= 0");
      cfg.sigmas.push_back(s);
    }
    if (cfg.sigmas.empty()) throw Error(ErrorCode::InvalidConfig, "sigmas must not be empty");
  } else if (key == "methods") {
    cfg.methods.clear();
    for (auto item : split(v, ',')) {
      if (!item.empty()) cfg.methods.push_back(parse_denoiser(item));
    }
    if (cfg.methods.empty()) throw Error(ErrorCode::InvalidConfig, "methods must not be empty");
  } else if (key == "scenes") {
    cfg.bench_scenes.clear();
    for (auto item : split(v, ',')) {
      if (item.empty()) continue;
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw Error(ErrorCode::InvalidConfig, "scenes entries are theta:rho");
      cfg.bench_scenes.push_back({to_double(key, parts[0]), to_double(key, parts[1])});
    }
    if (cfg.bench_scenes.empty()) throw Error(ErrorCode::InvalidConfig, "scenes must not be empty");
  } else if (key == "wavelet") {
    cfg.wavelet = std::string(v);
  } else if (key == "levels") {
    cfg.levels = to_uint(key, v);
    if (cfg.levels < 1 || cfg.levels > 16) throw Error(ErrorCode::InvalidConfig, "levels must be in 1..16");
  } else if (key == "window") {
    cfg.window = to_uint(key, v);
  } else if (key == "theta_step") {
    cfg.theta_step = to_double(key, v);
  } else if (key == "k") {
    cfg.peaks.k = to_uint(key, v);
  } else if (key == "nms_rho") {
    cfg.peaks.nms_rho = static_cast<int>(to_uint(key, v));
  } else if (key == "nms_theta") {
    cfg.peaks.nms_theta = to_double(key, v);
  } else if (key == "min_count") {
    cfg.peaks.min_count = to_uint(key, v);
  } else if (key == "estimate_sigma") {
    cfg.estimate_sigma = to_bool(key, v);
  } else if (key == "out_dir") {
    cfg.out_dir = std::string(v);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown key '" + std::string(key) + "'");
  }
}

/// Parses `key = value` lines; blank lines and lines starting with '#' are skipped.
inline void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  for (auto line : config_detail::split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(cfg, config_detail::trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

}  // namespace wakedet
