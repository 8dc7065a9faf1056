#pragma once

// Bench harness: for each scene x sigma x method, synthesize and noise the
// scene (seeded), time the denoise call, score PSNR against the clean scene and
// run the detector. Records are produced in (image_id, method, sigma) order
// and written as they are computed.
//
// Wall-clock time is the only nondeterministic quantity, so it goes to a
// separate timing stream; the main CSV is a pure function of the config.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "wakedet/config.hpp"
#include "wakedet/detect.hpp"
#include "wakedet/metrics.hpp"
#include "wakedet/noise.hpp"
#include "wakedet/synth.hpp"

namespace wakedet {

struct BenchRecord {
  std::string image_id;
  Denoiser method = Denoiser::None;
  double sigma = 0.0;       ///< injected
  double sigma_used = 0.0;  ///< passed to the denoiser (true or estimated)
  double psnr_db = 0.0;
  double snr = 0.0;
  double elapsed_ms = 0.0;
  int rho = 0;
  double theta = 0.0;
  double score = 0.0;
  double arm_angle = 0.0;
  double truth_rho = 0.0;
  double truth_theta = 0.0;
};

inline const char* bench_csv_header() {
  return "image_id,method,sigma,sigma_used,psnr_db,snr,rho,theta,score,arm_angle,truth_rho,truth_theta";
}

namespace bench_detail {

inline std::string fmt(double v, int decimals = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace bench_detail

inline void write_bench_row(const BenchRecord& r, std::ostream& out) {
  using bench_detail::fmt;
  out << r.image_id << ',' << to_string(r.method) << ',' << fmt(r.sigma, 3) << ',' << fmt(r.sigma_used) << ','
      << fmt(r.psnr_db) << ',' << fmt(r.snr) << ',' << r.rho << ',' << fmt(r.theta, 3) << ',' << fmt(r.score)
      << ',' << fmt(r.arm_angle, 3) << ',' << fmt(r.truth_rho) << ',' << fmt(r.truth_theta, 3) << '\n';
}

inline void write_bench_metadata(const RunConfig& cfg, std::ostream& out) {
  out << "# wakedet bench\n"
      << "# seed=" << cfg.seed << '\n'
      << "# wavelet=" << cfg.wavelet << " levels=" << cfg.levels << " window=" << cfg.window
      << " theta_step=" << bench_detail::fmt(cfg.theta_step, 3) << '\n'
      << "# padding=edge-replicate to a multiple of 2^levels, cropped after reconstruction\n"
      << "# sigma_source=" << (cfg.estimate_sigma ? "estimated (median |HH1| / 0.6745)" : "true (injected)")
      << '\n'
      << "# noise=mt19937_64 + Box-Muller, unclamped\n"
      << "# psnr_peak=255\n"
      << "# rho=center-origin pixels, theta=degrees in [0,180)\n";
}

/// Image ids are "scene1", "scene2", ... in config order.
inline std::string bench_image_id(std::size_t scene_index) { return "scene" + std::to_string(scene_index + 1); }

inline WakeScene bench_scene(const RunConfig& cfg, std::size_t scene_index) {
  WakeScene s = cfg.scene;
  s.track_theta = cfg.bench_scenes.at(scene_index).theta;
  s.track_rho = cfg.bench_scenes.at(scene_index).rho;
  s.seed = mix_seed(cfg.seed, 1000 + scene_index);
  return s;
}

inline std::uint64_t bench_noise_seed(const RunConfig& cfg, std::size_t scene_index, std::size_t sigma_index) {
  return mix_seed(mix_seed(cfg.seed, scene_index), sigma_index);
}

/// Runs the full grid. `csv` gets the metadata block, header and rows;
/// `timing`, when given, gets image_id,method,sigma,elapsed_ms rows.
inline std::vector<BenchRecord> run_bench(const RunConfig& cfg, std::ostream& csv, std::ostream* timing = nullptr) {
  if (cfg.sigmas.empty()) throw Error(ErrorCode::InvalidConfig, "sigma list is empty");
  if (cfg.methods.empty()) throw Error(ErrorCode::InvalidConfig, "method list is empty");
  if (cfg.levels < 1) throw Error(ErrorCode::InvalidConfig, "levels must be >= 1");

  struct Scene {
    std::string id;
    std::size_t index;
  };
  std::vector<Scene> scenes;
  for (std::size_t i = 0; i < cfg.bench_scenes.size(); ++i) {
    validate(bench_scene(cfg, i));
    scenes.push_back({bench_image_id(i), i});
  }
  std::sort(scenes.begin(), scenes.end(), [](const Scene& a, const Scene& b) { return a.id < b.id; });

  std::vector<Denoiser> methods = cfg.methods;
  std::sort(methods.begin(), methods.end(),
            [](Denoiser a, Denoiser b) { return std::string(to_string(a)) < std::string(to_string(b)); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<std::size_t> sigma_order(cfg.sigmas.size());
  for (std::size_t i = 0; i < sigma_order.size(); ++i) sigma_order[i] = i;
  std::stable_sort(sigma_order.begin(), sigma_order.end(),
                   [&](std::size_t a, std::size_t b) { return cfg.sigmas[a] < cfg.sigmas[b]; });

  write_bench_metadata(cfg, csv);
  csv << bench_csv_header() << '\n';
  if (timing) *timing << "image_id,method,sigma,elapsed_ms\n";

  std::vector<BenchRecord> records;
  for (const auto& scene : scenes) {
    const auto synth = synth_wake(bench_scene(cfg, scene.index));
    const auto& truth = synth.truth.lines.front();
    const double signal_std = empirical_std(synth.image);
    for (Denoiser method : methods) {
      for (std::size_t si : sigma_order) {
        const double sigma = cfg.sigmas[si];
        const Image noisy = add_gaussian_noise(synth.image, {sigma, bench_noise_seed(cfg, scene.index, si)});

        DenoiseOptions dopt = cfg.denoise_options();
        dopt.sigma = cfg.estimate_sigma ? estimate_image_sigma(noisy, dopt) : sigma;

        BenchRecord rec;
        rec.image_id = scene.id;
        rec.method = method;
        rec.sigma = sigma;
        rec.sigma_used = method == Denoiser::None ? 0.0 : *dopt.sigma;
        rec.truth_rho = truth.rho;
        rec.truth_theta = truth.theta;

        const auto start = std::chrono::steady_clock::now();
        const Image processed = apply_denoiser(noisy, method, dopt);
        const auto stop = std::chrono::steady_clock::now();
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();

        rec.psnr_db = psnr(synth.image, processed);
        rec.snr = sigma > 0.0 ? snr(signal_std, sigma) : std::numeric_limits<double>::infinity();
        const auto det = detect_from_sinogram(radon_transform(processed, cfg.theta_step), cfg.peaks);
        rec.rho = det.peaks.front().rho;
        rec.theta = det.peaks.front().theta;
        rec.score = det.peaks.front().score;
        rec.arm_angle = det.arm_angle;

        write_bench_row(rec, csv);
        csv.flush();
        if (timing) {
          *timing << rec.image_id << ',' << to_string(method) << ',' << bench_detail::fmt(sigma, 3) << ','
                  << bench_detail::fmt(rec.elapsed_ms, 3) << '\n';
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

}  // namespace wakedet
