// wakedet command-line tool: synth | noise | denoise | radon | detect | bench.
//
// Every subcommand accepts --config FILE (key=value lines); explicit flags
// override values from the file. Machine output goes to stdout or files,
// diagnostics to stderr. Exit status is 0 only when nothing failed.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wakedet/wakedet.hpp"

namespace {

using namespace wakedet;

// Flags that map one-to-one onto config keys.
class ConfigFlags {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    CLI::Option* opt = app->add_option(flag, values_[key], help);
    bound_.push_back({key, opt});
  }

  void add_config_file(CLI::App* app) { app->add_option("--config", config_path_, "key=value config file"); }

  RunConfig resolve() {
    RunConfig cfg;
    if (!config_path_.empty()) apply_config_file(cfg, config_path_);
    for (const auto& [key, opt] : bound_) {
      if (opt->count() > 0) apply_setting(cfg, key, values_[key]);
    }
    return cfg;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> bound_;
  std::string config_path_;
};

void add_shared(ConfigFlags& f, CLI::App* app) {
  f.add_config_file(app);
  f.add(app, "--seed", "seed", "base seed");
  f.add(app, "--wavelet", "wavelet", "wavelet: sym8 (default), db8, haar");
  f.add(app, "--levels", "levels", "decomposition levels (default 4)");
  f.add(app, "--window", "window", "NeighShrink window side, odd (default 3)");
  f.add(app, "--theta-step", "theta_step", "Radon angle step in degrees (default 1)");
  f.add(app, "--out-dir", "out_dir", "output directory (default .)");
}

void add_scene(ConfigFlags& f, CLI::App* app) {
  f.add(app, "--size", "size", "scene side in pixels (default 120)");
  f.add(app, "--theta", "theta", "track angle in degrees, [0,180)");
  f.add(app, "--rho", "rho", "track offset from center in pixels");
  f.add(app, "--arm-half-angle", "arm_half_angle", "arm half-angle in degrees (default 19.5)");
  f.add(app, "--background", "background", "background grey level");
  f.add(app, "--delta", "delta", "signed line contrast");
  f.add(app, "--texture", "texture", "background texture std, 0..2");
}

void add_peaks(ConfigFlags& f, CLI::App* app) {
  f.add(app, "-k,--peaks", "k", "number of peaks to report (default 3)");
  f.add(app, "--nms-rho", "nms_rho", "suppression half-width in rho (default 5)");
  f.add(app, "--nms-theta", "nms_theta", "suppression half-width in theta (default 5)");
  f.add(app, "--min-count", "min_count", "minimum samples per cell (default size/4)");
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot create '" + p.string() + "'");
  return out;
}

void write_truth_csv(const GroundTruth& truth, std::ostream& out) {
  out << "rho,theta,sign\n";
  out.precision(17);
  for (const auto& l : truth.lines) out << l.rho << ',' << l.theta << ',' << l.sign << '\n';
}

void dump_subbands(const WaveletPyramid& pyr, const std::string& dir) {
  std::filesystem::create_directories(dir);
  save_pgm(rescale_to_grey(pyr.ll), (std::filesystem::path(dir) / "LL.pgm").string());
  for_each_detail(pyr, [&](std::size_t level, BandKind kind, const Matrix& band) {
    save_pgm(rescale_to_grey(band), (std::filesystem::path(dir) / (subband_name(level, kind) + ".pgm")).string());
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ship-wake line detection: wavelet shrinkage + discrete Radon transform"};
  app.require_subcommand(1);

  // synth
  ConfigFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "write a synthetic wake scene and its ground truth");
  add_shared(synth_flags, synth);
  add_scene(synth_flags, synth);
  std::string synth_name = "scene";
  synth->add_option("--name", synth_name, "file stem for <name>.pgm and <name>_truth.csv");

  // noise
  ConfigFlags noise_flags;
  auto* noise = app.add_subcommand("noise", "add seeded Gaussian noise to a PGM");
  add_shared(noise_flags, noise);
  noise_flags.add(noise, "--sigma", "sigma", "noise std in grey levels");
  std::string noise_in, noise_out;
  noise->add_option("input", noise_in, "input PGM")->required();
  noise->add_option("-o,--output", noise_out, "output PGM")->required();

  // denoise
  ConfigFlags denoise_flags;
  auto* denoise = app.add_subcommand("denoise", "wavelet-shrinkage denoise a PGM");
  add_shared(denoise_flags, denoise);
  denoise_flags.add(denoise, "--sigma", "sigma", "noise std (default: MAD estimate)");
  std::string denoise_in, denoise_out, denoise_method = "sure", denoise_report, denoise_dump;
  denoise->add_option("input", denoise_in, "input PGM")->required();
  denoise->add_option("-o,--output", denoise_out, "output PGM")->required();
  denoise->add_option("--method", denoise_method, "sure | neighshrink")->check(CLI::IsMember({"sure", "neighshrink"}));
  denoise->add_option("--report", denoise_report, "threshold report CSV (sure only)");
  denoise->add_option("--dump-subbands", denoise_dump, "directory for rescaled subband PGMs of the input");

  // radon
  ConfigFlags radon_flags;
  auto* radon = app.add_subcommand("radon", "discrete Radon transform of a square PGM");
  add_shared(radon_flags, radon);
  std::string radon_in, radon_csv, radon_heatmap;
  radon->add_option("input", radon_in, "input PGM")->required();
  radon->add_option("--csv", radon_csv, "sinogram CSV path (default stdout)");
  radon->add_option("--heatmap", radon_heatmap, "rescaled sinogram PGM path");

  // detect
  ConfigFlags detect_flags;
  auto* detect = app.add_subcommand("detect", "detect wake lines; prints ranked peaks as CSV");
  add_shared(detect_flags, detect);
  add_peaks(detect_flags, detect);
  detect_flags.add(detect, "--sigma", "sigma", "noise std for the denoiser (default: MAD estimate)");
  std::string detect_in, detect_denoiser = "none", detect_sino_csv, detect_sino_pgm, detect_reference;
  detect->add_option("input", detect_in, "input PGM")->required();
  detect->add_option("--denoiser", detect_denoiser, "none | sure | neighshrink")
      ->check(CLI::IsMember({"none", "sure", "neighshrink"}));
  detect->add_option("--sinogram-csv", detect_sino_csv, "write the sinogram as CSV");
  detect->add_option("--sinogram-pgm", detect_sino_pgm, "write the sinogram as a rescaled PGM");
  detect->add_option("--reference", detect_reference, "clean PGM; quality summary goes to stderr");

  // bench
  ConfigFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "PSNR / time / (rho, theta) comparison over scenes, sigmas, methods");
  add_shared(bench_flags, bench);
  add_scene(bench_flags, bench);
  add_peaks(bench_flags, bench);
  bench_flags.add(bench, "--sigmas", "sigmas", "comma list (default 10,20,30,50,75,100)");
  bench_flags.add(bench, "--methods", "methods", "comma list of none,sure,neighshrink");
  bench_flags.add(bench, "--scenes", "scenes", "comma list of theta:rho (default 85:-12,45:10)");
  bench_flags.add(bench, "--estimate-sigma", "estimate_sigma", "use the MAD estimate instead of the true sigma");
  std::string bench_out, bench_timing;
  bench->add_option("-o,--output", bench_out, "report CSV path (default stdout)");
  bench->add_option("--timing", bench_timing, "timing CSV path (default <out-dir>/bench_timing.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      RunConfig cfg = synth_flags.resolve();
      cfg.scene.seed = cfg.seed;
      const auto result = synth_wake(cfg.scene);
      save_pgm(result.image, out_path(cfg, synth_name + ".pgm").string());
      auto truth = open_out(out_path(cfg, synth_name + "_truth.csv"));
      write_truth_csv(result.truth, truth);
    } else if (*noise) {
      RunConfig cfg = noise_flags.resolve();
      if (!cfg.sigma) throw Error(ErrorCode::InvalidConfig, "noise needs --sigma");
      const Image in = load_pgm(noise_in);
      save_pgm(add_gaussian_noise(in, {*cfg.sigma, cfg.seed}), noise_out);
    } else if (*denoise) {
      RunConfig cfg = denoise_flags.resolve();
      const Image in = load_pgm(denoise_in);
      const DenoiseOptions opt = cfg.denoise_options();
      if (!denoise_dump.empty()) {
        dump_subbands(dwt2(pad_replicate(in, std::size_t{1} << opt.levels), opt.levels, wavelet_filters(opt.wavelet)),
                      denoise_dump);
      }
      if (denoise_method == "sure") {
        const auto out = denoise_sureshrink(in, opt);
        save_pgm(out.image, denoise_out);
        if (!denoise_report.empty()) {
          auto report = open_out(denoise_report);
          write_threshold_csv(out.report, report);
        }
      } else {
        save_pgm(denoise_neighshrink(in, opt), denoise_out);
      }
    } else if (*radon) {
      RunConfig cfg = radon_flags.resolve();
      const Sinogram sino = radon_transform(load_pgm(radon_in), cfg.theta_step);
      if (radon_csv.empty()) {
        write_sinogram_csv(sino, std::cout);
      } else {
        auto out = open_out(radon_csv);
        write_sinogram_csv(sino, out);
      }
      if (!radon_heatmap.empty()) save_pgm(rescale_to_grey(sino.accum), radon_heatmap);
    } else if (*detect) {
      RunConfig cfg = detect_flags.resolve();
      DetectOptions opt;
      opt.denoiser = parse_denoiser(detect_denoiser);
      opt.denoise = cfg.denoise_options();
      opt.peaks = cfg.peaks;
      opt.theta_step = cfg.theta_step;
      const Image in = load_pgm(detect_in);
      std::optional<Image> reference;
      if (!detect_reference.empty()) reference = load_pgm(detect_reference);
      const auto result = detect_wake(in, opt, reference ? &*reference : nullptr);
      write_detection_csv(result.detection, std::cout);
      if (result.detection.low_confidence) {
        std::cerr << "warning: top peak has zero score; detection is low-confidence\n";
      }
      if (result.quality) {
        std::cerr << "quality: mse=" << result.quality->mse << " psnr_db=" << result.quality->psnr
                  << " snr=" << result.quality->snr << '\n';
      }
      if (!detect_sino_csv.empty()) {
        auto out = open_out(detect_sino_csv);
        write_sinogram_csv(result.sinogram, out);
      }
      if (!detect_sino_pgm.empty()) save_pgm(rescale_to_grey(result.sinogram.accum), detect_sino_pgm);
    } else if (*bench) {
      RunConfig cfg = bench_flags.resolve();
      auto timing = open_out(bench_timing.empty() ? out_path(cfg, "bench_timing.csv") : std::filesystem::path(bench_timing));
      if (bench_out.empty()) {
        run_bench(cfg, std::cout, &timing);
      } else {
        auto out = open_out(bench_out);
        run_bench(cfg, out, &timing);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
