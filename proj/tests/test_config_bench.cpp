#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "wakedet/bench.hpp"
#include "wakedet/config.hpp"

using namespace wakedet;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

std::vector<std::string> body_rows(const std::string& csv) {
  std::vector<std::string> rows;
  for (const auto& l : lines_of(csv))
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  return rows;
}

}  // namespace

TEST(Config, ParsesKeyValueText) {
  RunConfig cfg;
  apply_config_text(cfg,
                    "# scene\n"
                    "size = 64\n"
                    "theta=30\n"
                    "rho = -4.5\n"
                    "\n"
                    "sigmas = 10, 20\n"
                    "methods = sure,neighshrink\n"
                    "scenes = 10:1, 20:-2, 30:0\n"
                    "window = 5\n"
                    "estimate_sigma = true\n");
  EXPECT_EQ(cfg.scene.size, 64u);
  EXPECT_EQ(cfg.scene.track_theta, 30.0);
  EXPECT_EQ(cfg.scene.track_rho, -4.5);
  EXPECT_EQ(cfg.sigmas, (std::vector<double>{10, 20}));
  EXPECT_EQ(cfg.methods, (std::vector<Denoiser>{Denoiser::Sure, Denoiser::NeighShrink}));
  EXPECT_EQ(cfg.bench_scenes.size(), 3u);
  EXPECT_EQ(cfg.bench_scenes[1].rho, -2.0);
  EXPECT_EQ(cfg.window, 5u);
  EXPECT_TRUE(cfg.estimate_sigma);
}

TEST(Config, LaterSettingsWin) {
  RunConfig cfg;
  apply_config_text(cfg, "levels=3\nseed=5\n");
  apply_setting(cfg, "levels", "2");
  EXPECT_EQ(cfg.levels, 2u);
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.scene.seed, 5u);
}

TEST(Config, Errors) {
  RunConfig cfg;
  auto code = [&](const std::string& text) {
    try {
      apply_config_text(cfg, text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoFailure;
  };
  EXPECT_EQ(code("bogus=1"), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("levels"), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("levels=abc"), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("levels=0"), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("sigmas="), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("sigmas=-5"), ErrorCode::NegativeSigma);
  EXPECT_EQ(code("methods=wiener"), ErrorCode::InvalidConfig);
  EXPECT_EQ(code("scenes=10"), ErrorCode::InvalidConfig);
  RunConfig fresh;
  EXPECT_THROW(apply_config_file(fresh, "/nonexistent/config.txt"), Error);
}

TEST(Bench, CardinalityAndOrder) {
  RunConfig cfg;
  cfg.methods = {Denoiser::Sure, Denoiser::NeighShrink};
  std::ostringstream csv, timing;
  const auto records = run_bench(cfg, csv, &timing);
  EXPECT_EQ(records.size(), 24u);

  const auto rows = body_rows(csv.str());
  ASSERT_EQ(rows.size(), 25u);
  EXPECT_EQ(rows[0], bench_csv_header());
  const std::size_t columns = split_csv(rows[0]).size();
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(split_csv(rows[i]).size(), columns) << rows[i];

  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const auto key_a = std::tie(a.image_id, a.method, a.sigma);
    EXPECT_TRUE(a.image_id < b.image_id ||
                (a.image_id == b.image_id && std::string(to_string(a.method)) < std::string(to_string(b.method))) ||
                (a.image_id == b.image_id && a.method == b.method && a.sigma < b.sigma))
        << i;
    (void)key_a;
  }
  EXPECT_EQ(lines_of(timing.str()).size(), 25u);
  for (const auto& r : records) {
    EXPECT_GE(r.elapsed_ms, 0.0);
    EXPECT_EQ(r.sigma_used, r.sigma);
  }

  const std::string text = csv.str();
  EXPECT_NE(text.find("# seed="), std::string::npos);
  EXPECT_NE(text.find("# padding="), std::string::npos);
  EXPECT_NE(text.find("# sigma_source=true"), std::string::npos);
  EXPECT_NE(text.find("# wavelet=sym8"), std::string::npos);
}

TEST(Bench, DeterministicCsv) {
  RunConfig cfg;
  cfg.sigmas = {20, 50};
  std::ostringstream a, b;
  run_bench(cfg, a);
  run_bench(cfg, b);
  EXPECT_EQ(a.str(), b.str());
  RunConfig other = cfg;
  other.seed = cfg.seed + 1;
  std::ostringstream c;
  run_bench(other, c);
  EXPECT_NE(body_rows(a.str()), body_rows(c.str()));
}

TEST(Bench, EstimatedSigmaIsRecorded) {
  RunConfig cfg;
  cfg.sigmas = {30};
  cfg.methods = {Denoiser::Sure};
  cfg.estimate_sigma = true;
  std::ostringstream csv;
  const auto recs = run_bench(cfg, csv);
  ASSERT_EQ(recs.size(), 2u);
  for (const auto& r : recs) EXPECT_NEAR(r.sigma_used, 30.0, 4.0);
  EXPECT_NE(csv.str().find("# sigma_source=estimated"), std::string::npos);
}

TEST(Bench, NoneMethodRowsAndPsnr) {
  RunConfig cfg;
  cfg.sigmas = {0, 10};
  cfg.methods = {Denoiser::None};
  std::ostringstream csv;
  const auto recs = run_bench(cfg, csv);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_TRUE(std::isinf(recs[0].psnr_db));
  EXPECT_NE(csv.str().find(",inf,"), std::string::npos);
}

TEST(Bench, InvalidSceneAborts) {
  RunConfig cfg;
  cfg.bench_scenes = {{200.0, 0.0}};
  std::ostringstream csv;
  EXPECT_THROW(run_bench(cfg, csv), Error);
}
