#include <algorithm>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wakedet/detect.hpp"
#include "wakedet/noise.hpp"
#include "wakedet/radon.hpp"
#include "wakedet/synth.hpp"

using namespace wakedet;

namespace {

std::size_t rho_index(const Sinogram& s, int rho) { return static_cast<std::size_t>(rho + s.max_rho); }

Image rotate_clockwise(const Image& im) {
  const std::size_t n = im.width();
  std::vector<double> px(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) px[c * n + (n - 1 - r)] = im.at(r, c);
  return Image(n, n, std::move(px));
}

double angle_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 180.0 - d);
}

}  // namespace

TEST(Radon, GridShape) {
  const auto s = radon_transform(Image(120, 120));
  EXPECT_EQ(s.theta_count(), 180u);
  EXPECT_EQ(s.max_rho, 85);
  EXPECT_EQ(s.rho_count(), 171u);
  EXPECT_EQ(s.thetas.front(), 0.0);
  EXPECT_EQ(s.thetas.back(), 179.0);
  EXPECT_EQ(radon_transform(Image(16, 16), 45.0).theta_count(), 4u);
}

TEST(Radon, ZeroImage) {
  const auto s = radon_transform(Image(33, 33));
  for (double v : s.accum.values()) EXPECT_EQ(v, 0.0);
  for (std::size_t r = 0; r < s.rho_count(); ++r)
    for (std::size_t t = 0; t < s.theta_count(); ++t)
      if (s.counts(r, t) == 0.0) {
        EXPECT_EQ(s.accum(r, t), 0.0);
      }
}

TEST(Radon, CenterPixelOnEveryLineThroughOrigin) {
  Image im(31, 31);
  im.set(15, 15, 1.0);
  const auto s = radon_transform(im);
  for (std::size_t t = 0; t < s.theta_count(); ++t) {
    EXPECT_EQ(s.accum(rho_index(s, 0), t), 1.0) << s.thetas[t];
    for (std::size_t r = 0; r < s.rho_count(); ++r) {
      if (s.rho_at(r) != 0) {
        EXPECT_EQ(s.accum(r, t), 0.0);
      }
    }
  }
}

TEST(Radon, VerticalLineMatchesBruteForce) {
  // Odd size so column centers sit on integer x.
  const std::size_t m = 41;
  const std::size_t col = 27;
  Image im(m, m);
  for (std::size_t r = 0; r < m; ++r) im.set(r, col, 1.0);
  const auto s = radon_transform(im);
  const int expected_rho = static_cast<int>(col) - 20;
  // theta=179 hits the same column too, so check the peak value rather than its index.
  EXPECT_EQ(*std::max_element(s.accum.values().begin(), s.accum.values().end()), static_cast<double>(m));
  EXPECT_EQ(s.accum(rho_index(s, expected_rho), 0), static_cast<double>(m));
  EXPECT_EQ(oracle::line_membership_sum(im, expected_rho, 0.0), static_cast<double>(m));
  // No cell of either transform beats the true line.
  for (std::size_t t = 0; t < s.theta_count(); t += 7)
    for (std::size_t r = 0; r < s.rho_count(); r += 3)
      EXPECT_LE(oracle::line_membership_sum(im, s.rho_at(r), s.thetas[t]), static_cast<double>(m));
}

TEST(Radon, MassConservationAtThetaZero) {
  for (std::size_t m : {16u, 17u, 120u}) {
    const Image im = oracle::random_image(m, m, m);
    const auto s = radon_transform(im);
    double col_sum = 0.0, total = 0.0, count = 0.0;
    for (std::size_t r = 0; r < s.rho_count(); ++r) {
      col_sum += s.accum(r, 0);
      count += s.counts(r, 0);
    }
    for (double v : im.pixels()) total += v;
    EXPECT_EQ(count, static_cast<double>(m * m));
    EXPECT_NEAR(col_sum, total, 1e-9 * total);
  }
}

TEST(Radon, Errors) {
  EXPECT_THROW(radon_transform(Image(4, 5)), Error);
  EXPECT_THROW(radon_transform(Image(4, 4), 0.0), Error);
  EXPECT_THROW(radon_transform(Image(4, 4), 91.0), Error);
}

TEST(FindPeaks, SingleLineInZeroMeanImage) {
  Image im = add_gaussian_noise(Image(64, 64), {1.0, 3});
  WakeScene s;
  s.size = 64;
  s.track_theta = 33.0;
  s.track_rho = -7.0;
  const auto r = synth_wake(s);
  for (const auto& [row, col] : r.touched[0]) im.set(row, col, im.at(row, col) + 40.0);
  const auto peaks = find_peaks(radon_transform(im), {});
  EXPECT_LE(angle_gap(peaks.front().theta, 33.0), 1.0);
  EXPECT_LE(std::abs(peaks.front().rho + 7), 1);
}

TEST(FindPeaks, ConstantImageScoresZero) {
  const auto sino = radon_transform(Image(40, 40, 128.0));
  const auto peaks = find_peaks(sino, {});
  ASSERT_EQ(peaks.size(), 3u);
  for (const auto& p : peaks) EXPECT_EQ(p.score, 0.0);
}

TEST(FindPeaks, TwoParallelLines) {
  Image im(80, 80);
  for (std::size_t r = 0; r < 80; ++r) {
    im.set(r, 30, 50.0);
    im.set(r, 50, 50.0);
  }
  PeakOptions opt;
  opt.k = 2;
  const auto peaks = find_peaks(radon_transform(im), opt);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_EQ(peaks[0].theta, peaks[1].theta);
  EXPECT_NEAR(std::abs(peaks[0].rho - peaks[1].rho), 20, 1);
  EXPECT_GE(peaks[0].score, peaks[1].score);
}

TEST(FindPeaks, SuppressionWrapsAt180) {
  // A line at theta ~ 0 is also represented near theta = 180 with rho negated.
  Image im(60, 60);
  for (std::size_t r = 0; r < 60; ++r) im.set(r, 40, 50.0);
  PeakOptions opt;
  opt.k = 2;
  const auto peaks = find_peaks(radon_transform(im), opt);
  ASSERT_EQ(peaks.size(), 2u);
  const bool duplicate = peaks[1].theta >= 175.0 && std::abs(peaks[1].rho + peaks[0].rho) <= 5;
  EXPECT_FALSE(duplicate) << peaks[1].rho << "," << peaks[1].theta;
}

TEST(FindPeaks, NoValidCells) {
  PeakOptions opt;
  opt.min_count = 10000;
  try {
    find_peaks(radon_transform(Image(20, 20)), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidCells);
  }
}

TEST(WakeArm, AddsNinetyModulo180) {
  EXPECT_EQ(wake_arm_angle(85.0), 175.0);
  EXPECT_EQ(wake_arm_angle(45.0), 135.0);
  EXPECT_EQ(wake_arm_angle(170.0), 80.0);
  EXPECT_EQ(wake_arm_angle(0.0), 90.0);
  EXPECT_THROW(wake_arm_angle(180.0), Error);
  EXPECT_THROW(wake_arm_angle(-1.0), Error);
}

TEST(DetectWake, SureOnNoisySceneRecoversTrack) {
  WakeScene s;
  s.track_theta = 45.0;
  s.track_rho = 10.0;
  const auto r = synth_wake(s);
  const Image noisy = add_gaussian_noise(r.image, {20.0, 12});
  DetectOptions opt;
  opt.denoiser = Denoiser::Sure;
  const auto out = detect_wake(noisy, opt, &r.image);
  EXPECT_LE(angle_gap(out.detection.peaks.front().theta, 45.0), 1.0);
  EXPECT_LE(std::abs(out.detection.peaks.front().rho - 10), 2);
  EXPECT_EQ(out.detection.arm_angle, wake_arm_angle(out.detection.peaks.front().theta));
  ASSERT_TRUE(out.quality.has_value());
  EXPECT_GT(out.quality->psnr, psnr(r.image, noisy));
  EXPECT_FALSE(out.detection.low_confidence);
}

TEST(DetectWake, ZeroImageIsLowConfidence) {
  const auto out = detect_wake(Image(32, 32));
  EXPECT_TRUE(out.detection.low_confidence);
  EXPECT_EQ(out.detection.peaks.front().score, 0.0);
  EXPECT_EQ(out.detection.arm_angle, wake_arm_angle(out.detection.peaks.front().theta));
}

TEST(DetectWake, RotationBy90ShiftsTheta) {
  for (double theta : {20.0, 45.0, 70.0, 130.0}) {
    WakeScene s;
    s.track_theta = theta;
    s.track_rho = 8.0;
    const Image im = synth_wake(s).image;
    const double a = detect_wake(im).detection.peaks.front().theta;
    const double b = detect_wake(rotate_clockwise(im)).detection.peaks.front().theta;
    EXPECT_LE(angle_gap(b, std::fmod(a + 90.0, 180.0)), 1.0) << theta;
  }
}

TEST(DetectWake, AngleStableAcrossDenoisers) {
  WakeScene s;
  s.track_theta = 85.0;
  s.track_rho = -12.0;
  const auto r = synth_wake(s);
  for (double sigma : {10.0, 30.0, 50.0}) {
    const Image noisy = add_gaussian_noise(r.image, {sigma, 5});
    DetectOptions opt;
    opt.denoise.sigma = sigma;
    std::vector<double> thetas;
    for (Denoiser d : {Denoiser::None, Denoiser::Sure, Denoiser::NeighShrink}) {
      opt.denoiser = d;
      thetas.push_back(detect_wake(noisy, opt).detection.peaks.front().theta);
    }
    EXPECT_LE(angle_gap(thetas[0], thetas[1]), 1.0);
    EXPECT_LE(angle_gap(thetas[0], thetas[2]), 1.0);
  }
}

TEST(DetectWake, CsvOutput) {
  WakeDetection det;
  det.peaks = {{10, 45.0, 12.5, Polarity::Bright}, {-3, 170.0, 2.0, Polarity::Dark}};
  det.arm_angle = 135.0;
  std::ostringstream os;
  write_detection_csv(det, os);
  EXPECT_EQ(os.str(), "rank,rho,theta,score,polarity,arm_angle\n1,10,45,12.5,bright,135\n2,-3,170,2,dark,80\n");
}

TEST(Sinogram, CsvOutput) {
  const auto s = radon_transform(Image(2, 2, 1.0), 90.0);
  std::ostringstream os;
  write_sinogram_csv(s, os);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "theta,rho,accum,count");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 2 * 5);
}
