#pragma once

// Orthonormal separable 2-D DWT with periodic extension.
//
// Analysis of a length-N line x (N even) with lowpass h and highpass g:
//   lo[k] = sum_n h[n] * x[(2k + n) mod N]
//   hi[k] = sum_n g[n] * x[(2k + n) mod N],   g[n] = (-1)^n h[L-1-n]
// Synthesis is the transpose, which is the inverse because the periodized
// filter bank is orthonormal.
//
// Each level filters rows first, then columns. Subband names give the row
// filter first: HL = high along rows / low along columns (vertical detail),
// LH = low along rows / high along columns (horizontal detail), HH diagonal.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"

namespace wakedet {

struct FilterPair {
  std::vector<double> lowpass;
  std::vector<double> highpass;
};

namespace wavelet_detail {

// Scaling-filter taps as published for PyWavelets (rec_lo).
inline constexpr double kSym8[16] = {
    0.0018899503327594609,  -0.0003029205147213668, -0.01495225833704823,  0.003808752013890615,
    0.049137179673607506,   -0.027219029917056003,  -0.05194583810770904,  0.3644418948353314,
    0.7771857517005235,     0.4813596512583722,     -0.061273359067658524, -0.1432942383508097,
    0.007607487324917605,   0.03169508781149298,    -0.0005421323317911481, -0.0033824159510061256,
};

inline constexpr double kDb8[16] = {
    0.05441584224310401,    0.31287159091429995,   0.6756307362972898,     0.5853546836542067,
    -0.015829105256349306,  -0.2840155429615469,   0.0004724845739132828,  0.12874742662047847,
    -0.017369301001807547,  -0.044088253930794755, 0.013981027917398282,   0.008746094047405777,
    -0.004870352993451574,  -0.00039174037337694705, 0.0006754494064505693, -0.00011747678412476953,
};

inline FilterPair make_pair(std::vector<double> low) {
  const std::size_t len = low.size();
  std::vector<double> high(len);
  for (std::size_t k = 0; k < len; ++k) {
    high[k] = (k % 2 == 0 ? 1.0 : -1.0) * low[len - 1 - k];
  }
  return {std::move(low), std::move(high)};
}

}  // namespace wavelet_detail

/// Supported: "haar", "sym8" (default), "db8".
inline FilterPair wavelet_filters(std::string_view name) {
  using namespace wavelet_detail;
  if (name == "haar") {
    const double r = 1.0 / std::sqrt(2.0);
    return make_pair({r, r});
  }
  if (name == "sym8") return make_pair({std::begin(kSym8), std::end(kSym8)});
  if (name == "db8") return make_pair({std::begin(kDb8), std::end(kDb8)});
  throw Error(ErrorCode::UnknownWavelet, "unknown wavelet '" + std::string(name) + "'");
}

struct DetailBands {
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

/// L-level decomposition: the coarsest approximation plus per-level details.
/// details[0] is level 1 (finest, half the source size).
struct WaveletPyramid {
  Matrix ll;
  std::vector<DetailBands> details;

  std::size_t levels() const noexcept { return details.size(); }
  std::size_t coefficient_count() const noexcept {
    std::size_t n = ll.size();
    for (const auto& d : details) n += d.lh.size() + d.hl.size() + d.hh.size();
    return n;
  }
};

enum class BandKind { LH, HL, HH };

inline const char* to_string(BandKind k) noexcept {
  switch (k) {
    case BandKind::LH: return "LH";
    case BandKind::HL: return "HL";
    case BandKind::HH: return "HH";
  }
  return "?";
}

/// Visits detail subbands in layout order: level 1 LH, HL, HH, then level 2...
template <class Pyramid, class Fn>
void for_each_detail(Pyramid& pyr, Fn&& fn) {
  for (std::size_t lvl = 0; lvl < pyr.details.size(); ++lvl) {
    auto& d = pyr.details[lvl];
    fn(lvl + 1, BandKind::LH, d.lh);
    fn(lvl + 1, BandKind::HL, d.hl);
    fn(lvl + 1, BandKind::HH, d.hh);
  }
}

inline std::string subband_name(std::size_t level, BandKind kind) {
  return std::string(to_string(kind)) + std::to_string(level);
}

namespace wavelet_detail {

// Strided line views so one routine serves rows and columns.
inline void analyze_line(const FilterPair& f, const double* in, std::size_t stride, std::size_t n, double* lo,
                         double* hi, std::size_t out_stride, std::vector<double>& scratch) {
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = in[i * stride];
  const std::size_t taps = f.lowpass.size();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0, d = 0.0;
    for (std::size_t t = 0; t < taps; ++t) {
      const double x = scratch[(2 * k + t) % n];
      a += f.lowpass[t] * x;
      d += f.highpass[t] * x;
    }
    lo[k * out_stride] = a;
    hi[k * out_stride] = d;
  }
}

inline void synthesize_line(const FilterPair& f, const double* lo, const double* hi, std::size_t in_stride,
                            std::size_t n, double* out, std::size_t stride, std::vector<double>& scratch) {
  scratch.assign(n, 0.0);
  const std::size_t taps = f.lowpass.size();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const double a = lo[k * in_stride];
    const double d = hi[k * in_stride];
    for (std::size_t t = 0; t < taps; ++t) {
      scratch[(2 * k + t) % n] += f.lowpass[t] * a + f.highpass[t] * d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i * stride] = scratch[i];
}

// One analysis level on `block` (rows x cols); writes quadrants in place:
// [LL HL; LH HH].
inline void analyze_level(const FilterPair& f, Matrix& block) {
  const std::size_t rows = block.rows(), cols = block.cols();
  Matrix tmp(rows, cols);
  std::vector<double> scratch;
  for (std::size_t r = 0; r < rows; ++r) {
    double* base = &tmp(r, 0);
    analyze_line(f, &block(r, 0), 1, cols, base, base + cols / 2, 1, scratch);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    analyze_line(f, &tmp(0, c), cols, rows, &block(0, c), &block(rows / 2, c), cols, scratch);
  }
}

inline void synthesize_level(const FilterPair& f, Matrix& block) {
  const std::size_t rows = block.rows(), cols = block.cols();
  Matrix tmp(rows, cols);
  std::vector<double> scratch;
  for (std::size_t c = 0; c < cols; ++c) {
    synthesize_line(f, &block(0, c), &block(rows / 2, c), cols, rows, &tmp(0, c), cols, scratch);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const double* base = &tmp(r, 0);
    synthesize_line(f, base, base + cols / 2, 1, cols, &block(r, 0), 1, scratch);
  }
}

inline Matrix extract(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(r0 + r, c0 + c);
  return out;
}

inline void insert(Matrix& m, const Matrix& part, std::size_t r0, std::size_t c0) {
  for (std::size_t r = 0; r < part.rows(); ++r)
    for (std::size_t c = 0; c < part.cols(); ++c) m(r0 + r, c0 + c) = part(r, c);
}

}  // namespace wavelet_detail

inline WaveletPyramid dwt2(const Matrix& source, std::size_t levels, const FilterPair& filters) {
  if (levels < 1) throw Error(ErrorCode::BadDimensions, "levels must be >= 1");
  const std::size_t unit = std::size_t{1} << levels;
  if (source.empty() || source.rows() % unit != 0 || source.cols() % unit != 0) {
    throw Error(ErrorCode::BadDimensions, std::to_string(source.rows()) + "x" + std::to_string(source.cols()) +
                                              " is not divisible by 2^" + std::to_string(levels));
  }
  WaveletPyramid pyr;
  Matrix current = source;
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    wavelet_detail::analyze_level(filters, current);
    const std::size_t hr = current.rows() / 2, hc = current.cols() / 2;
    pyr.details.push_back({wavelet_detail::extract(current, hr, 0, hr, hc),
                           wavelet_detail::extract(current, 0, hc, hr, hc),
                           wavelet_detail::extract(current, hr, hc, hr, hc)});
    current = wavelet_detail::extract(current, 0, 0, hr, hc);
  }
  pyr.ll = std::move(current);
  return pyr;
}

inline WaveletPyramid dwt2(const Image& image, std::size_t levels, const FilterPair& filters) {
  return dwt2(image.to_matrix(), levels, filters);
}

inline Matrix idwt2_matrix(const WaveletPyramid& pyr, const FilterPair& filters) {
  if (pyr.ll.empty() || pyr.details.empty()) {
    throw Error(ErrorCode::MalformedPyramid, "pyramid needs an LL band and at least one level");
  }
  const std::size_t levels = pyr.details.size();
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    const std::size_t scale = std::size_t{1} << (levels - 1 - lvl);
    const std::size_t er = pyr.ll.rows() * scale, ec = pyr.ll.cols() * scale;
    for (const Matrix* band : {&pyr.details[lvl].lh, &pyr.details[lvl].hl, &pyr.details[lvl].hh}) {
      if (band->rows() != er || band->cols() != ec) {
        throw Error(ErrorCode::MalformedPyramid, "level " + std::to_string(lvl + 1) + " subband is " +
                                                     std::to_string(band->rows()) + "x" +
                                                     std::to_string(band->cols()) + ", expected " +
                                                     std::to_string(er) + "x" + std::to_string(ec));
      }
    }
  }
  Matrix current = pyr.ll;
  for (std::size_t i = levels; i-- > 0;) {
    const auto& d = pyr.details[i];
    const std::size_t hr = current.rows(), hc = current.cols();
    Matrix block(hr * 2, hc * 2);
    wavelet_detail::insert(block, current, 0, 0);
    wavelet_detail::insert(block, d.hl, 0, hc);
    wavelet_detail::insert(block, d.lh, hr, 0);
    wavelet_detail::insert(block, d.hh, hr, hc);
    wavelet_detail::synthesize_level(filters, block);
    current = std::move(block);
  }
  return current;
}

inline Image idwt2(const WaveletPyramid& pyr, const FilterPair& filters) {
  return Image::from_matrix(idwt2_matrix(pyr, filters));
}

/// Edge-replication padding at the bottom and right up to the next multiple.
inline Matrix pad_replicate(const Image& image, std::size_t multiple) {
  auto round_up = [multiple](std::size_t n) { return (n + multiple - 1) / multiple * multiple; };
  const std::size_t rows = round_up(image.height()), cols = round_up(image.width());
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t sr = std::min(r, image.height() - 1);
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = image.at(sr, std::min(c, image.width() - 1));
  }
  return out;
}

/// Top-left crop back to the original extent.
inline Image crop(const Matrix& m, std::size_t width, std::size_t height) {
  std::vector<double> px(width * height);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) px[r * width + c] = m(r, c);
  return Image(width, height, std::move(px));
}

}  // namespace wakedet
