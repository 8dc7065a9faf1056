#pragma once

// Netpbm greymap interchange. Reads P5 (binary) and P2 (ASCII) with maxval up
// to 255; writes P5 at maxval 255.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "wakedet/error.hpp"
#include "wakedet/image.hpp"

namespace wakedet {

namespace pgm_detail {

class HeaderCursor {
 public:
  explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns false at end of input; throws on a non-digit token.
  bool next_uint(unsigned long& out, ErrorCode on_garbage) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return false;
    if (!std::isdigit(bytes_[pos_])) throw Error(on_garbage, "expected an unsigned integer");
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000UL) throw Error(on_garbage, "integer field too large");
      ++pos_;
    }
    out = v;
    return true;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const noexcept { return bytes_[pos_]; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace pgm_detail

/// Parses a P5 or P2 greymap. Samples are rescaled to 0..255 when maxval < 255.
inline Image read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw Error(ErrorCode::MalformedHeader, "missing P5/P2 magic number");
  }
  const bool binary = bytes[1] == '5';
  pgm_detail::HeaderCursor cur(bytes);
  cur.advance(2);
  if (!cur.at_end() && !std::isspace(cur.peek()) && cur.peek() != '#') {
    throw Error(ErrorCode::MalformedHeader, "magic number must be followed by whitespace");
  }

  unsigned long width = 0, height = 0, maxval = 0;
  if (!cur.next_uint(width, ErrorCode::MalformedHeader) ||
      !cur.next_uint(height, ErrorCode::MalformedHeader) ||
      !cur.next_uint(maxval, ErrorCode::MalformedHeader)) {
    throw Error(ErrorCode::MalformedHeader, "header ends before width/height/maxval");
  }
  if (width == 0 || height == 0) throw Error(ErrorCode::MalformedHeader, "zero image dimension");
  if (maxval == 0) throw Error(ErrorCode::MalformedHeader, "maxval must be positive");
  if (maxval > 255) throw Error(ErrorCode::UnsupportedMaxval, "maxval " + std::to_string(maxval) + " > 255");

  const std::size_t count = static_cast<std::size_t>(width) * height;
  const double scale = 255.0 / static_cast<double>(maxval);
  std::vector<double> pixels;
  pixels.reserve(count);

  if (binary) {
    if (cur.at_end() || !std::isspace(cur.peek())) {
      throw Error(ErrorCode::MalformedHeader, "maxval must be followed by one whitespace byte");
    }
    cur.advance(1);
    const std::size_t start = cur.pos();
    if (bytes.size() < start || bytes.size() - start < count) {
      throw Error(ErrorCode::TruncatedPayload, "expected " + std::to_string(count) + " samples, got " +
                                                   std::to_string(bytes.size() - std::min(start, bytes.size())));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = bytes[start + i];
      if (v > maxval) throw Error(ErrorCode::MalformedPayload, "sample exceeds maxval");
      pixels.push_back(v * scale);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      unsigned long v = 0;
      if (!cur.next_uint(v, ErrorCode::MalformedPayload)) {
        throw Error(ErrorCode::TruncatedPayload, "expected " + std::to_string(count) + " samples, got " +
                                                     std::to_string(i));
      }
      if (v > maxval) throw Error(ErrorCode::MalformedPayload, "sample exceeds maxval");
      pixels.push_back(static_cast<double>(v) * scale);
    }
  }
  return Image(width, height, std::move(pixels));
}

/// 8-bit quantization used on export: round half up, then clamp to [0, 255].
inline std::uint8_t quantize_u8(double v) noexcept {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

inline std::vector<std::uint8_t> write_pgm(const Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + image.pixel_count());
  for (double v : image.pixels()) out.push_back(quantize_u8(v));
  return out;
}

inline Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

inline void save_pgm(const Image& image, const std::string& path) {
  const auto bytes = write_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for '" + path + "'");
}

/// Affine rescale of arbitrary values to 0..255 for visual dumps (subbands,
/// sinogram heat maps). A constant input maps to mid-grey.
inline Image rescale_to_grey(const Matrix& m) {
  if (m.empty()) throw Error(ErrorCode::EmptyImage, "cannot rescale an empty matrix");
  const auto [lo_it, hi_it] = std::minmax_element(m.values().begin(), m.values().end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> px(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    px[i] = hi > lo ? (m.values()[i] - lo) * 255.0 / (hi - lo) : 127.0;
  }
  return Image(m.cols(), m.rows(), std::move(px));
}

}  // namespace wakedet
