#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wakedet/error.hpp"

namespace wakedet {

/// Dense row-major matrix of doubles. Used for wavelet subbands and sinograms,
/// where values are not grey levels and no range invariant applies.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Grey-level image, row-major, pixel (row, col). Values are real and may leave
/// the nominal 0..255 range; quantization only happens on 8-bit export.
class Image {
 public:
  Image(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), pixels_(width * height, fill) {
    check_dims();
    check_finite(fill);
  }

  Image(std::size_t width, std::size_t height, std::vector<double> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims();
    if (pixels_.size() != width_ * height_) {
      throw Error(ErrorCode::InvalidImage, "pixel count does not match width x height");
    }
    for (double v : pixels_) check_finite(v);
  }

  /// Wraps a matrix; rows become height.
  static Image from_matrix(const Matrix& m) {
    return Image(m.cols(), m.rows(), std::vector<double>(m.values().begin(), m.values().end()));
  }

  Matrix to_matrix() const {
    Matrix m(height_, width_);
    std::copy(pixels_.begin(), pixels_.end(), m.values().begin());
    return m;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }
  bool is_square() const noexcept { return width_ == height_; }

  double at(std::size_t row, std::size_t col) const noexcept { return pixels_[row * width_ + col]; }
  void set(std::size_t row, std::size_t col, double v) {
    check_finite(v);
    pixels_[row * width_ + col] = v;
  }

  std::span<const double> pixels() const noexcept { return pixels_; }

  bool operator==(const Image&) const = default;

 private:
  void check_dims() const {
    if (width_ < 1 || height_ < 1) {
      throw Error(ErrorCode::InvalidImage, "image dimensions must be at least 1x1");
    }
  }
  static void check_finite(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidImage, "pixel value is not finite");
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<double> pixels_;
};

}  // namespace wakedet
