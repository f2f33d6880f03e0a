#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdasweep {

// Malformed input file or record.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable, unwritable or truncated file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Pixel = std::uint8_t;

/// Dense r x s x c grid of 8-bit intensities, stored interleaved:
/// index(row, col, ch) = (row * cols + col) * channels + ch.
class GrayImage {
 public:
  GrayImage() = default;

  GrayImage(std::size_t rows, std::size_t cols, std::size_t channels = 1, Pixel fill = 0)
      : rows_(rows), cols_(cols), channels_(channels), pixels_(checked_size(rows, cols, channels), fill) {}

  GrayImage(std::size_t rows, std::size_t cols, std::size_t channels, std::vector<Pixel> pixels)
      : rows_(rows), cols_(cols), channels_(channels), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_size(rows, cols, channels)) {
      throw std::invalid_argument("GrayImage: expected " + std::to_string(rows * cols * channels) +
                                  " pixels, got " + std::to_string(pixels_.size()));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  Pixel operator()(std::size_t row, std::size_t col, std::size_t ch = 0) const noexcept {
    return pixels_[(row * cols_ + col) * channels_ + ch];
  }
  Pixel& operator()(std::size_t row, std::size_t col, std::size_t ch = 0) noexcept {
    return pixels_[(row * cols_ + col) * channels_ + ch];
  }

  std::span<const Pixel> pixels() const noexcept { return pixels_; }
  std::span<Pixel> pixels() noexcept { return pixels_; }

  bool same_shape(const GrayImage& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && channels_ == other.channels_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols, std::size_t channels) {
    if (rows == 0 || cols == 0 || channels == 0) {
      throw std::invalid_argument("GrayImage: rows, cols and channels must be positive");
    }
    return rows * cols * channels;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t channels_ = 0;
  std::vector<Pixel> pixels_;
};

/// r x s grid of 0/1 values, row-major.
class BinaryMask {
 public:
  BinaryMask() = default;

  BinaryMask(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  BinaryMask(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
      : rows_(rows), cols_(cols), bits_(std::move(bits)) {
    if (bits_.size() != rows * cols) {
      throw std::invalid_argument("BinaryMask: expected " + std::to_string(rows * cols) + " bits, got " +
                                  std::to_string(bits_.size()));
    }
    for (auto b : bits_) {
      if (b > 1) throw std::invalid_argument("BinaryMask: bits must be 0 or 1");
    }
  }

  /// Builds a mask from equal-length strings of '0'/'1', one per row.
  static BinaryMask from_rows(const std::vector<std::string>& lines) {
    if (lines.empty() || lines.front().empty()) throw std::invalid_argument("BinaryMask: empty pattern");
    std::vector<std::uint8_t> bits;
    bits.reserve(lines.size() * lines.front().size());
    for (const auto& line : lines) {
      if (line.size() != lines.front().size()) throw std::invalid_argument("BinaryMask: ragged pattern");
      for (char c : line) {
        if (c != '0' && c != '1') throw std::invalid_argument("BinaryMask: pattern must contain only 0/1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      }
    }
    return BinaryMask(lines.size(), lines.front().size(), std::move(bits));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t operator()(std::size_t row, std::size_t col) const noexcept { return bits_[row * cols_ + col]; }
  std::uint8_t& operator()(std::size_t row, std::size_t col) noexcept { return bits_[row * cols_ + col]; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return std::span<const std::uint8_t>(bits_).subspan(i * cols_, cols_);
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace tdasweep
