#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "image.hpp"

namespace tdasweep {

using Count = std::int32_t;

/// Run counts of one mask along the four line families.
///
/// Diagonal ordering:
///   diag_nwse[k] covers cells with col - row == k - (rows - 1), k = 0 .. rows + cols - 2
///   diag_nesw[k] covers cells with row + col == k,              k = 0 .. rows + cols - 2
struct DirectionalCounts {
  std::vector<Count> rows;
  std::vector<Count> cols;
  std::vector<Count> diag_nwse;
  std::vector<Count> diag_nesw;

  friend bool operator==(const DirectionalCounts&, const DirectionalCounts&) = default;
};

enum class Direction : std::uint8_t { Rows = 0, Cols = 1, DiagNwse = 2, DiagNesw = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Rows, Direction::Cols, Direction::DiagNwse,
                                                         Direction::DiagNesw};

inline const char* to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Rows: return "rows";
    case Direction::Cols: return "cols";
    case Direction::DiagNwse: return "diag_nwse";
    case Direction::DiagNesw: return "diag_nesw";
  }
  return "?";
}

inline constexpr std::size_t ceil_div(std::size_t n, std::size_t w) noexcept { return (n + w - 1) / w; }

/// Block structure of an extracted feature vector: threshold-major, then channel, then
/// [rows, cols, diag_nwse, diag_nesw], each block coalesced with the interval width.
class FeatureLayout {
 public:
  FeatureLayout() = default;

  FeatureLayout(std::size_t rows, std::size_t cols, std::size_t channels, std::vector<int> thresholds,
                std::size_t interval_width)
      : rows_(rows), cols_(cols), channels_(channels), thresholds_(std::move(thresholds)), width_(interval_width) {
    if (width_ < 1) throw std::invalid_argument("interval width must be >= 1");
    const std::size_t diag = rows_ + cols_ - 1;
    block_ = {ceil_div(rows_, width_), ceil_div(cols_, width_), ceil_div(diag, width_), ceil_div(diag, width_)};
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t channels() const noexcept { return channels_; }
  const std::vector<int>& thresholds() const noexcept { return thresholds_; }
  std::size_t interval_width() const noexcept { return width_; }

  std::size_t block_size(Direction d) const noexcept { return block_[static_cast<std::size_t>(d)]; }

  /// Features contributed by one (threshold, channel) pair.
  std::size_t group_size() const noexcept { return block_[0] + block_[1] + block_[2] + block_[3]; }

  std::size_t size() const noexcept { return thresholds_.size() * channels_ * group_size(); }

  /// Offset of the first feature of a block.
  std::size_t offset(std::size_t threshold_index, std::size_t channel, Direction d) const noexcept {
    std::size_t off = (threshold_index * channels_ + channel) * group_size();
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) off += block_[i];
    return off;
  }

  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t channels_ = 0;
  std::vector<int> thresholds_;
  std::size_t width_ = 1;
  std::array<std::size_t, 4> block_{};
};

/// |T| * c * (ceil(r/w) + ceil(s/w) + 2 * ceil((r+s-1)/w))
inline std::size_t feature_length(std::size_t rows, std::size_t cols, std::size_t channels,
                                  std::size_t n_thresholds, std::size_t interval_width) {
  if (interval_width < 1) throw std::invalid_argument("interval width must be >= 1");
  const std::size_t diag = rows + cols - 1;
  return n_thresholds * channels *
         (ceil_div(rows, interval_width) + ceil_div(cols, interval_width) + 2 * ceil_div(diag, interval_width));
}

struct FeatureVector {
  std::vector<Count> values;
  FeatureLayout layout;

  std::size_t size() const noexcept { return values.size(); }
};

/// Pixels with intensity >= t become 1.
inline BinaryMask binarize(const GrayImage& image, std::size_t channel, int t) {
  if (channel >= image.channels()) {
    throw std::invalid_argument("channel " + std::to_string(channel) + " out of range for " +
                                std::to_string(image.channels()) + "-channel image");
  }
  if (t < 1 || t > 255) throw std::invalid_argument("threshold " + std::to_string(t) + " outside [1, 255]");

  const auto px = image.pixels();
  const std::size_t stride = image.channels();
  const std::size_t n = image.rows() * image.cols();
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = px[i * stride + channel] >= t ? 1 : 0;
  return BinaryMask(image.rows(), image.cols(), std::move(bits));
}

/// Number of maximal blocks of consecutive 1s.
inline Count count_runs(std::span<const std::uint8_t> bits) noexcept {
  Count runs = 0;
  std::uint8_t prev = 0;
  for (auto b : bits) {
    runs += (b & ~prev) & 1;
    prev = b;
  }
  return runs;
}

/// Counts runs in every row, column and diagonal in a single raster pass: a set cell opens
/// a run in a family exactly when its predecessor along that family's line is unset.
inline DirectionalCounts sweep(const BinaryMask& mask) {
  const std::size_t r = mask.rows();
  const std::size_t s = mask.cols();
  DirectionalCounts out;
  out.rows.assign(r, 0);
  out.cols.assign(s, 0);
  out.diag_nwse.assign(r + s - 1, 0);
  out.diag_nesw.assign(r + s - 1, 0);

  const auto bits = mask.bits();
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint8_t* cur = bits.data() + i * s;
    const std::uint8_t* up = i > 0 ? cur - s : nullptr;
    for (std::size_t j = 0; j < s; ++j) {
      if (!cur[j]) continue;
      if (j == 0 || !cur[j - 1]) ++out.rows[i];
      if (!up || !up[j]) ++out.cols[j];
      if (!up || j == 0 || !up[j - 1]) ++out.diag_nwse[j + (r - 1) - i];
      // anti-diagonals are walked top-right to bottom-left
      if (!up || j + 1 == s || !up[j + 1]) ++out.diag_nesw[i + j];
    }
  }
  return out;
}

/// Sums consecutive groups of w counts; the last group may be short.
inline std::vector<Count> coalesce(std::span<const Count> counts, std::size_t w) {
  if (w < 1) throw std::invalid_argument("interval width must be >= 1");
  std::vector<Count> out(ceil_div(counts.size(), w), 0);
  for (std::size_t i = 0; i < counts.size(); ++i) out[i / w] += counts[i];
  return out;
}

namespace detail {

inline Count* append_coalesced(std::span<const Count> counts, std::size_t w, Count* dst) {
  for (std::size_t i = 0; i < counts.size(); ++i) dst[i / w] += counts[i];
  return dst + ceil_div(counts.size(), w);
}

}  // namespace detail

/// Writes the features of one image into `dst`, which must hold layout.size() zeroed values.
inline void extract_into(const GrayImage& image, const SweepConfig& config, std::span<Count> dst) {
  const std::size_t w = config.interval_width;
  if (w < 1) throw std::invalid_argument("interval width must be >= 1");
  const std::size_t expected =
      feature_length(image.rows(), image.cols(), image.channels(), config.thresholds.size(), w);
  if (dst.size() != expected) throw std::invalid_argument("extract_into: destination has wrong length");

  Count* out = dst.data();
  for (int t : config.thresholds) {
    for (std::size_t ch = 0; ch < image.channels(); ++ch) {
      const DirectionalCounts dc = sweep(binarize(image, ch, t));
      out = detail::append_coalesced(dc.rows, w, out);
      out = detail::append_coalesced(dc.cols, w, out);
      out = detail::append_coalesced(dc.diag_nwse, w, out);
      out = detail::append_coalesced(dc.diag_nesw, w, out);
    }
  }
}

inline FeatureVector extract(const GrayImage& image, const SweepConfig& config) {
  config.validate();
  FeatureVector fv;
  fv.layout = FeatureLayout(image.rows(), image.cols(), image.channels(), config.thresholds, config.interval_width);
  fv.values.assign(fv.layout.size(), 0);
  extract_into(image, config, fv.values);
  return fv;
}

}  // namespace tdasweep
