#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "image.hpp"
#include "sweep.hpp"

namespace tdasweep {

/// Images sharing one geometry, with optional aligned labels.
struct Dataset {
  std::vector<GrayImage> images;
  std::optional<std::vector<int>> labels;

  std::size_t size() const noexcept { return images.size(); }
  bool empty() const noexcept { return images.empty(); }
  bool labeled() const noexcept { return labels.has_value(); }

  std::size_t rows() const noexcept { return images.empty() ? 0 : images.front().rows(); }
  std::size_t cols() const noexcept { return images.empty() ? 0 : images.front().cols(); }
  std::size_t channels() const noexcept { return images.empty() ? 0 : images.front().channels(); }

  void validate() const {
    for (const auto& img : images) {
      if (!img.same_shape(images.front())) throw std::invalid_argument("dataset images differ in shape");
    }
    if (labels && labels->size() != images.size()) {
      throw std::invalid_argument("dataset has " + std::to_string(images.size()) + " images but " +
                                  std::to_string(labels->size()) + " labels");
    }
  }

  /// New dataset holding the given indices, in order.
  Dataset select(std::span<const std::size_t> indices) const {
    Dataset out;
    out.images.reserve(indices.size());
    if (labels) out.labels.emplace().reserve(indices.size());
    for (auto i : indices) {
      out.images.push_back(images.at(i));
      if (labels) out.labels->push_back(labels->at(i));
    }
    return out;
  }
};

/// Dense row-major integer matrix, one row per image.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  FeatureMatrix(std::size_t n_rows, std::size_t n_cols) : n_rows_(n_rows), n_cols_(n_cols), values_(n_rows * n_cols) {}

  FeatureMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<Count> values,
                std::optional<std::vector<int>> labels = std::nullopt)
      : n_rows_(n_rows), n_cols_(n_cols), values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.size() != n_rows_ * n_cols_) throw std::invalid_argument("FeatureMatrix: value count mismatch");
    if (labels_ && labels_->size() != n_rows_) throw std::invalid_argument("FeatureMatrix: label count mismatch");
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return n_cols_; }

  std::span<const Count> row(std::size_t i) const noexcept {
    return std::span<const Count>(values_).subspan(i * n_cols_, n_cols_);
  }
  std::span<Count> row(std::size_t i) noexcept { return std::span<Count>(values_).subspan(i * n_cols_, n_cols_); }

  std::span<const Count> values() const noexcept { return values_; }

  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }
  bool labeled() const noexcept { return labels_.has_value(); }
  void set_labels(std::optional<std::vector<int>> labels) {
    if (labels && labels->size() != n_rows_) throw std::invalid_argument("FeatureMatrix: label count mismatch");
    labels_ = std::move(labels);
  }

  const std::optional<FeatureLayout>& layout() const noexcept { return layout_; }
  void set_layout(FeatureLayout layout) { layout_ = std::move(layout); }

  bool same_values(const FeatureMatrix& other) const noexcept {
    return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ && values_ == other.values_ &&
           labels_ == other.labels_;
  }

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<Count> values_;
  std::optional<std::vector<int>> labels_;
  std::optional<FeatureLayout> layout_;
};

/// Raw intensities as features, channel-interleaved, for baseline comparisons.
inline FeatureMatrix pixel_matrix(const Dataset& ds) {
  ds.validate();
  const std::size_t n_cols = ds.empty() ? 0 : ds.images.front().size();
  FeatureMatrix m(ds.size(), n_cols);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto px = ds.images[i].pixels();
    auto dst = m.row(i);
    for (std::size_t j = 0; j < n_cols; ++j) dst[j] = px[j];
  }
  m.set_labels(ds.labels);
  return m;
}

}  // namespace tdasweep
