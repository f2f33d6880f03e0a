#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "pipeline.hpp"

namespace tdasweep {

inline std::int64_t squared_distance(std::span<const Count> a, std::span<const Count> b) noexcept {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = std::int64_t{a[i]} - b[i];
    acc += d * d;
  }
  return acc;
}

/// Exact brute-force k-nearest-neighbor classifier over integer features.
///
/// Neighbors are ranked by (squared Euclidean distance, training row index). The label with
/// the most votes among the k nearest wins; on a vote tie the tied label held by the nearest
/// neighbor wins.
class KnnModel {
 public:
  KnnModel(FeatureMatrix train, std::size_t k) : train_(std::move(train)), k_(k) {
    if (!train_.labeled()) throw std::invalid_argument("knn: training matrix is unlabeled");
    if (train_.n_rows() == 0) throw std::invalid_argument("knn: training matrix is empty");
    if (k_ < 1 || k_ > train_.n_rows()) {
      throw std::invalid_argument("knn: k=" + std::to_string(k_) + " must be in [1, " +
                                  std::to_string(train_.n_rows()) + "]");
    }
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t n_cols() const noexcept { return train_.n_cols(); }
  const FeatureMatrix& train() const noexcept { return train_; }

  /// Indices of the k nearest training rows, nearest first.
  std::vector<std::size_t> neighbors(std::span<const Count> query) const {
    check_dims(query.size());
    std::vector<std::pair<std::int64_t, std::size_t>> scored(train_.n_rows());
    for (std::size_t i = 0; i < train_.n_rows(); ++i) scored[i] = {squared_distance(query, train_.row(i)), i};
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k_), scored.end());
    std::vector<std::size_t> out(k_);
    for (std::size_t i = 0; i < k_; ++i) out[i] = scored[i].second;
    return out;
  }

  int predict(std::span<const Count> query) const {
    const auto nn = neighbors(query);
    const auto& labels = *train_.labels();
    std::map<int, std::size_t> votes;
    std::size_t best = 0;
    for (auto i : nn) best = std::max(best, ++votes[labels[i]]);
    for (auto i : nn) {
      if (votes[labels[i]] == best) return labels[i];
    }
    return labels[nn.front()];  // unreachable
  }

  void check_dims(std::size_t n) const {
    if (n != train_.n_cols()) {
      throw std::invalid_argument("knn: query has " + std::to_string(n) + " features, model expects " +
                                  std::to_string(train_.n_cols()));
    }
  }

 private:
  FeatureMatrix train_;
  std::size_t k_;
};

inline KnnModel fit(FeatureMatrix train, std::size_t k) { return KnnModel(std::move(train), k); }

/// Fraction of test rows whose predicted label matches. Queries may be spread over workers.
inline double evaluate(const KnnModel& model, const FeatureMatrix& test, std::size_t workers = 1) {
  if (!test.labeled()) throw std::invalid_argument("knn: test matrix is unlabeled");
  model.check_dims(test.n_cols());
  if (test.n_rows() == 0) throw std::invalid_argument("knn: test matrix is empty");

  std::vector<int> predicted(test.n_rows());
  parallel_for_index(test.n_rows(), workers, [&](std::size_t i) { predicted[i] = model.predict(test.row(i)); });

  const auto& truth = *test.labels();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == truth[i];
  return static_cast<double>(correct) / static_cast<double>(test.n_rows());
}

}  // namespace tdasweep
