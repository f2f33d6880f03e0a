#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "sweep.hpp"

namespace tdasweep {

struct BatchReport {
  std::size_t n_images = 0;
  std::size_t n_features = 0;
  double wall_time = 0.0;  // seconds, extraction only
  std::size_t workers_used = 1;
};

struct BatchResult {
  FeatureMatrix features;
  BatchReport report;
};

/// Runs task(i) for every i in [0, n) on up to `workers` threads. Contiguous chunks of
/// indices are handed out from a shared counter; each task must only write state owned by
/// its index. The first exception thrown by any task is rethrown after all threads have joined.
template <typename Task>
void parallel_for_index(std::size_t n, std::size_t workers, Task&& task) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }

  // ~16 chunks per worker balances load without hammering the counter
  const std::size_t chunk = std::max<std::size_t>(1, n / (workers * 16));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }  // join barrier
  if (error) std::rethrow_exception(error);
}

/// Extracts every image of the dataset. Row i of the result is extract(images[i], config)
/// regardless of the worker count; labels are copied through.
inline BatchResult batch_extract(const Dataset& dataset, const SweepConfig& config) {
  if (dataset.empty()) throw std::invalid_argument("batch_extract: dataset is empty");
  config.validate();
  dataset.validate();

  FeatureLayout layout(dataset.rows(), dataset.cols(), dataset.channels(), config.thresholds,
                       config.interval_width);
  const std::size_t n = dataset.size();
  const std::size_t workers = std::min(config.workers.value_or(1), n);

  FeatureMatrix features(n, layout.size());

  const auto start = std::chrono::steady_clock::now();
  parallel_for_index(n, workers, [&](std::size_t i) { extract_into(dataset.images[i], config, features.row(i)); });
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  features.set_labels(dataset.labels);
  features.set_layout(layout);

  BatchReport report{n, layout.size(), elapsed.count(), workers};
  return {std::move(features), report};
}

}  // namespace tdasweep
