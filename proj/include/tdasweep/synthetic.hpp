#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dataset.hpp"

namespace tdasweep {

/// Permutation of [0, n) from a Fisher-Yates shuffle driven by mt19937_64. Unlike
/// std::shuffle the result is identical across standard library implementations.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

/// Unlabeled dataset of uniformly random intensities.
inline Dataset random_dataset(std::size_t n, std::size_t rows, std::size_t cols, std::size_t channels,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Dataset ds;
  ds.images.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    GrayImage img(rows, cols, channels);
    for (auto& p : img.pixels()) p = static_cast<Pixel>(rng() & 0xFF);
    ds.images.push_back(std::move(img));
  }
  return ds;
}

}  // namespace tdasweep
