#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdasweep {

/// The whole hyperparameter surface of the extractor.
struct SweepConfig {
  std::vector<int> thresholds{100};
  std::size_t interval_width = 1;
  std::optional<std::size_t> workers;  // unset means sequential

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const {
    if (thresholds.empty()) throw std::invalid_argument("thresholds must not be empty");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      const int t = thresholds[i];
      if (t < 1 || t > 255) {
        throw std::invalid_argument("threshold " + std::to_string(t) + " outside [1, 255]");
      }
      if (i > 0 && t <= thresholds[i - 1]) {
        throw std::invalid_argument("thresholds must be strictly increasing");
      }
    }
    if (interval_width < 1) throw std::invalid_argument("interval width must be >= 1");
    if (workers && *workers < 1) throw std::invalid_argument("worker count must be >= 1");
  }
};

/// Parses "100,175" into {100, 175}. Ordering is checked by SweepConfig::validate.
inline std::vector<int> parse_thresholds(std::string_view text) {
  std::vector<int> out;
  while (true) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("invalid threshold '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace tdasweep
