#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pretense {

/// Plain-text experiment description:
///
///   [experiment]
///   N = 1000000
///   seed = 1
///   x0 = 1000
///   ratio = 1.333521432163324
///   out = results
///
///   [params]
///   beta = 0.5
///
///   [spec.f]
///   descriptor = {"name":"character","q":4,"index":1}
///
/// Blank lines and lines starting with '#' or ';' are ignored. Doubles are
/// written in shortest round-trip form, so serialize/parse is lossless.
struct ExperimentConfig {
  std::uint64_t N = 1'000'000;
  std::uint64_t seed = 1;
  double x0 = 1000.0;
  double ratio = 0.0; ///< 0 means the default grid ratio
  std::string out;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, nlohmann::ordered_json>> specs; ///< label -> descriptor

  /// Value of a [params] entry, or `fallback` when absent.
  std::string param(std::string_view key, std::string_view fallback = {}) const;
  double grid_ratio() const;
};

std::string serialize(const ExperimentConfig& config);

/// Throws std::invalid_argument naming the offending line.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::string& path);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

} // namespace pretense
