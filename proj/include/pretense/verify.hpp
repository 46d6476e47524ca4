#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pretense {

enum class CheckStatus { Pass, Fail, Info };

struct CheckRow {
  std::string check;
  std::string value;
  std::string threshold; ///< empty for informational rows
  CheckStatus status = CheckStatus::Info;
};

/// Outcome of one verification bundle. Nothing time- or thread-dependent
/// goes into it, so rendering is byte-identical across runs.
struct BundleResult {
  std::string bundle;
  std::uint64_t N = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRow> rows;

  bool passed() const;
  std::string render() const;
  nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
  std::uint64_t N = 1'000'000;
  std::uint64_t seed = 1;
};

/// thm1, thm2, thm3, thm4, remark1, counterexample, squarefree.
const std::vector<std::string>& bundle_names();

/// Throws std::invalid_argument for an unknown bundle name.
BundleResult run_bundle(std::string_view name, const VerifyOptions& options);

} // namespace pretense
