#pragma once

#include "pretense/function_spec.hpp"
#include "pretense/sieve.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pretense {

/// Dense values f(1..limit). values[0] is unused and kept at 0.
struct ValueTable {
  std::string spec_name;
  std::uint64_t limit = 0;
  std::vector<Complex> values;

  Complex operator[](std::uint64_t n) const { return values[n]; }
};

/// Builds a table from explicit values v[1..N] (v[0] ignored).
ValueTable make_table(std::string name, std::vector<Complex> values);

/// Dense evaluation through the spf table. Prime powers are computed from the
/// rule (in parallel over primes); composites as products of coprime parts.
ValueTable evaluate(const FunctionSpec& spec, const SieveIndex& sieve, std::uint64_t N);

enum class SummationMode { CompensatedSequential, BlockParallelDeterministic };

std::string_view to_string(SummationMode mode);

/// S_f(x_i) = sum_{n <= x_i} f(n) at ascending checkpoints.
struct PartialSumSeries {
  std::vector<double> checkpoints;
  std::vector<Complex> sums;
  SummationMode mode = SummationMode::BlockParallelDeterministic;
};

/// Both modes follow the same reduction order (see kReductionBlock) and
/// agree bit for bit. Throws std::invalid_argument for checkpoints that are
/// not strictly increasing, std::out_of_range for checkpoints beyond the table.
PartialSumSeries partial_sums(const ValueTable& table, std::span<const double> checkpoints,
                              SummationMode mode = SummationMode::BlockParallelDeterministic);

/// sum_{n <= x} |f(n)|^2.
double mean_square_sum(const ValueTable& table, double x);

/// S_f(n) for every integer n <= limit, under the same reduction contract as
/// partial_sums, so prefix.at(x) equals partial_sums at checkpoint x exactly.
struct PrefixSums {
  std::vector<Complex> sums; ///< sums[n] = S(n), sums[0] = 0

  std::uint64_t limit() const { return sums.empty() ? 0 : sums.size() - 1; }
  /// S(x) for real x; 0 for x < 1. Throws std::out_of_range beyond the limit.
  Complex at(double x) const;
};

PrefixSums prefix_sums(const ValueTable& table);

/// 10^(1/8), the default ratio of the log-equispaced checkpoint grid.
double default_grid_ratio();

/// floor(x0 * ratio^j) for j = 0, 1, ... while <= x_max, duplicates removed.
std::vector<double> geometric_checkpoints(double x0, double ratio, double x_max);

} // namespace pretense
