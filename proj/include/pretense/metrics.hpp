#pragma once

#include "pretense/dirichlet.hpp"
#include "pretense/function_spec.hpp"
#include "pretense/sieve.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pretense {

enum class DistanceKind { Classic, Beta, StrongBetaK, HSigma, HhatYSigma, HL2, HL1 };

std::string_view to_string(DistanceKind kind);

/// Partial sums of a nonnegative series with a convergence diagnostic.
///
/// `tail_slope` is the least-squares slope of the partials against
/// log log(cutoff) over the upper half of the cutoffs. The verdict is a
/// diagnostic only: "plateau" when the slope is below kPlateauSlope,
/// otherwise "growing". The H-series report "convergent" / "divergent".
struct DistanceReport {
  DistanceKind kind = DistanceKind::Classic;
  std::vector<std::pair<std::string, double>> params;
  std::vector<double> cutoffs;
  std::vector<double> partials;
  double tail_slope = 0.0;
  std::string verdict;

  double total() const { return partials.empty() ? 0.0 : partials.back(); }
  /// Value of a named parameter; throws std::out_of_range if absent.
  double param(std::string_view key) const;
};

inline constexpr double kPlateauSlope = 0.01;

/// Slope of partials against log log cutoff over the upper half of the points.
double tail_slope(std::span<const double> cutoffs, std::span<const double> partials);

/// sum_{p <= cutoff} (1 - Re f(p) conj g(p)) / p at every cutoff.
/// Throws std::invalid_argument naming the first prime where |f(p)| or |g(p)| > 1.
DistanceReport distance_classic(const FunctionSpec& f, const FunctionSpec& g,
                                const SieveIndex& sieve, std::span<const double> cutoffs);

/// As distance_classic with weight p^beta, beta in (0, 1].
DistanceReport distance_beta(const FunctionSpec& f, const FunctionSpec& g, double beta,
                             const SieveIndex& sieve, std::span<const double> cutoffs);

/// sum_p sum_{j=1}^{k} |f(p^j) - g(p^j)| / p^{j beta}; no unit-disc requirement.
DistanceReport distance_strong(const FunctionSpec& f, const FunctionSpec& g, double beta,
                               unsigned k, const SieveIndex& sieve,
                               std::span<const double> cutoffs);

/// Inner k-sums are truncated here; beyond it a geometric tail bound is
/// reported when the term ratio is below 1, else divergence is flagged.
inline constexpr unsigned kInnerTruncation = 40;

/// H(sigma) = sum_{p <= 4^{1/sigma}} sum_{k >= 0} |h(p^k)|^2 / p^{k sigma}.
/// Cutoffs are the primes in range, partials accumulate per prime. Params
/// carry "sigma", "value", "tail_bound" and, when flagged, "diverges_at".
/// Throws std::invalid_argument for sigma <= 0.
DistanceReport H_series(const FunctionSpec& h, double sigma, unsigned K = kInnerTruncation);

/// Hhat_Y(sigma) = sum_{p <= Y} sum_{k >= 1} |h(p^k)| / p^{k sigma}.
DistanceReport Hhat_series(const FunctionSpec& h, double sigma, double Y,
                           unsigned K = kInnerTruncation);

enum class MajorantPower { L1, L2 };

/// sum_{n <= cutoff} |h(n)|^{1 or 2} / n^sigma from a dense table of h.
DistanceReport h_majorant_series(const ValueTable& h, double sigma, MajorantPower power,
                                 std::span<const double> cutoffs);

/// {kind, params, cutoffs[], partials[], tail_slope, verdict}
nlohmann::ordered_json to_json(const DistanceReport& r);

} // namespace pretense
