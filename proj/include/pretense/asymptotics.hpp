#pragma once

#include "pretense/types.hpp"
#include "pretense/value_table.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace pretense {

/// Least-squares line through (log x_i, log |S(x_i)|).
struct GrowthFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t points_used = 0;
  std::size_t dropped_zero_points = 0;
};

/// Points with |S| below this are dropped from the fit and counted.
inline constexpr double kZeroSumThreshold = 1e-9;

/// Fits over checkpoints in [x_lo, x_hi]. Throws std::invalid_argument with
/// fewer than 4 checkpoints in range, DegenerateFitError with fewer than 2
/// usable points.
GrowthFit growth_fit(std::span<const double> x, std::span<const Complex> S, double x_lo = 0.0,
                     double x_hi = std::numeric_limits<double>::infinity());
GrowthFit growth_fit(const PartialSumSeries& series, double x_lo = 0.0,
                     double x_hi = std::numeric_limits<double>::infinity());

nlohmann::ordered_json to_json(const GrowthFit& fit);

/// Samples xi(x_i) = S(x_i) / x_i^alpha, optionally with an exact evaluator
/// for arbitrary arguments.
struct XiSeries {
  double alpha = 0.0;
  std::vector<double> x;
  std::vector<Complex> xi;
  std::function<Complex(double)> exact; ///< empty when only samples exist
};

/// Throws std::invalid_argument for alpha < 0 or non-finite alpha.
XiSeries xi_from_sums(const PartialSumSeries& series, double alpha);

/// As xi_from_sums on partial_sums(table, checkpoints), carrying an exact
/// evaluator backed by the table's prefix sums.
XiSeries xi_from_table(const ValueTable& table, std::span<const double> checkpoints, double alpha);

enum class XiLookup { Nearest, Exact };

std::string_view to_string(XiLookup mode);

/// xi(y); 0 for y < 1. Nearest takes the sample closest to y in log scale and
/// throws std::out_of_range when it is more than one default grid ratio away.
/// Exact needs the series' evaluator (std::invalid_argument otherwise).
Complex xi_value(const XiSeries& xi, double y, XiLookup mode);

/// sum_{m <= x} h(m) m^{-alpha} xi(x / m). Throws std::out_of_range when the
/// table of h does not reach x.
Complex xi_tilde(const ValueTable& h, const XiSeries& xi, double x, XiLookup mode);

/// xi_tilde at every sample point of `xi`; the result's exact evaluator
/// recomputes xi_tilde with Exact lookup (requires `xi` to have one, and
/// keeps references to `h` and `xi`).
XiSeries xi_tilde_series(const ValueTable& h, const XiSeries& xi, XiLookup mode);

struct MeanSquare {
  double value = 0.0;
  double max_grid_ratio = 0.0;
  double error_estimate = 0.0; ///< |full grid - every other point| / 3
};

/// Trapezoid estimate of the integral of |xi(t)|^2 over [1, T] on the sample
/// grid, with |xi|^2 interpolated linearly at T. Throws std::out_of_range
/// unless the samples cover [1, T].
MeanSquare mean_square(const XiSeries& xi, double T);

/// L_N(s) = sum_{n <= N} f(n) n^{-s}. When |f(n)| <= n^theta and
/// Re s > 1 + theta the tail is at most N^{1+theta-Re s} / (Re s - 1 - theta);
/// otherwise tail_bound is +inf. coefficient_bound_ok records whether the
/// table itself respects |f(n)| <= n^theta on [1, N].
struct LTruncation {
  Complex s;
  std::uint64_t N = 0;
  double theta = 0.0;
  Complex value;
  double tail_bound = std::numeric_limits<double>::infinity();
  bool coefficient_bound_ok = true;
};

LTruncation l_truncation(const ValueTable& table, Complex s, std::uint64_t N, double theta = 0.0);

nlohmann::ordered_json to_json(const LTruncation& t);

/// |L_N(g) - L_N(f) L_N(h)| against B_g + B_f |L_N(h)| + B_h |L_N(f)| + B_f B_h.
struct QuotientIdentityReport {
  LTruncation f, g, h;
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Requires Re s >= 2 (std::invalid_argument otherwise).
QuotientIdentityReport quotient_identity_check(const ValueTable& f, const ValueTable& g,
                                               const ValueTable& h, Complex s, std::uint64_t N,
                                               double theta_f = 0.0, double theta_g = 0.0,
                                               double theta_h = 0.0);

nlohmann::ordered_json to_json(const QuotientIdentityReport& r);

} // namespace pretense
