#pragma once

#include "pretense/function_spec.hpp"
#include "pretense/sieve.hpp"
#include "pretense/value_table.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace pretense {

inline constexpr unsigned kMaxDegree = 16;

/// Complete homogeneous symmetric polynomial q_k^d(x_1..x_d), built one
/// variable at a time: q_k^{(m)} = q_k^{(m-1)} + x_m q_{k-1}^{(m)}.
Complex q_poly(unsigned k, std::span<const Complex> x);

/// q_0..q_K in one pass.
std::vector<Complex> q_sequence(unsigned K, std::span<const Complex> x);

/// Elementary symmetric polynomial r_k^d(x_1..x_d); zero for k > d.
Complex r_poly(unsigned k, std::span<const Complex> x);

/// Solves sum_{j=0}^{k} (-1)^j r_{k-j} q_j = 0 (k = 1..d) for r_1..r_d given
/// q_1..q_d, with q_0 = r_0 = 1. Unit triangular, so always solvable.
std::vector<Complex> q_to_r(std::span<const Complex> q);

/// f = f_1 * ... * f_d for completely multiplicative unit-disc constituents,
/// so f(p^k) = q_k^d(f_1(p), ..., f_d(p)).
struct DegreeDSpec {
  unsigned d = 0;
  std::vector<FunctionSpec> constituents;
  FunctionSpec spec;
};

/// Throws std::invalid_argument unless 1 <= d <= kMaxDegree and every
/// constituent claims complete multiplicativity and |f_i| <= 1.
DegreeDSpec make_degree_d(std::vector<FunctionSpec> constituents, std::string name = {});

/// Symmetric data of a degree-d function at one prime: q = (f(p)..f(p^d)),
/// r = q_to_r(q), alpha = (1, r_1, ..., r_d).
struct SymmetricCoeffs {
  Prime p = 0;
  std::vector<Complex> q;
  std::vector<Complex> r;
  std::vector<Complex> alpha;
};

/// Throws std::invalid_argument when `f` carries no degree.
SymmetricCoeffs alpha_coeffs(const FunctionSpec& f, Prime p);

/// |sum_{k=0}^{d} (-1)^k alpha_k(f, p) f(p^{n+d-k})|.
double recursion_residual(const FunctionSpec& f, Prime p, unsigned n);

struct ExtensionRow {
  Prime p = 0;
  double head = 0.0; ///< sum_{n<=d} |f(p^n) - g(p^n)| / p^{n beta}
  double tail = 0.0; ///< sum_{n>d} of the same terms
  double ratio = 0.0;
  bool skipped = false;   ///< head and tail both zero
  bool violation = false; ///< head zero, tail > 1e-12
};

struct ExtensionReport {
  double beta = 0.0;
  Prime p0 = 2;
  std::vector<ExtensionRow> rows;
  double sup_ratio = 0.0; ///< over non-skipped rows with p >= p0
  unsigned violations = 0;
};

/// Compares the tail of the strong-distance prime-power sum beyond d with its
/// first d terms, prime by prime up to P.
ExtensionReport degreedist_extension_check(const DegreeDSpec& f, const DegreeDSpec& g, double beta,
                                           const SieveIndex& sieve, double P, Prime p0 = 2);

struct GrowthDeltaReport {
  double delta = 0.0;
  std::vector<double> checkpoints;  ///< right ends of geometric windows
  std::vector<double> window_max;   ///< max of |f(n)|/n^delta over each window
  std::vector<double> running_max;  ///< max over [1, checkpoint]
  std::uint64_t argmax = 1;         ///< where the overall maximum is attained
  std::optional<double> n0;         ///< window maxima are nonincreasing from here on
};

/// Scans |f(n)| / n^delta over a dense table for each delta.
std::vector<GrowthDeltaReport> growth_delta_check(const ValueTable& table,
                                                  std::span<const double> deltas);

nlohmann::ordered_json to_json(const SymmetricCoeffs& c);

} // namespace pretense
