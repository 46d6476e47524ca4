#pragma once

#include "pretense/characters.hpp"
#include "pretense/function_spec.hpp"
#include "pretense/sieve.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pretense {

FunctionSpec one();
FunctionSpec delta();
FunctionSpec moebius();
FunctionSpec liouville();

/// (-1)^{n+1}: f(2^k) = -1 for k >= 1, f = 1 on odd prime powers.
FunctionSpec alternating_sign();

/// "one", "delta", "moebius" or "liouville"; anything else throws
/// std::invalid_argument.
FunctionSpec standard_spec(std::string_view name);

/// d_k(n), the number of ways to write n as an ordered product of k factors.
FunctionSpec divisor_function(unsigned k);

/// Character number `index` mod q (see DirichletCharacter for the ordering).
FunctionSpec dirichlet_character(std::uint64_t q, std::uint64_t index);

/// Kronecker symbol (D / .) for a fundamental discriminant D.
FunctionSpec kronecker_character(std::int64_t D);

inline constexpr double kMaxTwist = 1e6;

/// p -> p^{it}. Throws std::invalid_argument for |t| > kMaxTwist.
FunctionSpec archimedean_twist(double t);

/// f(p) = 1 for p in [2^{a_j}, 2^{a_j + 1}) with a_j = 2^j, j in J, and
/// f(p) = chi(p) elsewhere; completely multiplicative. J must be strictly
/// ascending with entries <= kMaxDyadicIndex.
inline constexpr unsigned kMaxDyadicIndex = 5;
FunctionSpec sparse_dyadic(const FunctionSpec& chi, std::span<const unsigned> J);

/// f(p) for p >= 2 lies in a sparse_dyadic interval for this J.
bool in_dyadic_intervals(Prime p, std::span<const unsigned> J);

/// The sign rule of the optimality twist, decided once per f.
///
/// diagnostic = sum over twisted p <= cutoff of |Im f(p)| / (p log log p),
/// stopping early once it passes kDivergenceThreshold. A diagnostic above
/// the threshold is read as divergence: omega_p = -sign(Im f(p)); otherwise
/// omega_p = sign(Re f(p)). sign(0) = +1.
inline constexpr double kDivergenceThreshold = 10.0;
inline constexpr double kDefaultSignCutoff = 1e7;

struct SignRule {
  bool divergent = false;
  double diagnostic = 0.0;
  double cutoff = kDefaultSignCutoff;

  int omega(Complex fp) const;
};

/// Primes with log log p <= 0.1 (p = 2, 3) are left untwisted.
bool twisted_prime(Prime p);

SignRule decide_sign_rule(const FunctionSpec& f, double cutoff = kDefaultSignCutoff);

/// g(p) = e(omega_p / (p^{(1-beta)/2} log log p)) f(p), completely
/// multiplicative. Requires f completely multiplicative with |f| <= 1 and
/// beta in (0, 1); throws std::invalid_argument otherwise.
FunctionSpec optimality_twist(const FunctionSpec& f, double beta,
                              double cutoff = kDefaultSignCutoff);

/// As above with a sign rule decided elsewhere (e.g. read back from a descriptor).
FunctionSpec optimality_twist(const FunctionSpec& f, double beta, const SignRule& rule);

/// Partial sums of P_f(tau) = sum_p i omega_p f(p) / (p^tau log log p) over
/// twisted primes, with slopes of the real and imaginary parts against
/// log log cutoff (upper half of the cutoffs).
struct PfPartials {
  double tau = 1.0;
  SignRule rule;
  std::vector<double> cutoffs;
  std::vector<Complex> partials;
  double re_slope = 0.0;
  double im_slope = 0.0;
};

PfPartials P_f_partials(const FunctionSpec& f, double tau, const SieveIndex& sieve,
                        std::span<const double> cutoffs, double sign_cutoff = kDefaultSignCutoff);

/// f(p) kept, f(p^k) = 0 for k >= 2.
FunctionSpec squarefree_restrict(const FunctionSpec& f);

} // namespace pretense
