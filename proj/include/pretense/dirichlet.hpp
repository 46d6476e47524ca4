#pragma once

#include "pretense/function_spec.hpp"
#include "pretense/sieve.hpp"
#include "pretense/value_table.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace pretense {

/// (f * h)(n) = sum_{dm = n} f(d) h(m) for n <= N. Both tables must reach N.
ValueTable convolve_table(const ValueTable& f, const ValueTable& h, std::uint64_t N);

/// h defined by g = f * h, with its local coefficients at the solved primes.
///
/// Invariant: g(p^k) = sum_{j=0}^{k} f(p^{k-j}) h(p^j) for 1 <= k <= K_p.
/// `h` answers every (p, k), not only the tabulated ones, by running the
/// same forward substitution on demand.
struct QuotientSpec {
  FunctionSpec h;
  std::string f_name;
  std::string g_name;
  std::vector<LocalSeries> local; ///< ascending primes
  unsigned max_exponent = 0;
};

/// Forward substitution h_k = g_k - sum_{j<k} f_{k-j} h_j. The series must
/// have equal length; f's constant term is the unit diagonal.
LocalSeries solve_local_quotient(const LocalSeries& f, const LocalSeries& g);

/// The quotient spec for g = f * h (h never needs the primes list to answer queries).
FunctionSpec quotient_spec(const FunctionSpec& f, const FunctionSpec& g);

/// h(p^k) for k = 1..K at each prime in `primes`.
QuotientSpec solve_quotient(const FunctionSpec& f, const FunctionSpec& g,
                            std::span<const Prime> primes, unsigned K);

/// As solve_quotient over all primes p <= N with K_p = floor(log N / log p).
QuotientSpec solve_quotient_dense(const FunctionSpec& f, const FunctionSpec& g,
                                  const SieveIndex& sieve, std::uint64_t N);

/// Inverse of a local series under convolution. Throws std::invalid_argument
/// when the constant coefficient is not exactly 1.
LocalSeries invert_local(const LocalSeries& s);

/// The Dirichlet inverse h~ of a multiplicative h, evaluated locally.
FunctionSpec dirichlet_inverse(const FunctionSpec& h);

/// h~(p^k), k <= K, at each given prime.
std::vector<LocalSeries> dirichlet_inverse_local(const FunctionSpec& h,
                                                 std::span<const Prime> primes, unsigned K);

/// Dirichlet inverse of an arbitrary table (not necessarily multiplicative).
/// Throws std::invalid_argument unless values[1] == 1.
ValueTable dirichlet_inverse_table(const ValueTable& h);

/// Default bound on the order of D_f(k, p).
inline constexpr unsigned kMaxDeterminantOrder = 64;

/// D_f(0..k, p), where D_f(k, p) = det(a_ij) with a_ij = f(p^{i-j+1}) for
/// i - j + 1 >= 0 and 0 otherwise. The matrix is lower Hessenberg with unit
/// superdiagonal; expanding along the first column gives
///   D_k = sum_{i=1}^{k} (-1)^{i+1} f(p^i) D_{k-i},   D_0 = 1,
/// which is what is computed (O(k^2)). Throws LimitError when k > max_order.
std::vector<Complex> determinant_sequence(const FunctionSpec& f, Prime p, unsigned k,
                                          unsigned max_order = kMaxDeterminantOrder);

Complex determinant_Df(const FunctionSpec& f, Prime p, unsigned k,
                       unsigned max_order = kMaxDeterminantOrder);

/// The k x k matrix behind D_f(k, p), row-major.
std::vector<Complex> determinant_matrix(const FunctionSpec& f, Prime p, unsigned k);

/// Determinant of a dense n x n row-major matrix by Gaussian elimination with
/// partial pivoting. Generic O(n^3) path, kept as a cross-check.
Complex dense_determinant(std::vector<Complex> a, std::size_t n);

/// h(p^n) = sum_{k=0}^{n-1} (-1)^k (g(p^{n-k}) - f(p^{n-k})) D_f(k, p), n >= 1.
Complex h_via_determinant(const FunctionSpec& f, const FunctionSpec& g, Prime p, unsigned n);

struct DeterminantBoundRow {
  unsigned n = 0;
  double abs_det = 0.0;
  double bound = 0.0; ///< 2^{n-1} p^{n delta}
  bool pass = false;
};

struct DeterminantBoundReport {
  Prime p = 0;
  double delta = 0.0;
  std::vector<DeterminantBoundRow> rows;       ///< n = 1..k_max
  std::vector<unsigned> hypothesis_violations; ///< k with |f(p^k)| > p^{k delta}
  bool all_pass = false;                       ///< every row passes and no violations
};

/// Checks |D_f(n, p)| <= 2^{n-1} p^{n delta} for n <= k_max, flagging (not
/// throwing on) exponents where |f(p^k)| <= p^{k delta} fails.
DeterminantBoundReport determinant_bound_check(const FunctionSpec& f, Prime p, unsigned k_max,
                                               double delta);

/// [{"prime": p, "coeffs": [[re, im], ...]}, ...] in ascending prime order.
nlohmann::ordered_json to_json(const QuotientSpec& q);

} // namespace pretense
