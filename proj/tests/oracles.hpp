#pragma once

// Independent reference computations. None of these share code with the
// library: trial division instead of the sieve, divisor loops instead of
// table convolution, permutation expansion instead of elimination.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

inline std::size_t prime_count(std::uint64_t x) {
  std::size_t c = 0;
  for (std::uint64_t n = 2; n <= x; ++n)
    c += is_prime(n);
  return c;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e)
      out.emplace_back(d, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

/// f(n) from prime-power values by trial-division factorization.
inline Complex multiplicative(std::uint64_t n, const std::function<Complex(std::uint64_t, unsigned)>& at) {
  Complex v = 1.0;
  for (const auto& [p, e] : factor(n))
    v *= at(p, e);
  return v;
}

/// sum_{d | n} a(d) b(n / d) by a plain divisor loop.
inline Complex dirichlet(std::uint64_t n, const std::function<Complex(std::uint64_t)>& a,
                         const std::function<Complex(std::uint64_t)>& b) {
  Complex s = 0.0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0)
      s += a(d) * b(n / d);
  return s;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    c += (n % d == 0);
  return c;
}

inline bool squarefree(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0)
      return false;
  return true;
}

inline int moebius(std::uint64_t n) {
  int s = 1;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1)
      return 0;
    s = -s;
  }
  return s;
}

/// Determinant by Laplace expansion along the first row (small n only).
inline Complex laplace_det(const std::vector<Complex>& a, std::size_t n) {
  if (n == 0)
    return 1.0;
  if (n == 1)
    return a[0];
  Complex det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c] == Complex{})
      continue;
    std::vector<Complex> minor;
    minor.reserve((n - 1) * (n - 1));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c)
          minor.push_back(a[i * n + j]);
    det += (c % 2 ? -1.0 : 1.0) * a[c] * laplace_det(minor, n - 1);
  }
  return det;
}

/// zeta(s) for real s > 1 by Euler-Maclaurin with M terms and 6 Bernoulli corrections.
inline double zeta(double s, unsigned M = 20) {
  double sum = 0.0;
  for (unsigned n = 1; n < M; ++n)
    sum += std::pow(double(n), -s);
  const double m = M;
  sum += std::pow(m, 1 - s) / (s - 1) + 0.5 * std::pow(m, -s);
  // B_{2j} / (2j)! * s (s+1) ... (s+2j-2) m^{-s-2j+1}
  const double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
  double rising = s; // s (s+1) ... (s+2j-2)
  double fact = 2.0; // (2j)!
  for (int j = 1; j <= 6; ++j) {
    sum += B[j - 1] / fact * rising * std::pow(m, -s - 2 * j + 1);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

} // namespace oracle
