#include "pretense/sieve.hpp"

#include <fmt/format.h>

#include <cmath>
#include <new>
#include <stdexcept>

namespace pretense {

SieveIndex build_sieve(std::uint64_t N) {
  if (N < 2)
    throw std::invalid_argument(fmt::format("sieve limit must be >= 2, got {}", N));
  if (N > kMaxSieveLimit)
    throw std::invalid_argument(
        fmt::format("sieve limit {} exceeds the supported maximum {}", N, kMaxSieveLimit));

  SieveIndex s;
  s.limit = N;
  try {
    s.spf.assign(N + 1, 0);
    // pi(N) < 1.26 N / log N for N >= 17
    const double estimate = 1.26 * static_cast<double>(N) / std::log(static_cast<double>(N)) + 16;
    s.primes.reserve(static_cast<std::size_t>(estimate));
  } catch (const std::bad_alloc&) {
    const double bytes = 4.0 * static_cast<double>(N + 1) * 1.2;
    throw ResourceError(
        fmt::format("cannot allocate sieve tables for N = {}: about {:.0f} bytes required", N, bytes));
  }

  auto& spf = s.spf;
  auto& primes = s.primes;
  const auto n32 = static_cast<std::uint32_t>(N);
  for (std::uint32_t i = 2; i <= n32; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
    }
    const std::uint32_t si = spf[i];
    for (const std::uint32_t p : primes) {
      if (p > si)
        break;
      const std::uint64_t m = std::uint64_t{p} * i;
      if (m > N)
        break;
      spf[m] = p;
    }
  }
  return s;
}

std::vector<std::pair<Prime, unsigned>> SieveIndex::factor(std::uint64_t n) const {
  if (n == 0 || n > limit)
    throw std::out_of_range(fmt::format("cannot factor {} with a sieve to {}", n, limit));
  std::vector<std::pair<Prime, unsigned>> out;
  while (n > 1) {
    const std::uint32_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<Prime> SieveIndex::primes_up_to(double x) const {
  std::vector<Prime> out;
  for (const std::uint32_t p : primes) {
    if (static_cast<double>(p) > x)
      break;
    out.push_back(p);
  }
  return out;
}

} // namespace pretense
