#pragma once

#include "pretense/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pretense {

/// Largest supported sieve limit. The spf table costs 4 bytes per integer,
/// so the limit corresponds to 400 MB for the table alone.
inline constexpr std::uint64_t kMaxSieveLimit = 100'000'000;

/// Smallest-prime-factor table for [2, limit] plus the primes in order.
struct SieveIndex {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> spf;    ///< spf[n] for n <= limit; spf[0] = spf[1] = 0
  std::vector<std::uint32_t> primes; ///< ascending

  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit && spf[n] == n; }

  /// Prime factorization of 1 <= n <= limit as ascending (p, e) pairs.
  std::vector<std::pair<Prime, unsigned>> factor(std::uint64_t n) const;

  /// Primes not exceeding x, as Prime values.
  std::vector<Prime> primes_up_to(double x) const;
};

/// Linear sieve over [2, N]. Throws std::invalid_argument for N < 2 or
/// N > kMaxSieveLimit, ResourceError when the tables cannot be allocated.
SieveIndex build_sieve(std::uint64_t N);

} // namespace pretense
