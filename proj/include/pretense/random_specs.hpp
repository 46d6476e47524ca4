#pragma once

#include "pretense/function_spec.hpp"

#include <cstdint>

namespace pretense {

/// Uniform u in [0, 1) determined by (seed, p, k) through a splitmix64 hash,
/// so random specs are replayable value by value without shared state.
double hash_uniform(std::uint64_t seed, std::uint64_t p, std::uint64_t k);

/// f(p) = exp(2 pi i u(seed, p, 1)), completely multiplicative.
FunctionSpec random_completely_multiplicative(std::uint64_t seed);

/// f(p^k) = exp(2 pi i u(seed, p, k)) independently for every prime power.
FunctionSpec random_multiplicative(std::uint64_t seed);

/// g(p) = exp(2 pi i u(seed, p, 0)) when u(seed, p, 1) < min(1, 4/p),
/// g(p) = f(p) otherwise; completely multiplicative. The modified primes are
/// sparse enough that sum 1/p^{1+beta} over them converges for every beta > 0.
FunctionSpec random_sparse_modification(const FunctionSpec& f, std::uint64_t seed);

/// Whether random_sparse_modification(., seed) modifies the prime p.
bool sparse_modifies(std::uint64_t seed, Prime p);

} // namespace pretense
