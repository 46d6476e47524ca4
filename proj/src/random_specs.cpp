#include "pretense/random_specs.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pretense {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Complex unit(double u) { return std::polar(1.0, 2.0 * std::numbers::pi * u); }

} // namespace

double hash_uniform(std::uint64_t seed, std::uint64_t p, std::uint64_t k) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ p) ^ k);
  return double(h >> 11) * 0x1.0p-53;
}

FunctionSpec random_completely_multiplicative(std::uint64_t seed) {
  auto s = completely_multiplicative(
      fmt::format("random-cm[{}]", seed), [seed](Prime p) { return unit(hash_uniform(seed, p, 1)); }, true);
  s.descriptor = {{"name", "random-cm"}, {"seed", seed}};
  return s;
}

FunctionSpec random_multiplicative(std::uint64_t seed) {
  FunctionSpec s;
  s.name = fmt::format("random[{}]", seed);
  s.kind = SpecKind::GeneralMultiplicative;
  s.bounded_by_one = true;
  s.rule = [seed](Prime p, unsigned k) { return unit(hash_uniform(seed, p, k)); };
  s.descriptor = {{"name", "random"}, {"seed", seed}};
  return s;
}

bool sparse_modifies(std::uint64_t seed, Prime p) {
  return hash_uniform(seed, p, 1) < std::min(1.0, 4.0 / double(p));
}

FunctionSpec random_sparse_modification(const FunctionSpec& f, std::uint64_t seed) {
  if (f.kind != SpecKind::CompletelyMultiplicative)
    throw std::invalid_argument("random_sparse_modification needs a completely multiplicative base");
  auto s = completely_multiplicative(
      fmt::format("{}~sparse[{}]", f.name, seed),
      [f, seed](Prime p) { return sparse_modifies(seed, p) ? unit(hash_uniform(seed, p, 0)) : f.at(p, 1); },
      f.bounded_by_one);
  if (!f.descriptor.is_null())
    s.descriptor = {{"name", "random-sparse"}, {"f", f.descriptor}, {"seed", seed}};
  return s;
}

} // namespace pretense
