#include "pretense/characters.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pretense {

Complex root_of_unity(std::uint64_t num, std::uint64_t den) {
  num %= den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return std::polar(1.0, angle);
}

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1)
      r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t primitive_root_prime(std::uint64_t p) {
  if (p == 2)
    return 1;
  const auto fs = factor_small(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : fs)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
}

// One cyclic factor of the unit group mod q: its order, and the discrete log
// of every residue mod q (only meaningful on units).
struct CyclicFactor {
  std::uint64_t order;
  std::vector<std::uint32_t> log; // indexed by residue mod the prime power
  std::uint64_t modulus;          // the prime power
};

std::vector<CyclicFactor> unit_group_factors(std::uint64_t q) {
  std::vector<CyclicFactor> out;
  for (const auto& [p, e] : factor_small(q)) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i)
      pe *= p;
    if (p == 2) {
      if (e == 1)
        continue;
      CyclicFactor minus{2, std::vector<std::uint32_t>(pe, 0), pe};
      CyclicFactor five{pe / 4, std::vector<std::uint32_t>(pe, 0), pe};
      // every odd residue is +-5^j
      std::uint64_t x = 1;
      for (std::uint64_t j = 0; j < pe / 4; ++j) {
        minus.log[x] = 0;
        five.log[x] = static_cast<std::uint32_t>(j);
        minus.log[pe - x] = 1;
        five.log[pe - x] = static_cast<std::uint32_t>(j);
        x = x * 5 % pe;
      }
      out.push_back(std::move(minus));
      if (e >= 3)
        out.push_back(std::move(five));
      continue;
    }
    std::uint64_t g = primitive_root_prime(p);
    if (e >= 2 && powmod(g, p - 1, p * p) == 1)
      g += p;
    const std::uint64_t order = pe / p * (p - 1);
    CyclicFactor f{order, std::vector<std::uint32_t>(pe, 0), pe};
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < order; ++j) {
      f.log[x] = static_cast<std::uint32_t>(j);
      x = x * g % pe;
    }
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace

std::uint64_t character_count(std::uint64_t q) {
  if (q == 0)
    throw std::invalid_argument("modulus must be >= 1");
  std::uint64_t phi = q;
  for (const auto& [p, e] : factor_small(q))
    phi = phi / p * (p - 1);
  return phi;
}

DirichletCharacter::DirichletCharacter(std::uint64_t q, std::uint64_t index) : q_(q), index_(index) {
  if (q < 1 || q > kMaxCharacterModulus)
    throw std::invalid_argument(
        fmt::format("character modulus must lie in [1, {}], got {}", kMaxCharacterModulus, q));
  const std::uint64_t count = character_count(q);
  if (index >= count)
    throw std::invalid_argument(
        fmt::format("character index {} out of range: there are {} characters mod {}", index, count, q));

  const auto factors = unit_group_factors(q);
  std::vector<std::uint64_t> digits;
  std::uint64_t rest = index;
  std::uint64_t L = 1;
  for (const auto& f : factors) {
    digits.push_back(rest % f.order);
    rest /= f.order;
    L = std::lcm(L, f.order);
  }

  auto table = std::make_shared<std::vector<Complex>>(q, Complex{});
  for (std::uint64_t n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1)
      continue;
    std::uint64_t num = 0; // angle numerator over L
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      const std::uint64_t lg = f.log[n % f.modulus];
      num = (num + (digits[i] * lg % f.order) * (L / f.order)) % L;
    }
    (*table)[n] = root_of_unity(num, L);
    if ((*table)[n].imag() != 0.0)
      real_ = false;
  }
  table_ = std::move(table);
}

int kronecker_symbol(std::int64_t a, std::uint64_t n) {
  if (n == 0)
    throw std::invalid_argument("kronecker symbol needs n >= 1");
  int result = 1;
  // factor out powers of 2 in n
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0)
      return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5)
      result = -result;
  }
  if (n == 1)
    return result;
  // Jacobi symbol (a / n), n odd
  std::uint64_t m = n;
  std::uint64_t x = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
                                               static_cast<std::int64_t>(m));
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::uint64_t r = m % 8;
      if (r == 3 || r == 5)
        result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3)
      result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 1)
    return true;
  if (D == 0)
    return false;
  auto squarefree = [](std::uint64_t n) {
    for (const auto& [p, e] : factor_small(n))
      if (e > 1)
        return false;
    return true;
  };
  const std::int64_t r = ((D % 4) + 4) % 4;
  const std::uint64_t a = static_cast<std::uint64_t>(D < 0 ? -D : D);
  if (r == 1)
    return squarefree(a);
  if (r != 0)
    return false;
  const std::int64_t m = D / 4;
  const std::int64_t mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(a / 4);
}

} // namespace pretense
