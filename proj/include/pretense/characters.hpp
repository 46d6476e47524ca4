#pragma once

#include "pretense/types.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace pretense {

inline constexpr std::uint64_t kMaxCharacterModulus = 1'000'000;

/// exp(2 pi i num / den), exact when 4 num / den is an integer.
Complex root_of_unity(std::uint64_t num, std::uint64_t den);

/// Euler phi(q): the number of characters mod q.
std::uint64_t character_count(std::uint64_t q);

/// A Dirichlet character mod q, tabulated on residues.
///
/// Characters are enumerated through the unit group: (Z/qZ)^* splits into
/// cyclic factors, one per odd prime power p^e (generated by the least
/// primitive root mod p^e) and, for 2^e, a factor <-1> of order 2 when e >= 2
/// and <5> of order 2^{e-2} when e >= 3. Factors are ordered by prime, with
/// <-1> before <5>. The index is read in mixed radix over those orders
/// (first factor least significant); the character sends the generator of a
/// factor of order m to e(a/m), a being that factor's digit. Index 0 is the
/// principal character. Every q in [1, kMaxCharacterModulus] is supported.
class DirichletCharacter {
public:
  /// Throws std::invalid_argument for q outside [1, kMaxCharacterModulus] or
  /// index >= phi(q).
  DirichletCharacter(std::uint64_t q, std::uint64_t index);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t index() const { return index_; }
  bool is_principal() const { return index_ == 0; }
  bool is_real() const { return real_; }

  Complex operator()(std::uint64_t n) const { return (*table_)[n % q_]; }

private:
  std::uint64_t q_;
  std::uint64_t index_;
  bool real_ = true;
  std::shared_ptr<const std::vector<Complex>> table_;
};

/// Kronecker symbol (a / n) for n >= 1.
int kronecker_symbol(std::int64_t a, std::uint64_t n);

/// D = 1, or D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree.
bool is_fundamental_discriminant(std::int64_t D);

} // namespace pretense
