#include "oracles.hpp"

#include "pretense/constructions.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/random_specs.hpp"
#include "pretense/sieve.hpp"
#include "pretense/value_table.hpp"

#include <gtest/gtest.h>

using namespace pretense;

namespace {

const SieveIndex& sieve() {
  static const SieveIndex s = build_sieve(20'000);
  return s;
}

double max_diff(const ValueTable& a, const ValueTable& b, std::uint64_t N) {
  double m = 0;
  for (std::uint64_t n = 1; n <= N; ++n)
    m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

} // namespace

TEST(Convolve, Examples) {
  const std::uint64_t N = 100;
  const auto h = evaluate(random_multiplicative(1), sieve(), N);
  EXPECT_EQ(max_diff(convolve_table(evaluate(delta(), sieve(), N), h, N), h, N), 0.0);
  const auto d = convolve_table(evaluate(one(), sieve(), N), evaluate(moebius(), sieve(), N), N);
  for (std::uint64_t n = 1; n <= N; ++n)
    EXPECT_EQ(d[n], Complex(n == 1 ? 1.0 : 0.0)) << n;
  const auto tau = convolve_table(evaluate(one(), sieve(), N), evaluate(one(), sieve(), N), N);
  EXPECT_EQ(tau[12], Complex(6.0));
}

TEST(Convolve, MatchesDivisorLoopOracle) {
  const std::uint64_t N = 2000;
  const auto a = evaluate(random_multiplicative(2), sieve(), N);
  const auto b = evaluate(random_multiplicative(3), sieve(), N);
  const auto c = convolve_table(a, b, N);
  for (std::uint64_t n = 1; n <= N; n += 13) {
    const Complex want = oracle::dirichlet(n, [&](std::uint64_t d) { return a[d]; },
                                           [&](std::uint64_t d) { return b[d]; });
    ASSERT_LT(std::abs(c[n] - want), 1e-12);
  }
}

TEST(Convolve, RejectsShortTables) {
  const auto a = evaluate(one(), sieve(), 50);
  const auto b = evaluate(one(), sieve(), 60);
  EXPECT_THROW(convolve_table(a, b, 60), std::invalid_argument);
}

TEST(Quotient, Examples) {
  const std::vector<Prime> primes{2, 3, 5, 7, 11};
  const auto f = random_multiplicative(5);
  for (const auto& s : solve_quotient(f, f, primes, 10).local)
    for (unsigned k = 1; k <= 10; ++k)
      EXPECT_EQ(s.coeffs[k], Complex{});

  const auto r1 = solve_quotient(alternating_sign(), one(), primes, 20);
  for (unsigned k = 0; k <= 20; ++k)
    EXPECT_EQ(r1.local[0].coeffs[k], Complex(std::ldexp(1.0, int(k))));

  const auto chi = dirichlet_character(4, 1);
  const auto q = solve_quotient(chi, squarefree_restrict(chi), primes, 6);
  for (const auto& s : q.local) {
    if (s.p == 2)
      continue;
    EXPECT_EQ(s.coeffs[1], Complex{});
    EXPECT_EQ(s.coeffs[2], Complex(-1.0));
    EXPECT_EQ(s.coeffs[3], Complex{});
  }
}

TEST(Quotient, LocalInvariantAndLazySpecAgree) {
  const auto f = random_multiplicative(8), g = random_multiplicative(9);
  const std::vector<Prime> primes{2, 3, 97, 101};
  const auto q = solve_quotient(f, g, primes, 12);
  for (const auto& s : q.local) {
    const auto fs = f.local_series(s.p, 12), gs = g.local_series(s.p, 12);
    for (unsigned k = 1; k <= 12; ++k) {
      Complex conv = 0;
      for (unsigned j = 0; j <= k; ++j)
        conv += fs.coeffs[k - j] * s.coeffs[j];
      EXPECT_LT(std::abs(conv - gs.coeffs[k]), 1e-10);
      EXPECT_EQ(q.h.at(s.p, k), s.coeffs[k]);
    }
  }
}

TEST(Quotient, DenseConvolutionReproducesG) {
  const std::uint64_t N = 10'000;
  for (std::uint64_t seed = 100; seed < 104; ++seed) {
    const auto f = random_multiplicative(seed), g = random_multiplicative(seed + 1000);
    const auto q = solve_quotient_dense(f, g, sieve(), N);
    const auto back = convolve_table(evaluate(f, sieve(), N), evaluate(q.h, sieve(), N), N);
    EXPECT_LE(max_diff(back, evaluate(g, sieve(), N), N), 1e-10);
  }
}

TEST(Inverse, Examples) {
  const std::uint64_t N = 500;
  const auto dinv = evaluate(dirichlet_inverse(delta()), sieve(), N);
  for (std::uint64_t n = 1; n <= N; ++n)
    EXPECT_EQ(dinv[n], Complex(n == 1 ? 1.0 : 0.0));
  const auto mu = evaluate(dirichlet_inverse(one()), sieve(), N);
  for (std::uint64_t n = 1; n <= N; ++n)
    EXPECT_EQ(mu[n], Complex(double(oracle::moebius(n)))) << n;
}

TEST(Inverse, InvolutionAndConvolutionIdentity) {
  const std::uint64_t N = 10'000;
  const auto h = random_multiplicative(42);
  const auto ht = evaluate(h, sieve(), N);
  const auto inv = evaluate(dirichlet_inverse(h), sieve(), N);
  const auto back = evaluate(dirichlet_inverse(dirichlet_inverse(h)), sieve(), N);
  EXPECT_LE(max_diff(back, ht, N), 1e-10);
  const auto id = convolve_table(ht, inv, N);
  EXPECT_LE(max_diff(id, evaluate(delta(), sieve(), N), N), 1e-10);
  // the generic table inverse agrees with the multiplicative one
  EXPECT_LE(max_diff(dirichlet_inverse_table(ht), inv, N), 1e-10);
}

TEST(Inverse, RejectsNonUnitConstant) {
  LocalSeries s{2, {2.0, 1.0}};
  EXPECT_THROW(invert_local(s), std::invalid_argument);
  auto t = evaluate(one(), sieve(), 10);
  t.values[1] = 3.0;
  EXPECT_THROW(dirichlet_inverse_table(t), std::invalid_argument);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant_Df(random_multiplicative(1), 5, 0), Complex(1.0));
  const auto cm = random_completely_multiplicative(3);
  EXPECT_LT(std::abs(determinant_Df(cm, 7, 2)), 1e-15);
  EXPECT_EQ(determinant_Df(divisor_function(2), 5, 3), Complex{});
  EXPECT_THROW(determinant_Df(cm, 7, kMaxDeterminantOrder + 1), LimitError);
}

TEST(Determinant, RecursionMatchesLaplaceAndElimination) {
  const auto f = random_multiplicative(17);
  for (const Prime p : {2u, 13u, 97u})
    for (unsigned k = 1; k <= 7; ++k) {
      const auto a = determinant_matrix(f, p, k);
      const Complex rec = determinant_Df(f, p, k);
      EXPECT_LT(std::abs(rec - oracle::laplace_det(a, k)), 1e-10);
      EXPECT_LT(std::abs(rec - dense_determinant(a, k)), 1e-10);
    }
}

TEST(Determinant, InverseMatrixEntries) {
  // the lower-triangular Toeplitz matrix A = (f(p^{i-j})) has inverse
  // entries (-1)^{i-j} D_f(i-j, p)
  const auto f = random_multiplicative(23);
  const Prime p = 11;
  const unsigned n = 6;
  const auto D = determinant_sequence(f, p, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Complex s = 0;
      for (unsigned l = 0; l < n; ++l) {
        const Complex a = i >= l ? f.at(p, i - l) : Complex{};
        const Complex b = l >= j ? (((l - j) % 2) ? -1.0 : 1.0) * D[l - j] : Complex{};
        s += a * b;
      }
      EXPECT_LT(std::abs(s - Complex(i == j ? 1.0 : 0.0)), 1e-12);
    }
}

TEST(HViaDeterminant, Examples) {
  const auto f = random_completely_multiplicative(1), g = random_completely_multiplicative(2);
  const Prime p = 13;
  const Complex gp = g.at(p, 1), fp = f.at(p, 1);
  EXPECT_LT(std::abs(h_via_determinant(f, g, p, 2) - gp * (gp - fp)), 1e-12);
  EXPECT_EQ(h_via_determinant(f, f, p, 4), Complex{});
  const auto F = random_multiplicative(3), G = random_multiplicative(4);
  const auto q = solve_quotient(F, G, std::vector<Prime>{7}, 5);
  EXPECT_LT(std::abs(h_via_determinant(F, G, 7, 5) - q.local[0].coeffs[5]), 1e-10);
  EXPECT_THROW(h_via_determinant(F, G, 7, 0), std::invalid_argument);
}

TEST(DeterminantBound, Examples) {
  const auto unit = determinant_bound_check(random_multiplicative(6), 3, 12, 0.0);
  EXPECT_TRUE(unit.all_pass);
  EXPECT_TRUE(unit.hypothesis_violations.empty());
  for (const Prime p : {5u, 7u, 11u, 97u})
    EXPECT_TRUE(determinant_bound_check(divisor_function(2), p, 10, 0.5).all_pass) << p;
  FunctionSpec pow2;
  pow2.name = "2^k";
  pow2.rule = [](Prime, unsigned k) { return Complex(std::ldexp(1.0, int(k))); };
  const auto r = determinant_bound_check(pow2, 2, 5, 0.0);
  EXPECT_FALSE(r.all_pass);
  EXPECT_FALSE(r.hypothesis_violations.empty());
  EXPECT_EQ(r.hypothesis_violations.front(), 1u);
}
