#include "oracles.hpp"

#include "pretense/asymptotics.hpp"
#include "pretense/constructions.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/metrics.hpp"
#include "pretense/random_specs.hpp"
#include "pretense/value_table.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pretense;

namespace {

const SieveIndex& sieve() {
  static const SieveIndex s = build_sieve(10'000'000);
  return s;
}

Complex e(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

// f(mn) = f(m) f(n) on random coprime pairs, within tol
void expect_multiplicative(const FunctionSpec& f, std::uint64_t N = 20'000) {
  const auto t = evaluate(f, sieve(), N);
  EXPECT_EQ(t[1], Complex(1.0)) << f.name;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> u(2, 140);
  int checked = 0;
  while (checked < 300) {
    const auto m = u(rng), n = u(rng);
    if (oracle::gcd(m, n) != 1)
      continue;
    ++checked;
    ASSERT_LT(std::abs(t[m * n] - t[m] * t[n]), 1e-12) << f.name << " m=" << m << " n=" << n;
  }
}

} // namespace

TEST(Standard, Examples) {
  const auto mu = evaluate(moebius(), sieve(), 10'000);
  const auto lam = evaluate(liouville(), sieve(), 10'000);
  const auto one_t = evaluate(one(), sieve(), 10'000);
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    ASSERT_EQ(mu[n].real(), double(oracle::moebius(n)));
    if (oracle::squarefree(n)) {
      ASSERT_EQ(lam[n], mu[n]);
    }
  }
  const auto conv = convolve_table(one_t, mu, 10'000);
  for (std::uint64_t n = 1; n <= 10'000; ++n)
    ASSERT_EQ(conv[n], Complex(n == 1 ? 1.0 : 0.0)) << n;
  EXPECT_EQ(liouville().at(3, 5), Complex(-1.0));
  EXPECT_EQ(moebius().at(3, 2), Complex(0.0));
  for (const char* name : {"one", "delta", "moebius", "liouville"})
    EXPECT_NO_THROW(standard_spec(name));
  EXPECT_THROW(standard_spec("lambda-mu"), std::invalid_argument);
  EXPECT_THROW(standard_spec(""), std::invalid_argument);
}

TEST(ArchimedeanTwist, Examples) {
  const auto zero = archimedean_twist(0.0);
  for (const auto p : sieve().primes_up_to(1000))
    EXPECT_EQ(zero.at(p, 1), Complex(1.0));
  const auto f = archimedean_twist(1.0);
  std::size_t count = 0;
  for (const auto p : sieve().primes) {
    ASSERT_NEAR(std::abs(f.at(p, 1)), 1.0, 1e-14);
    ASSERT_LT(std::abs(f.at(p, 1) - std::polar(1.0, std::log(double(p)))), 1e-14);
    if (++count == 10'000)
      break;
  }
  const std::uint64_t N = 1'000'000;
  const auto cps = geometric_checkpoints(1000, default_grid_ratio(), double(N));
  const auto fit = growth_fit(partial_sums(evaluate(f, sieve(), N), cps));
  EXPECT_NEAR(fit.exponent, 1.0, 0.05);
  EXPECT_THROW(archimedean_twist(2e6), std::invalid_argument);
}

TEST(SparseDyadic, EmptyIsCharacter) {
  const auto chi = dirichlet_character(4, 1);
  const auto f = sparse_dyadic(chi, {});
  for (const auto p : sieve().primes_up_to(1e5))
    ASSERT_EQ(f.at(p, 1), chi.at(p, 1));
}

TEST(SparseDyadic, IntervalContribution) {
  const auto chi = dirichlet_character(4, 1);
  for (const unsigned j : {2u, 3u, 4u}) {
    const unsigned a = 1u << j;
    const std::vector<unsigned> J{j};
    const auto f = sparse_dyadic(chi, J);
    const double lo = std::ldexp(1.0, int(a)), hi = std::ldexp(1.0, int(a + 1));
    const std::vector<double> cps{lo - 1, hi - 1, hi * 4};
    const auto r = distance_classic(chi, f, sieve(), cps);
    double want = 0, all = 0;
    for (std::uint64_t p = std::uint64_t(lo); p < std::uint64_t(hi); ++p)
      if (sieve().is_prime(p)) {
        want += (1.0 - chi.at(p, 1).real()) / double(p);
        all += 2.0 / double(p);
      }
    // only p = 2 (where both vanish) contributes below the interval
    EXPECT_EQ(r.partials[0], 0.5);
    const double increase = r.partials[1] - r.partials[0];
    EXPECT_NEAR(increase, want, 1e-12);
    EXPECT_LE(increase, all);
    EXPECT_EQ(r.partials[2], r.partials[1]);
    // Mertens-type envelope
    EXPECT_LE(increase, 2 * std::log(2.0) / a + 0.01) << j;
  }
}

TEST(SparseDyadic, FloodsPartialSums) {
  const auto chi = dirichlet_character(4, 1);
  const std::vector<unsigned> J{3, 4};
  const double x = std::ldexp(1.0, 17);
  const auto t = evaluate(sparse_dyadic(chi, J), sieve(), std::uint64_t(x));
  const std::vector<double> cps{x};
  const double S = std::abs(partial_sums(t, cps).sums[0]);
  EXPECT_GE(S, 0.05 * x / std::log(x));
}

TEST(SparseDyadic, Errors) {
  const auto chi = dirichlet_character(4, 1);
  EXPECT_THROW(sparse_dyadic(chi, std::vector<unsigned>{3, 3}), std::invalid_argument);
  EXPECT_THROW(sparse_dyadic(chi, std::vector<unsigned>{4, 3}), std::invalid_argument);
  EXPECT_THROW(sparse_dyadic(chi, std::vector<unsigned>{6}), std::invalid_argument);
  EXPECT_TRUE(in_dyadic_intervals(257, std::vector<unsigned>{3}));
  EXPECT_FALSE(in_dyadic_intervals(521, std::vector<unsigned>{3}));
}

TEST(OptimalityTwist, FormulaInstantiation) {
  const auto g = optimality_twist(one(), 0.5, 1e5);
  const Complex want = e(1.0 / (std::pow(5.0, 0.25) * std::log(std::log(5.0))));
  EXPECT_LT(std::abs(g.at(5, 1) - want), 1e-15);
  EXPECT_EQ(g.at(2, 1), Complex(1.0));
  EXPECT_EQ(g.at(3, 1), Complex(1.0));
  EXPECT_FALSE(twisted_prime(3));
  EXPECT_TRUE(twisted_prime(5));
  // beta near 1: magnitude 1/log log p
  const auto h = optimality_twist(one(), 1.0 - 1e-12, 1e5);
  EXPECT_LT(std::abs(h.at(101, 1) - e(1.0 / std::log(std::log(101.0)))), 1e-9);
}

TEST(OptimalityTwist, UnimodularAndErrors) {
  const auto f = random_completely_multiplicative(8);
  const auto g = optimality_twist(f, 0.3, 1e5);
  for (const auto p : sieve().primes_up_to(1e4))
    ASSERT_NEAR(std::abs(g.at(p, 1)), std::abs(f.at(p, 1)), 1e-14);
  EXPECT_THROW(optimality_twist(f, 0.0, 1e5), std::invalid_argument);
  EXPECT_THROW(optimality_twist(f, 1.0, 1e5), std::invalid_argument);
  EXPECT_THROW(optimality_twist(random_multiplicative(1), 0.5, 1e5), std::invalid_argument);
}

TEST(OptimalityTwist, SignRule) {
  const auto r1 = decide_sign_rule(one(), 1e6);
  EXPECT_FALSE(r1.divergent);
  EXPECT_EQ(r1.diagnostic, 0.0);
  EXPECT_EQ(r1.omega(Complex(0.0)), 1);
  EXPECT_EQ(r1.omega(Complex(-0.5, 0.2)), -1);
  // |Im f(p)| = 1 is the largest possible diagnostic; it still stays below T at 1e7
  const auto fi = completely_multiplicative("i", [](Prime) { return Complex(0, 1); }, true);
  const auto ri = decide_sign_rule(fi, 1e7);
  double direct = 0;
  for (const auto p : sieve().primes)
    if (twisted_prime(p))
      direct += 1.0 / (double(p) * std::log(std::log(double(p))));
  EXPECT_NEAR(ri.diagnostic, direct, 1e-9);
  EXPECT_FALSE(ri.divergent);
  SignRule rt;
  rt.divergent = true;
  EXPECT_EQ(rt.omega(Complex(0.3, 0.4)), -1);
  EXPECT_EQ(rt.omega(Complex(0.3, 0.0)), 1);
  EXPECT_EQ(rt.omega(Complex(0.3, -0.4)), 1);
}

TEST(PfPartials, Examples) {
  const auto cps = geometric_checkpoints(100, default_grid_ratio(), 1e7);
  const auto p1 = P_f_partials(one(), 1.0, sieve(), cps, 1e5);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    EXPECT_EQ(p1.partials[i].real(), 0.0);
    if (i) {
      EXPECT_GT(p1.partials[i].imag(), p1.partials[i - 1].imag());
    }
  }
  EXPECT_GT(p1.im_slope, 0.1);
  // direct check at the first cutoff
  double direct = 0;
  for (std::uint64_t p = 5; p <= 100; ++p)
    if (oracle::is_prime(p))
      direct += 1.0 / (double(p) * std::log(std::log(double(p))));
  EXPECT_NEAR(p1.partials[0].imag(), direct, 1e-12);

  const auto p2 = P_f_partials(one(), 2.0, sieve(), cps, 1e5);
  EXPECT_LT(std::abs(p2.im_slope), kPlateauSlope);

  const auto chi = dirichlet_character(4, 1);
  const auto pc = P_f_partials(chi, 1.0, sieve(), cps, 1e5);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    EXPECT_EQ(pc.partials[i].real(), 0.0);
    if (i) {
      EXPECT_GT(pc.partials[i].imag(), pc.partials[i - 1].imag());
    }
  }
  EXPECT_THROW(P_f_partials(one(), 0.5, sieve(), cps, 1e5), std::invalid_argument);
}

TEST(PfPartials, NonnegativeRealSelectsPlusOne) {
  const auto cps = geometric_checkpoints(1e5, default_grid_ratio(), 1e7);
  const auto r = P_f_partials(one(), 1.0, sieve(), cps);
  EXPECT_FALSE(r.rule.divergent);
  EXPECT_EQ(r.rule.omega(Complex(1.0)), 1);
  EXPECT_GT(r.im_slope, 0.0);
}

TEST(SquarefreeRestrict, Examples) {
  const auto s = squarefree_restrict(one());
  const auto t = evaluate(s, sieve(), 100);
  const std::vector<double> cps{10};
  EXPECT_EQ(partial_sums(t, cps).sums[0], Complex(7.0));
  const auto f = random_multiplicative(4);
  const auto ft = evaluate(f, sieve(), 100), st = evaluate(squarefree_restrict(f), sieve(), 100);
  EXPECT_EQ(st[12], Complex(0.0));
  EXPECT_LT(std::abs(st[30] - ft[30]), 1e-15);
  for (std::uint64_t n = 1; n <= 100; ++n)
    EXPECT_LT(std::abs(st[n] - (oracle::squarefree(n) ? ft[n] : Complex(0.0))), 1e-15);
}

TEST(SquarefreeRestrict, Idempotent) {
  const auto f = random_multiplicative(11);
  const auto a = squarefree_restrict(f), b = squarefree_restrict(a);
  for (const auto p : sieve().primes_up_to(1000))
    for (unsigned k = 0; k <= 6; ++k)
      ASSERT_EQ(a.at(p, k), b.at(p, k));
}

TEST(SquarefreeRestrict, QuadraticQuotientLocalSeries) {
  const auto chi = kronecker_character(-4);
  const auto q = solve_quotient(chi, squarefree_restrict(chi), sieve().primes_up_to(200), 8);
  for (const auto& ls : q.local) {
    if (ls.p == 2)
      continue;
    for (unsigned k = 0; k <= 8; ++k) {
      const Complex want = k == 0 ? 1.0 : (k == 2 ? -1.0 : 0.0);
      ASSERT_LT(std::abs(ls.coeffs[k] - want), 1e-12) << ls.p << " " << k;
    }
  }
}

TEST(Constructions, AllMultiplicative) {
  const auto chi = dirichlet_character(7, 2);
  const std::vector<unsigned> J{2, 3};
  expect_multiplicative(chi);
  expect_multiplicative(kronecker_character(-3));
  expect_multiplicative(archimedean_twist(2.5));
  expect_multiplicative(sparse_dyadic(chi, J));
  expect_multiplicative(optimality_twist(chi, 0.5, 1e5));
  expect_multiplicative(squarefree_restrict(chi));
  expect_multiplicative(divisor_function(3));
  expect_multiplicative(alternating_sign());
  expect_multiplicative(random_multiplicative(3));
  expect_multiplicative(random_sparse_modification(chi, 3));
}

TEST(Constructions, KroneckerMatchesCharacterTable) {
  // -4 is the odd character mod 4; -3 the one mod 3
  const auto k4 = kronecker_character(-4), c4 = dirichlet_character(4, 1);
  const auto k3 = kronecker_character(-3), c3 = dirichlet_character(3, 1);
  for (const auto p : sieve().primes_up_to(1000)) {
    ASSERT_EQ(k4.at(p, 1), c4.at(p, 1)) << p;
    ASSERT_EQ(k3.at(p, 1), c3.at(p, 1)) << p;
  }
  EXPECT_THROW(kronecker_character(20), std::invalid_argument);
  EXPECT_THROW(kronecker_character(9), std::invalid_argument);
  EXPECT_NO_THROW(kronecker_character(12));
}
