#include "pretense/constructions.hpp"

#include "pretense/degree_d.hpp"
#include "pretense/metrics.hpp"
#include "pretense/summation.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pretense {

namespace {

FunctionSpec general(std::string name, PrimePowerRule rule, bool bounded) {
  FunctionSpec s;
  s.name = std::move(name);
  s.kind = SpecKind::GeneralMultiplicative;
  s.rule = std::move(rule);
  s.bounded_by_one = bounded;
  return s;
}

} // namespace

FunctionSpec one() {
  auto s = completely_multiplicative("one", [](Prime) { return Complex{1.0, 0.0}; }, true);
  s.descriptor = {{"name", "one"}};
  return s;
}

FunctionSpec delta() {
  auto s = completely_multiplicative("delta", [](Prime) { return Complex{}; }, true);
  s.descriptor = {{"name", "delta"}};
  return s;
}

FunctionSpec moebius() {
  auto s = general("moebius", [](Prime, unsigned k) { return k == 1 ? Complex{-1.0} : Complex{}; }, true);
  s.descriptor = {{"name", "moebius"}};
  return s;
}

FunctionSpec liouville() {
  auto s = completely_multiplicative("liouville", [](Prime) { return Complex{-1.0}; }, true);
  s.descriptor = {{"name", "liouville"}};
  return s;
}

FunctionSpec alternating_sign() {
  auto s = general("alternating", [](Prime p, unsigned) { return p == 2 ? Complex{-1.0} : Complex{1.0}; },
                   true);
  s.descriptor = {{"name", "alternating"}};
  return s;
}

FunctionSpec standard_spec(std::string_view name) {
  if (name == "one")
    return one();
  if (name == "delta")
    return delta();
  if (name == "moebius")
    return moebius();
  if (name == "liouville")
    return liouville();
  throw std::invalid_argument(
      fmt::format("unknown standard spec '{}' (expected one, delta, moebius, liouville)", name));
}

FunctionSpec divisor_function(unsigned k) {
  if (k < 1 || k > kMaxDegree)
    throw std::invalid_argument(fmt::format("divisor function order must lie in [1, {}]", kMaxDegree));
  std::vector<FunctionSpec> parts(k, one());
  auto s = make_degree_d(std::move(parts), fmt::format("d{}", k)).spec;
  s.bounded_by_one = (k == 1);
  s.descriptor = {{"name", "divisor"}, {"k", k}};
  return s;
}

FunctionSpec dirichlet_character(std::uint64_t q, std::uint64_t index) {
  const DirichletCharacter chi(q, index);
  FunctionSpec s;
  s.name = fmt::format("chi_{}_{}", q, index);
  s.kind = SpecKind::CompletelyMultiplicative;
  s.bounded_by_one = true;
  s.degree = 1;
  // powers go through the residue table so every value stays an exact root of unity
  s.rule = [chi, q](Prime p, unsigned k) {
    std::uint64_t r = 1 % q;
    const std::uint64_t pm = p % q;
    for (unsigned i = 0; i < k; ++i)
      r = r * pm % q;
    return chi(r);
  };
  s.local = [chi, q](Prime p, std::span<Complex> out) {
    std::uint64_t r = 1 % q;
    const std::uint64_t pm = p % q;
    for (std::size_t k = 1; k < out.size(); ++k) {
      r = r * pm % q;
      out[k] = chi(r);
    }
  };
  s.descriptor = {{"name", "character"}, {"q", q}, {"index", index}};
  return s;
}

FunctionSpec kronecker_character(std::int64_t D) {
  if (!is_fundamental_discriminant(D))
    throw std::invalid_argument(fmt::format("{} is not a fundamental discriminant", D));
  auto s = completely_multiplicative(
      fmt::format("kronecker_{}", D), [D](Prime p) { return Complex(kronecker_symbol(D, p)); }, true);
  s.descriptor = {{"name", "kronecker"}, {"D", D}};
  return s;
}

FunctionSpec archimedean_twist(double t) {
  if (!(std::abs(t) <= kMaxTwist))
    throw std::invalid_argument(fmt::format("twist parameter |t| must be <= {}", kMaxTwist));
  auto s = completely_multiplicative(
      fmt::format("n^it[t={}]", t), [t](Prime p) { return std::polar(1.0, t * std::log(double(p))); }, true);
  s.descriptor = {{"name", "archimedean-twist"}, {"t", t}};
  return s;
}

bool in_dyadic_intervals(Prime p, std::span<const unsigned> J) {
  const unsigned bits = static_cast<unsigned>(std::bit_width(p)) - 1; // floor(log2 p)
  for (const unsigned j : J)
    if (bits == (1u << j))
      return true;
  return false;
}

FunctionSpec sparse_dyadic(const FunctionSpec& chi, std::span<const unsigned> J) {
  if (chi.kind != SpecKind::CompletelyMultiplicative)
    throw std::invalid_argument("sparse_dyadic needs a completely multiplicative base");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] > kMaxDyadicIndex)
      throw std::invalid_argument(fmt::format("dyadic index {} exceeds {}", J[i], kMaxDyadicIndex));
    if (i > 0 && J[i] <= J[i - 1])
      throw std::invalid_argument("dyadic intervals must be strictly ascending and disjoint");
  }
  std::vector<unsigned> js(J.begin(), J.end());
  auto s = completely_multiplicative(
      fmt::format("{}+dyadic", chi.name),
      [chi, js](Prime p) { return in_dyadic_intervals(p, js) ? Complex{1.0} : chi.at(p, 1); },
      chi.bounded_by_one);
  if (!chi.descriptor.is_null())
    s.descriptor = {{"name", "sparse-dyadic"}, {"chi", chi.descriptor}, {"J", js}};
  return s;
}

int SignRule::omega(Complex fp) const {
  // sign(0) = +1
  if (divergent)
    return fp.imag() > 0 ? -1 : 1;
  return fp.real() < 0 ? -1 : 1;
}

bool twisted_prime(Prime p) { return p >= 2 && std::log(std::log(double(p))) > 0.1; }

SignRule decide_sign_rule(const FunctionSpec& f, double cutoff) {
  if (!(cutoff >= 5) || cutoff > double(kMaxSieveLimit))
    throw std::invalid_argument(fmt::format("sign-rule cutoff must lie in [5, {}]", kMaxSieveLimit));
  SignRule rule;
  rule.cutoff = cutoff;
  const auto sieve = build_sieve(static_cast<std::uint64_t>(cutoff));
  double acc = 0.0;
  for (const auto p32 : sieve.primes) {
    const Prime p = p32;
    if (!twisted_prime(p))
      continue;
    acc += std::abs(f.at(p, 1).imag()) / (double(p) * std::log(std::log(double(p))));
    if (acc > kDivergenceThreshold)
      break;
  }
  rule.diagnostic = acc;
  rule.divergent = acc > kDivergenceThreshold;
  return rule;
}

namespace {

void require_twistable(const FunctionSpec& f, double beta, bool open_right) {
  if (!(beta > 0.0) || (open_right ? !(beta < 1.0) : !(beta <= 1.0)))
    throw std::invalid_argument(fmt::format("beta must lie in (0, 1), got {}", beta));
  if (f.kind != SpecKind::CompletelyMultiplicative || !f.bounded_by_one)
    throw std::invalid_argument("optimality twist needs a completely multiplicative f with |f| <= 1");
}

} // namespace

FunctionSpec optimality_twist(const FunctionSpec& f, double beta, double cutoff) {
  require_twistable(f, beta, true);
  return optimality_twist(f, beta, decide_sign_rule(f, cutoff));
}

FunctionSpec optimality_twist(const FunctionSpec& f, double beta, const SignRule& rule) {
  require_twistable(f, beta, true);
  const double expo = (1.0 - beta) / 2.0;
  auto s = completely_multiplicative(
      fmt::format("{}~twist[beta={}]", f.name, beta),
      [f, rule, expo](Prime p) {
        const Complex fp = f.at(p, 1);
        if (!twisted_prime(p))
          return fp;
        const double x = rule.omega(fp) / (std::pow(double(p), expo) * std::log(std::log(double(p))));
        return std::polar(1.0, 2.0 * std::numbers::pi * x) * fp;
      },
      true);
  if (!f.descriptor.is_null())
    s.descriptor = {{"name", "optimality-twist"},
                    {"f", f.descriptor},
                    {"beta", beta},
                    {"cutoff", rule.cutoff},
                    {"rule", rule.divergent ? "divergent" : "convergent"},
                    {"diagnostic", rule.diagnostic}};
  return s;
}

PfPartials P_f_partials(const FunctionSpec& f, double tau, const SieveIndex& sieve,
                        std::span<const double> cutoffs, double sign_cutoff) {
  if (!(tau >= 1.0))
    throw std::invalid_argument("tau must be >= 1");
  require_twistable(f, 0.5, true);
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))
      throw std::invalid_argument("cutoffs must be strictly increasing");
    if (cutoffs[i] > double(sieve.limit))
      throw std::out_of_range(fmt::format("cutoff {} exceeds sieve limit {}", cutoffs[i], sieve.limit));
  }
  PfPartials out;
  out.tau = tau;
  out.rule = decide_sign_rule(f, sign_cutoff);
  out.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  KahanComplex acc;
  std::size_t c = 0;
  for (const auto p32 : sieve.primes) {
    const Prime p = p32;
    while (c < cutoffs.size() && double(p) > cutoffs[c]) {
      out.partials.push_back(acc.value());
      ++c;
    }
    if (c == cutoffs.size())
      break;
    if (!twisted_prime(p))
      continue;
    const Complex fp = f.at(p, 1);
    const double w = std::pow(double(p), tau) * std::log(std::log(double(p)));
    acc.add(Complex{0.0, double(out.rule.omega(fp))} * fp / w);
  }
  while (out.partials.size() < cutoffs.size())
    out.partials.push_back(acc.value());

  std::vector<double> re, im;
  for (const auto& z : out.partials) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  out.re_slope = tail_slope(out.cutoffs, re);
  out.im_slope = tail_slope(out.cutoffs, im);
  return out;
}

FunctionSpec squarefree_restrict(const FunctionSpec& f) {
  FunctionSpec s;
  s.name = f.name + "~sqfree";
  s.kind = SpecKind::GeneralMultiplicative;
  s.bounded_by_one = f.bounded_by_one;
  s.growth_delta = f.growth_delta;
  s.rule = [f](Prime p, unsigned k) { return k == 1 ? f.at(p, 1) : Complex{}; };
  if (!f.descriptor.is_null())
    s.descriptor = {{"name", "squarefree-restrict"}, {"f", f.descriptor}};
  return s;
}

} // namespace pretense
