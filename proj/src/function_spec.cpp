#include "pretense/function_spec.hpp"

#include <fmt/format.h>

#include <cmath>

namespace pretense {

std::string_view to_string(SpecKind kind) {
  switch (kind) {
  case SpecKind::CompletelyMultiplicative:
    return "completely-multiplicative";
  case SpecKind::GeneralMultiplicative:
    return "general-multiplicative";
  case SpecKind::DegreeDComposite:
    return "degree-d-composite";
  case SpecKind::Tabulated:
    return "tabulated";
  }
  return "unknown";
}

Complex FunctionSpec::at(Prime p, unsigned k) const {
  if (k == 0)
    return 1.0;
  try {
    if (rule)
      return rule(p, k);
    if (local) {
      std::vector<Complex> buf(k + 1);
      local(p, buf);
      return buf[k];
    }
  } catch (const RuleError&) {
    throw;
  } catch (const std::exception& e) {
    throw RuleError(fmt::format("spec '{}' failed at (p={}, k={}): {}", name, p, k, e.what()));
  }
  throw RuleError(fmt::format("spec '{}' has no prime-power rule", name));
}

LocalSeries FunctionSpec::local_series(Prime p, unsigned K) const {
  LocalSeries s{p, std::vector<Complex>(K + 1)};
  s.coeffs[0] = 1.0;
  if (local) {
    try {
      local(p, s.coeffs);
    } catch (const RuleError&) {
      throw;
    } catch (const std::exception& e) {
      throw RuleError(fmt::format("spec '{}' failed at (p={}, k<={}): {}", name, p, K, e.what()));
    }
    s.coeffs[0] = 1.0;
    return s;
  }
  for (unsigned k = 1; k <= K; ++k)
    s.coeffs[k] = at(p, k);
  return s;
}

FunctionSpec completely_multiplicative(std::string name, std::function<Complex(Prime)> at_prime,
                                       bool bounded_by_one) {
  FunctionSpec spec;
  spec.name = std::move(name);
  spec.kind = SpecKind::CompletelyMultiplicative;
  spec.bounded_by_one = bounded_by_one;
  spec.degree = 1;
  spec.rule = [at_prime](Prime p, unsigned k) { return ipow(at_prime(p), k); };
  spec.local = [at_prime](Prime p, std::span<Complex> out) {
    const Complex v = at_prime(p);
    Complex acc = 1.0;
    for (std::size_t k = 1; k < out.size(); ++k) {
      acc *= v;
      out[k] = acc;
    }
  };
  return spec;
}

std::vector<std::string> check_spec_claims(const FunctionSpec& spec, std::span<const Prime> primes,
                                           unsigned K) {
  std::vector<std::string> problems;
  for (const Prime p : primes) {
    const LocalSeries s = spec.local_series(p, K);
    for (unsigned k = 1; k <= K; ++k) {
      const Complex v = s.coeffs[k];
      if (spec.bounded_by_one && std::abs(v) > 1.0 + 1e-12)
        problems.push_back(fmt::format("|f({}^{})| = {} exceeds 1", p, k, std::abs(v)));
      if (spec.kind == SpecKind::CompletelyMultiplicative && k >= 2) {
        const Complex expect = ipow(s.coeffs[1], k);
        if (std::abs(v - expect) > 1e-12 * std::max(1.0, std::abs(expect)))
          problems.push_back(fmt::format("f({}^{}) differs from f({})^{}", p, k, p, k));
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        problems.push_back(fmt::format("f({}^{}) is not finite", p, k));
    }
  }
  return problems;
}

} // namespace pretense
