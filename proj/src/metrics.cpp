#include "pretense/metrics.hpp"

#include "pretense/parallel.hpp"
#include "pretense/summation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace pretense {

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
  case DistanceKind::Classic:
    return "classic";
  case DistanceKind::Beta:
    return "beta";
  case DistanceKind::StrongBetaK:
    return "strong-beta-k";
  case DistanceKind::HSigma:
    return "H-sigma";
  case DistanceKind::HhatYSigma:
    return "Hhat-Y-sigma";
  case DistanceKind::HL2:
    return "h-L2";
  case DistanceKind::HL1:
    return "h-L1";
  }
  return "unknown";
}

double DistanceReport::param(std::string_view key) const {
  for (const auto& [k, v] : params)
    if (k == key)
      return v;
  throw std::out_of_range(fmt::format("report has no parameter '{}'", key));
}

double tail_slope(std::span<const double> cutoffs, std::span<const double> partials) {
  const std::size_t n = std::min(cutoffs.size(), partials.size());
  if (n < 2)
    return 0.0;
  std::size_t start = n / 2;
  if (n - start < 2)
    start = n - 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = start; i < n; ++i) {
    if (!(cutoffs[i] > std::exp(1.0)))
      continue;
    const double x = std::log(std::log(cutoffs[i]));
    sx += x;
    sy += partials[i];
    sxx += x * x;
    sxy += x * partials[i];
    ++m;
  }
  if (m < 2)
    return 0.0;
  const double den = m * sxx - sx * sx;
  return den > 0 ? (m * sxy - sx * sy) / den : 0.0;
}

namespace {

std::string plateau_verdict(double slope) {
  return slope < kPlateauSlope ? "plateau (consistent with convergence)" : "growing";
}

void check_cutoffs(std::span<const double> cutoffs, const SieveIndex& sieve) {
  if (cutoffs.empty())
    throw std::invalid_argument("at least one cutoff is required");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))
      throw std::invalid_argument("cutoffs must be strictly increasing");
    if (cutoffs[i] > static_cast<double>(sieve.limit))
      throw std::out_of_range(
          fmt::format("cutoff {} exceeds the sieve limit {}", cutoffs[i], sieve.limit));
  }
}

// Terms over primes are computed in parallel, then accumulated in ascending
// prime order.
template <class Term>
std::vector<double> prime_partials(const SieveIndex& sieve, std::span<const double> cutoffs,
                                   Term term) {
  check_cutoffs(cutoffs, sieve);
  const auto primes = sieve.primes_up_to(cutoffs.back());
  std::vector<double> terms(primes.size());
  constexpr std::size_t kChunk = 4096;
  parallel_for((primes.size() + kChunk - 1) / kChunk, [&](std::size_t c) {
    const std::size_t a = c * kChunk;
    const std::size_t b = std::min(primes.size(), a + kChunk);
    for (std::size_t i = a; i < b; ++i)
      terms[i] = term(primes[i]);
  });
  std::vector<double> partials(cutoffs.size());
  KahanSum acc;
  std::size_t i = 0;
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    while (i < primes.size() && static_cast<double>(primes[i]) <= cutoffs[c])
      acc.add(terms[i++]);
    partials[c] = acc.value();
  }
  return partials;
}

DistanceReport weighted_distance(DistanceKind kind, const FunctionSpec& f, const FunctionSpec& g,
                                 double beta, const SieveIndex& sieve,
                                 std::span<const double> cutoffs) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument(fmt::format("beta must lie in (0, 1], got {}", beta));
  DistanceReport r;
  r.kind = kind;
  if (kind == DistanceKind::Beta)
    r.params.emplace_back("beta", beta);
  r.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  r.partials = prime_partials(sieve, cutoffs, [&](Prime p) {
    const Complex fp = f.at(p, 1);
    const Complex gp = g.at(p, 1);
    if (std::abs(fp) > 1.0 + 1e-12 || std::abs(gp) > 1.0 + 1e-12)
      throw std::invalid_argument(
          fmt::format("unit-disc condition fails at p = {} (|f(p)| = {}, |g(p)| = {})", p,
                      std::abs(fp), std::abs(gp)));
    const double num = 1.0 - (fp * std::conj(gp)).real();
    const double pd = static_cast<double>(p);
    return num / (beta == 1.0 ? pd : std::pow(pd, beta));
  });
  r.tail_slope = tail_slope(r.cutoffs, r.partials);
  r.verdict = plateau_verdict(r.tail_slope);
  return r;
}

struct InnerSum {
  double value = 0.0;
  double tail_bound = 0.0;
  bool divergent = false;
};

// sum_{k=first}^{K} terms[k]; terms[K+1] is a probe for the ratio test.
// The tail beyond K is bounded geometrically by the worst ratio among the
// last few terms; a ratio >= 1 flags divergence.
InnerSum inner_sum(const std::vector<double>& terms, unsigned first) {
  InnerSum out;
  const unsigned K = static_cast<unsigned>(terms.size() - 2);
  KahanSum acc;
  for (unsigned k = first; k <= K; ++k)
    acc.add(terms[k]);
  out.value = acc.value();

  double worst = 0.0;
  bool all_zero = true;
  for (unsigned k = std::max(first, K >= 4 ? K - 4 : 0u); k <= K; ++k) {
    const double a = terms[k];
    const double b = terms[k + 1];
    if (b == 0.0)
      continue;
    all_zero = false;
    worst = a == 0.0 ? std::numeric_limits<double>::infinity() : std::max(worst, b / a);
  }
  if (all_zero)
    return out;
  if (!(worst < 1.0)) {
    out.divergent = true;
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  out.tail_bound = terms[K + 1] / (1.0 - worst);
  return out;
}

DistanceReport prime_power_series(DistanceKind kind, const FunctionSpec& h, double sigma, double Y,
                                  unsigned K, bool squared, unsigned first) {
  DistanceReport r;
  r.kind = kind;
  r.params.emplace_back("sigma", sigma);
  if (kind == DistanceKind::HhatYSigma)
    r.params.emplace_back("Y", Y);
  r.params.emplace_back("K", K);

  std::vector<Prime> primes;
  for (Prime p = 2; static_cast<double>(p) <= Y; ++p) {
    bool prime = true;
    for (Prime d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime)
      primes.push_back(p);
  }

  KahanSum total;
  double tail = 0.0;
  std::optional<Prime> diverges_at;
  for (const Prime p : primes) {
    // terms k = 0..K, then the probe term K+1 for the ratio test
    const LocalSeries s = h.local_series(p, K + 1);
    std::vector<double> terms(K + 2);
    const double ps = std::pow(static_cast<double>(p), sigma);
    double weight = 1.0;
    for (unsigned k = 0; k <= K + 1; ++k) {
      const double a = std::abs(s.coeffs[k]);
      terms[k] = (squared ? a * a : a) / weight;
      weight *= ps;
    }
    const InnerSum in = inner_sum(terms, first);
    total.add(in.value);
    if (in.divergent && !diverges_at)
      diverges_at = p;
    tail += in.tail_bound;
    r.cutoffs.push_back(static_cast<double>(p));
    r.partials.push_back(total.value());
  }
  r.params.emplace_back("value", total.value());
  r.params.emplace_back("tail_bound", tail);
  if (diverges_at) {
    r.params.emplace_back("diverges_at", static_cast<double>(*diverges_at));
    r.verdict = fmt::format("divergent (inner ratio >= 1 at p = {})", *diverges_at);
  } else {
    r.verdict = "convergent";
  }
  r.tail_slope = tail_slope(r.cutoffs, r.partials);
  return r;
}

} // namespace

DistanceReport distance_classic(const FunctionSpec& f, const FunctionSpec& g,
                                const SieveIndex& sieve, std::span<const double> cutoffs) {
  return weighted_distance(DistanceKind::Classic, f, g, 1.0, sieve, cutoffs);
}

DistanceReport distance_beta(const FunctionSpec& f, const FunctionSpec& g, double beta,
                             const SieveIndex& sieve, std::span<const double> cutoffs) {
  return weighted_distance(DistanceKind::Beta, f, g, beta, sieve, cutoffs);
}

DistanceReport distance_strong(const FunctionSpec& f, const FunctionSpec& g, double beta,
                               unsigned k, const SieveIndex& sieve,
                               std::span<const double> cutoffs) {
  if (!(beta > 0.0))
    throw std::invalid_argument("strong distance needs beta > 0");
  if (k < 1)
    throw std::invalid_argument("strong distance needs k >= 1");
  DistanceReport r;
  r.kind = DistanceKind::StrongBetaK;
  r.params = {{"beta", beta}, {"k", k}};
  r.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  r.partials = prime_partials(sieve, cutoffs, [&](Prime p) {
    const LocalSeries fl = f.local_series(p, k);
    const LocalSeries gl = g.local_series(p, k);
    const double pb = std::pow(static_cast<double>(p), beta);
    double w = 1.0;
    double s = 0.0;
    for (unsigned j = 1; j <= k; ++j) {
      w *= pb;
      s += std::abs(fl.coeffs[j] - gl.coeffs[j]) / w;
    }
    return s;
  });
  r.tail_slope = tail_slope(r.cutoffs, r.partials);
  r.verdict = plateau_verdict(r.tail_slope);
  return r;
}

DistanceReport H_series(const FunctionSpec& h, double sigma, unsigned K) {
  if (!(sigma > 0.0))
    throw std::invalid_argument(fmt::format("H(sigma) needs sigma > 0, got {}", sigma));
  return prime_power_series(DistanceKind::HSigma, h, sigma, std::pow(4.0, 1.0 / sigma), K, true, 0);
}

DistanceReport Hhat_series(const FunctionSpec& h, double sigma, double Y, unsigned K) {
  if (!(sigma > 0.0))
    throw std::invalid_argument(fmt::format("Hhat_Y(sigma) needs sigma > 0, got {}", sigma));
  if (!(Y >= 2.0))
    throw std::invalid_argument(fmt::format("Hhat_Y(sigma) needs Y >= 2, got {}", Y));
  return prime_power_series(DistanceKind::HhatYSigma, h, sigma, Y, K, false, 1);
}

DistanceReport h_majorant_series(const ValueTable& h, double sigma, MajorantPower power,
                                 std::span<const double> cutoffs) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("majorant series needs sigma > 0");
  if (cutoffs.empty())
    throw std::invalid_argument("at least one cutoff is required");
  DistanceReport r;
  r.kind = power == MajorantPower::L2 ? DistanceKind::HL2 : DistanceKind::HL1;
  r.params.emplace_back("sigma", sigma);
  r.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  KahanSum acc;
  std::uint64_t n = 1;
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    if (c > 0 && !(cutoffs[c] > cutoffs[c - 1]))
      throw std::invalid_argument("cutoffs must be strictly increasing");
    if (cutoffs[c] >= static_cast<double>(h.limit) + 1.0)
      throw std::out_of_range(fmt::format("cutoff {} exceeds the table limit {}", cutoffs[c], h.limit));
    for (; static_cast<double>(n) <= cutoffs[c]; ++n) {
      const double a = std::abs(h.values[n]);
      const double num = power == MajorantPower::L2 ? a * a : a;
      if (num != 0.0)
        acc.add(num / std::pow(static_cast<double>(n), sigma));
    }
    r.partials.push_back(acc.value());
  }
  r.tail_slope = tail_slope(r.cutoffs, r.partials);
  r.verdict = plateau_verdict(r.tail_slope);
  return r;
}

nlohmann::ordered_json to_json(const DistanceReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params)
    params[k] = v;
  return {{"kind", to_string(r.kind)}, {"params", params},   {"cutoffs", r.cutoffs},
          {"partials", r.partials},    {"tail_slope", r.tail_slope}, {"verdict", r.verdict}};
}

} // namespace pretense
