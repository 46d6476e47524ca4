#include "pretense/asymptotics.hpp"

#include "pretense/parallel.hpp"
#include "pretense/summation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace pretense {

namespace {

// sum of term(n) for n in [1, N] under the block reduction contract.
template <class Term>
Complex block_sum(std::uint64_t N, const Term& term) {
  if (N == 0)
    return {};
  const std::size_t blocks = (N + kReductionBlock - 1) / kReductionBlock;
  std::vector<Complex> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    KahanComplex acc;
    const std::uint64_t lo = b * kReductionBlock + 1;
    const std::uint64_t hi = std::min<std::uint64_t>(N, (b + 1) * kReductionBlock);
    for (std::uint64_t n = lo; n <= hi; ++n)
      acc.add(term(n));
    partial[b] = acc.value();
  });
  KahanComplex total;
  for (const auto& z : partial)
    total.add(z);
  return total.value();
}

Complex pow_neg(double n, Complex s) {
  // n^{-s} = n^{-Re s} e^{-i Im s log n}
  const double ln = std::log(n);
  return std::polar(std::exp(-s.real() * ln), -s.imag() * ln);
}

} // namespace

GrowthFit growth_fit(std::span<const double> x, std::span<const Complex> S, double x_lo, double x_hi) {
  if (x.size() != S.size())
    throw std::invalid_argument("growth_fit: checkpoint and sum counts differ");
  std::vector<double> lx, ly;
  std::size_t in_range = 0, dropped = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_lo || x[i] > x_hi)
      continue;
    ++in_range;
    const double a = std::abs(S[i]);
    if (!(a >= kZeroSumThreshold) || !(x[i] > 0)) {
      ++dropped;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(a));
  }
  if (in_range < 4)
    throw std::invalid_argument(fmt::format("growth_fit needs at least 4 checkpoints, got {}", in_range));
  const std::size_t n = lx.size();
  if (n < 2)
    throw DegenerateFitError(fmt::format("growth_fit: only {} usable point(s) after dropping {} zero sum(s)",
                                         n, dropped));
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0))
    throw DegenerateFitError("growth_fit: all usable checkpoints coincide");
  GrowthFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / double(n));
  fit.points_used = n;
  fit.dropped_zero_points = dropped;
  return fit;
}

GrowthFit growth_fit(const PartialSumSeries& series, double x_lo, double x_hi) {
  return growth_fit(series.checkpoints, series.sums, x_lo, x_hi);
}

nlohmann::ordered_json to_json(const GrowthFit& fit) {
  return {{"exponent", fit.exponent},
          {"intercept", fit.intercept},
          {"residual_rms", fit.residual_rms},
          {"points_used", fit.points_used},
          {"dropped_zero_points", fit.dropped_zero_points}};
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument(fmt::format("alpha must be finite and >= 0, got {}", alpha));
}

} // namespace

XiSeries xi_from_sums(const PartialSumSeries& series, double alpha) {
  check_alpha(alpha);
  XiSeries out;
  out.alpha = alpha;
  out.x = series.checkpoints;
  out.xi.reserve(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i)
    out.xi.push_back(series.sums[i] / std::pow(out.x[i], alpha));
  return out;
}

XiSeries xi_from_table(const ValueTable& table, std::span<const double> checkpoints, double alpha) {
  check_alpha(alpha);
  XiSeries out = xi_from_sums(partial_sums(table, checkpoints), alpha);
  auto prefix = std::make_shared<const PrefixSums>(prefix_sums(table));
  out.exact = [prefix, alpha](double y) -> Complex {
    if (y < 1.0)
      return {};
    return prefix->at(y) / std::pow(y, alpha);
  };
  return out;
}

std::string_view to_string(XiLookup mode) { return mode == XiLookup::Exact ? "exact" : "nearest"; }

Complex xi_value(const XiSeries& xi, double y, XiLookup mode) {
  if (y < 1.0)
    return {};
  if (mode == XiLookup::Exact) {
    if (!xi.exact)
      throw std::invalid_argument("exact xi lookup needs a series built from a table");
    return xi.exact(y);
  }
  if (xi.x.empty())
    throw std::out_of_range("xi series has no samples");
  const auto it = std::lower_bound(xi.x.begin(), xi.x.end(), y);
  std::size_t best;
  if (it == xi.x.end())
    best = xi.x.size() - 1;
  else if (it == xi.x.begin())
    best = 0;
  else {
    const std::size_t hi = std::size_t(it - xi.x.begin());
    best = (std::log(xi.x[hi] / y) < std::log(y / xi.x[hi - 1])) ? hi : hi - 1;
  }
  if (std::abs(std::log(y / xi.x[best])) > std::log(default_grid_ratio()) * (1 + 1e-12))
    throw std::out_of_range(
        fmt::format("no xi sample within one grid ratio of {} (nearest {})", y, xi.x[best]));
  return xi.xi[best];
}

Complex xi_tilde(const ValueTable& h, const XiSeries& xi, double x, XiLookup mode) {
  if (x < 1.0)
    return {};
  const auto M = static_cast<std::uint64_t>(std::floor(x));
  if (M > h.limit)
    throw std::out_of_range(fmt::format("xi_tilde at {} needs h up to {}, table stops at {}", x, M, h.limit));
  return block_sum(M, [&](std::uint64_t m) -> Complex {
    const Complex hm = h.values[m];
    if (hm == Complex{})
      return {};
    return hm * std::pow(double(m), -xi.alpha) * xi_value(xi, x / double(m), mode);
  });
}

XiSeries xi_tilde_series(const ValueTable& h, const XiSeries& xi, XiLookup mode) {
  XiSeries out;
  out.alpha = xi.alpha;
  out.x = xi.x;
  for (const double x : xi.x)
    out.xi.push_back(xi_tilde(h, xi, x, mode));
  if (xi.exact)
    out.exact = [&h, &xi](double y) { return xi_tilde(h, xi, y, XiLookup::Exact); };
  return out;
}

MeanSquare mean_square(const XiSeries& xi, double T) {
  if (!(T >= 1.0))
    throw std::invalid_argument("mean_square needs T >= 1");
  if (xi.x.empty() || xi.x.front() > 1.0 + 1e-12 || xi.x.back() < T)
    throw std::out_of_range(fmt::format("xi samples do not cover [1, {}]", T));
  // restrict to [1, T] with interpolated endpoints
  std::vector<double> t;
  std::vector<double> v;
  auto sq = [](Complex z) { return std::norm(z); };
  auto interp = [&](double at) {
    const auto it = std::lower_bound(xi.x.begin(), xi.x.end(), at);
    const std::size_t hi = std::size_t(it - xi.x.begin());
    if (xi.x[hi] == at || hi == 0)
      return sq(xi.xi[hi]);
    const double w = (at - xi.x[hi - 1]) / (xi.x[hi] - xi.x[hi - 1]);
    return (1 - w) * sq(xi.xi[hi - 1]) + w * sq(xi.xi[hi]);
  };
  t.push_back(1.0);
  v.push_back(interp(1.0));
  for (std::size_t i = 0; i < xi.x.size(); ++i)
    if (xi.x[i] > 1.0 && xi.x[i] < T) {
      t.push_back(xi.x[i]);
      v.push_back(sq(xi.xi[i]));
    }
  if (T > 1.0) {
    t.push_back(T);
    v.push_back(interp(T));
  }
  MeanSquare out;
  auto trap = [&](std::size_t stride) {
    KahanSum acc;
    std::size_t prev = 0;
    for (std::size_t i = stride; i < t.size(); i += stride) {
      acc.add(0.5 * (v[prev] + v[i]) * (t[i] - t[prev]));
      prev = i;
    }
    if (prev != t.size() - 1)
      acc.add(0.5 * (v[prev] + v.back()) * (t.back() - t[prev]));
    return acc.value();
  };
  out.value = trap(1);
  out.error_estimate = t.size() > 2 ? std::abs(out.value - trap(2)) / 3.0 : 0.0;
  for (std::size_t i = 1; i < t.size(); ++i)
    out.max_grid_ratio = std::max(out.max_grid_ratio, t[i] / t[i - 1]);
  return out;
}

LTruncation l_truncation(const ValueTable& table, Complex s, std::uint64_t N, double theta) {
  if (N > table.limit)
    throw std::out_of_range(fmt::format("L-series truncation at {} exceeds table limit {}", N, table.limit));
  LTruncation out;
  out.s = s;
  out.N = N;
  out.theta = theta;
  out.value = block_sum(N, [&](std::uint64_t n) {
    const Complex v = table.values[n];
    return v == Complex{} ? Complex{} : v * pow_neg(double(n), s);
  });
  for (std::uint64_t n = 1; n <= N; ++n)
    if (std::abs(table.values[n]) > std::pow(double(n), theta) * (1 + 1e-12)) {
      out.coefficient_bound_ok = false;
      break;
    }
  const double sigma = s.real();
  if (sigma > 1.0 + theta && N >= 1)
    out.tail_bound = std::pow(double(N), 1.0 + theta - sigma) / (sigma - 1.0 - theta);
  return out;
}

nlohmann::ordered_json to_json(const LTruncation& t) {
  return {{"s", {t.s.real(), t.s.imag()}},
          {"N", t.N},
          {"theta", t.theta},
          {"value", {t.value.real(), t.value.imag()}},
          {"tail_bound", std::isfinite(t.tail_bound) ? nlohmann::ordered_json(t.tail_bound)
                                                     : nlohmann::ordered_json("unknown")},
          {"coefficient_bound_ok", t.coefficient_bound_ok}};
}

QuotientIdentityReport quotient_identity_check(const ValueTable& f, const ValueTable& g,
                                               const ValueTable& h, Complex s, std::uint64_t N,
                                               double theta_f, double theta_g, double theta_h) {
  if (!(s.real() >= 2.0))
    throw std::invalid_argument("quotient identity check needs Re s >= 2");
  QuotientIdentityReport r;
  r.f = l_truncation(f, s, N, theta_f);
  r.g = l_truncation(g, s, N, theta_g);
  r.h = l_truncation(h, s, N, theta_h);
  r.residual = std::abs(r.g.value - r.f.value * r.h.value);
  const double Bf = r.f.tail_bound, Bg = r.g.tail_bound, Bh = r.h.tail_bound;
  r.bound = Bg + Bf * std::abs(r.h.value) + Bh * std::abs(r.f.value) + Bf * Bh;
  // rounding slack on top of the analytic bound
  r.bound += 1e-12 * (1 + std::abs(r.g.value) + std::abs(r.f.value * r.h.value));
  r.pass = r.residual <= r.bound && r.f.coefficient_bound_ok && r.g.coefficient_bound_ok &&
           r.h.coefficient_bound_ok;
  return r;
}

nlohmann::ordered_json to_json(const QuotientIdentityReport& r) {
  return {{"L_f", to_json(r.f)}, {"L_g", to_json(r.g)}, {"L_h", to_json(r.h)},
          {"residual", r.residual}, {"bound", r.bound}, {"pass", r.pass}};
}

} // namespace pretense
