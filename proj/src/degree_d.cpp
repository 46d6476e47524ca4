#include "pretense/degree_d.hpp"

#include "pretense/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pretense {

std::vector<Complex> q_sequence(unsigned K, std::span<const Complex> x) {
  std::vector<Complex> q(K + 1, Complex{});
  q[0] = 1.0;
  for (const Complex xm : x)
    for (unsigned j = 1; j <= K; ++j)
      q[j] += xm * q[j - 1];
  return q;
}

Complex q_poly(unsigned k, std::span<const Complex> x) { return q_sequence(k, x)[k]; }

Complex r_poly(unsigned k, std::span<const Complex> x) {
  const std::size_t d = x.size();
  if (k > d)
    return 0.0;
  std::vector<Complex> e(d + 1, Complex{});
  e[0] = 1.0;
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t j = m + 1; j >= 1; --j)
      e[j] += x[m] * e[j - 1];
  return e[k];
}

std::vector<Complex> q_to_r(std::span<const Complex> q) {
  const std::size_t d = q.size();
  // r[0] = 1 plus r_1..r_d
  std::vector<Complex> r(d + 1);
  r[0] = 1.0;
  for (std::size_t k = 1; k <= d; ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const Complex term = r[k - j] * q[j - 1];
      acc += (j % 2 == 1) ? term : -term;
    }
    r[k] = acc;
  }
  return {r.begin() + 1, r.end()};
}

DegreeDSpec make_degree_d(std::vector<FunctionSpec> constituents, std::string name) {
  const std::size_t d = constituents.size();
  if (d < 1 || d > kMaxDegree)
    throw std::invalid_argument(fmt::format("degree must lie in [1, {}], got {}", kMaxDegree, d));
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  std::string joined;
  for (const auto& c : constituents) {
    if (c.kind != SpecKind::CompletelyMultiplicative || !c.bounded_by_one)
      throw std::invalid_argument(fmt::format(
          "constituent '{}' must be completely multiplicative and bounded by 1", c.name));
    parts.push_back(c.descriptor);
    joined += joined.empty() ? c.name : " * " + c.name;
  }

  DegreeDSpec out;
  out.d = static_cast<unsigned>(d);
  out.constituents = std::move(constituents);
  FunctionSpec& s = out.spec;
  s.name = name.empty() ? fmt::format("({})", joined) : std::move(name);
  s.kind = d == 1 ? SpecKind::CompletelyMultiplicative : SpecKind::DegreeDComposite;
  s.bounded_by_one = d == 1;
  s.degree = out.d;
  // Each constituent is queried once per prime; all powers come from one
  // q-recursion.
  s.local = [cs = out.constituents](Prime p, std::span<Complex> dst) {
    std::vector<Complex> x;
    x.reserve(cs.size());
    for (const auto& c : cs)
      x.push_back(c.at(p, 1));
    const auto q = q_sequence(static_cast<unsigned>(dst.size() - 1), x);
    std::copy(q.begin(), q.end(), dst.begin());
  };
  s.rule = [local = s.local](Prime p, unsigned k) {
    std::vector<Complex> buf(k + 1);
    local(p, buf);
    return buf[k];
  };
  if (std::none_of(parts.begin(), parts.end(), [](const auto& j) { return j.is_null(); }))
    s.descriptor = {{"name", "degree-d"}, {"constituents", parts}};
  return out;
}

SymmetricCoeffs alpha_coeffs(const FunctionSpec& f, Prime p) {
  if (!f.degree)
    throw std::invalid_argument(fmt::format("spec '{}' has no declared degree", f.name));
  const unsigned d = *f.degree;
  const LocalSeries s = f.local_series(p, d);
  SymmetricCoeffs c;
  c.p = p;
  c.q.assign(s.coeffs.begin() + 1, s.coeffs.end());
  c.r = q_to_r(c.q);
  c.alpha.push_back(1.0);
  c.alpha.insert(c.alpha.end(), c.r.begin(), c.r.end());
  return c;
}

double recursion_residual(const FunctionSpec& f, Prime p, unsigned n) {
  const SymmetricCoeffs c = alpha_coeffs(f, p);
  const unsigned d = *f.degree;
  const LocalSeries s = f.local_series(p, n + d);
  Complex acc = 0.0;
  for (unsigned k = 0; k <= d; ++k) {
    const Complex term = c.alpha[k] * s.coeffs[n + d - k];
    acc += (k % 2 == 0) ? term : -term;
  }
  return std::abs(acc);
}

ExtensionReport degreedist_extension_check(const DegreeDSpec& f, const DegreeDSpec& g, double beta,
                                           const SieveIndex& sieve, double P, Prime p0) {
  if (f.d != g.d)
    throw std::invalid_argument("extension check needs functions of the same degree");
  if (!(beta > 0.0))
    throw std::invalid_argument("extension check needs beta > 0");
  if (P > static_cast<double>(sieve.limit))
    throw std::out_of_range("extension check cutoff exceeds the sieve");
  const unsigned d = f.d;
  const auto primes = sieve.primes_up_to(P);

  ExtensionReport rep;
  rep.beta = beta;
  rep.p0 = p0;
  rep.rows.resize(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    const Prime p = primes[i];
    const double lp = std::log(static_cast<double>(p));
    // terms decay like n^{d-1} p^{-n beta}; stop once p^{-n beta} < 2^-90
    const unsigned K = std::min<unsigned>(
        600, d + 4 * d + static_cast<unsigned>(std::ceil(90.0 * std::log(2.0) / (beta * lp))));
    const LocalSeries fl = f.spec.local_series(p, K);
    const LocalSeries gl = g.spec.local_series(p, K);
    ExtensionRow row;
    row.p = p;
    for (unsigned n = 1; n <= K; ++n) {
      const double t = std::abs(fl.coeffs[n] - gl.coeffs[n]) * std::exp(-beta * lp * n);
      (n <= d ? row.head : row.tail) += t;
    }
    if (row.head == 0.0) {
      row.skipped = row.tail <= 1e-12;
      row.violation = !row.skipped;
    } else {
      row.ratio = row.tail / row.head;
    }
    rep.rows[i] = row;
  });
  for (const auto& row : rep.rows) {
    rep.violations += row.violation ? 1 : 0;
    if (!row.skipped && !row.violation && row.p >= p0)
      rep.sup_ratio = std::max(rep.sup_ratio, row.ratio);
  }
  return rep;
}

std::vector<GrowthDeltaReport> growth_delta_check(const ValueTable& table,
                                                  std::span<const double> deltas) {
  const auto cps = geometric_checkpoints(1.0, default_grid_ratio(), static_cast<double>(table.limit));
  std::vector<GrowthDeltaReport> out;
  for (const double delta : deltas) {
    GrowthDeltaReport r;
    r.delta = delta;
    double best = -1.0;
    std::uint64_t n = 1;
    for (const double c : cps) {
      double wmax = 0.0;
      for (; static_cast<double>(n) <= c; ++n) {
        const double v = std::abs(table.values[n]) / std::pow(static_cast<double>(n), delta);
        wmax = std::max(wmax, v);
        if (v > best) {
          best = v;
          r.argmax = n;
        }
      }
      r.checkpoints.push_back(c);
      r.window_max.push_back(wmax);
      r.running_max.push_back(best);
    }
    // last window where the window maximum still rose
    std::size_t last_rise = 0;
    for (std::size_t i = 1; i < r.window_max.size(); ++i)
      if (r.window_max[i] > r.window_max[i - 1])
        last_rise = i;
    if (last_rise + 1 < r.checkpoints.size())
      r.n0 = r.checkpoints[last_rise];
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::ordered_json to_json(const SymmetricCoeffs& c) {
  auto arr = [](const std::vector<Complex>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const Complex z : v)
      a.push_back({z.real(), z.imag()});
    return a;
  };
  return {{"p", c.p}, {"q", arr(c.q)}, {"r", arr(c.r)}, {"alpha", arr(c.alpha)}};
}

} // namespace pretense
