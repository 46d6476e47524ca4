#include "pretense/dirichlet.hpp"

#include "pretense/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pretense {

ValueTable convolve_table(const ValueTable& f, const ValueTable& h, std::uint64_t N) {
  if (N < 1 || f.limit < N || h.limit < N)
    throw std::invalid_argument(fmt::format(
        "convolution to {} needs both tables to reach it (have {} and {})", N, f.limit, h.limit));
  ValueTable out;
  out.spec_name = fmt::format("({} * {})", f.spec_name, h.spec_name);
  out.limit = N;
  out.values.assign(N + 1, Complex{});

  // Each chunk owns an output range; within it every n accumulates its
  // divisor terms in ascending d, independent of the chunking.
  constexpr std::uint64_t kChunk = 1 << 14;
  parallel_for((N + kChunk - 1) / kChunk, [&](std::size_t c) {
    const std::uint64_t a = 1 + c * kChunk;
    const std::uint64_t b = std::min(N, a + kChunk - 1);
    for (std::uint64_t d = 1; d <= b; ++d) {
      const Complex fd = f.values[d];
      for (std::uint64_t m = (a + d - 1) / d; m <= b / d; ++m)
        out.values[d * m] += fd * h.values[m];
    }
  });
  return out;
}

LocalSeries solve_local_quotient(const LocalSeries& f, const LocalSeries& g) {
  if (f.coeffs.size() != g.coeffs.size() || f.coeffs.empty())
    throw std::invalid_argument("local quotient needs series of equal, nonzero length");
  if (f.coeffs[0] != Complex{1.0})
    throw std::invalid_argument("local quotient needs f(p^0) = 1");
  const std::size_t K = f.coeffs.size() - 1;
  LocalSeries h{f.p, std::vector<Complex>(K + 1)};
  h.coeffs[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    Complex acc = g.coeffs[k];
    for (std::size_t j = 0; j < k; ++j)
      acc -= f.coeffs[k - j] * h.coeffs[j];
    h.coeffs[k] = acc;
  }
  return h;
}

FunctionSpec quotient_spec(const FunctionSpec& f, const FunctionSpec& g) {
  FunctionSpec h;
  h.name = fmt::format("quot({} / {})", g.name, f.name);
  h.kind = SpecKind::GeneralMultiplicative;
  h.local = [f, g](Prime p, std::span<Complex> out) {
    const unsigned K = static_cast<unsigned>(out.size() - 1);
    const LocalSeries s = solve_local_quotient(f.local_series(p, K), g.local_series(p, K));
    std::copy(s.coeffs.begin(), s.coeffs.end(), out.begin());
  };
  h.rule = [local = h.local](Prime p, unsigned k) {
    std::vector<Complex> buf(k + 1);
    local(p, buf);
    return buf[k];
  };
  if (!f.descriptor.is_null() && !g.descriptor.is_null())
    h.descriptor = {{"name", "quotient"}, {"f", f.descriptor}, {"g", g.descriptor}};
  return h;
}

namespace {

QuotientSpec solve_with(const FunctionSpec& f, const FunctionSpec& g, std::vector<Prime> primes,
                        const std::function<unsigned(Prime)>& exponent) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  QuotientSpec q;
  q.h = quotient_spec(f, g);
  q.f_name = f.name;
  q.g_name = g.name;
  q.local.resize(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    const Prime p = primes[i];
    const unsigned K = exponent(p);
    q.local[i] = solve_local_quotient(f.local_series(p, K), g.local_series(p, K));
  });
  for (const auto& s : q.local)
    q.max_exponent = std::max(q.max_exponent, static_cast<unsigned>(s.coeffs.size() - 1));
  return q;
}

unsigned max_power_below(Prime p, std::uint64_t N) {
  unsigned K = 0;
  for (std::uint64_t q = p; q <= N; q *= p) {
    ++K;
    if (q > N / p)
      break;
  }
  return K;
}

} // namespace

QuotientSpec solve_quotient(const FunctionSpec& f, const FunctionSpec& g,
                            std::span<const Prime> primes, unsigned K) {
  return solve_with(f, g, {primes.begin(), primes.end()}, [K](Prime) { return K; });
}

QuotientSpec solve_quotient_dense(const FunctionSpec& f, const FunctionSpec& g,
                                  const SieveIndex& sieve, std::uint64_t N) {
  if (N > sieve.limit)
    throw std::out_of_range(fmt::format("quotient to {} needs a sieve to {}", N, N));
  return solve_with(f, g, sieve.primes_up_to(static_cast<double>(N)),
                    [N](Prime p) { return max_power_below(p, N); });
}

LocalSeries invert_local(const LocalSeries& s) {
  if (s.coeffs.empty() || s.coeffs[0] != Complex{1.0})
    throw std::invalid_argument(
        fmt::format("Dirichlet inverse needs h(1) = 1 (local series at p = {})", s.p));
  LocalSeries u{s.p, std::vector<Complex>(s.coeffs.size())};
  u.coeffs[0] = 1.0;
  for (std::size_t k = 1; k < s.coeffs.size(); ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      acc -= s.coeffs[j] * u.coeffs[k - j];
    u.coeffs[k] = acc;
  }
  return u;
}

FunctionSpec dirichlet_inverse(const FunctionSpec& h) {
  FunctionSpec u;
  u.name = fmt::format("inv({})", h.name);
  u.kind = h.kind == SpecKind::CompletelyMultiplicative ? SpecKind::GeneralMultiplicative : h.kind;
  u.local = [h](Prime p, std::span<Complex> out) {
    const LocalSeries s = invert_local(h.local_series(p, static_cast<unsigned>(out.size() - 1)));
    std::copy(s.coeffs.begin(), s.coeffs.end(), out.begin());
  };
  u.rule = [local = u.local](Prime p, unsigned k) {
    std::vector<Complex> buf(k + 1);
    local(p, buf);
    return buf[k];
  };
  if (!h.descriptor.is_null())
    u.descriptor = {{"name", "inverse"}, {"base", h.descriptor}};
  return u;
}

std::vector<LocalSeries> dirichlet_inverse_local(const FunctionSpec& h,
                                                 std::span<const Prime> primes, unsigned K) {
  std::vector<LocalSeries> out(primes.size());
  parallel_for(primes.size(),
               [&](std::size_t i) { out[i] = invert_local(h.local_series(primes[i], K)); });
  return out;
}

ValueTable dirichlet_inverse_table(const ValueTable& h) {
  if (h.limit < 1 || h.values[1] != Complex{1.0})
    throw std::invalid_argument("Dirichlet inverse of a table needs h(1) = 1");
  const std::uint64_t N = h.limit;
  ValueTable u;
  u.spec_name = fmt::format("inv({})", h.spec_name);
  u.limit = N;
  u.values.assign(N + 1, Complex{});
  // acc[m] collects h(d) u(m/d) over d >= 2 as each u(n) is finalized.
  std::vector<Complex> acc(N + 1);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const Complex un = n == 1 ? Complex{1.0} : -acc[n];
    u.values[n] = un;
    if (un == Complex{})
      continue;
    for (std::uint64_t d = 2; d <= N / n; ++d)
      acc[n * d] += h.values[d] * un;
  }
  return u;
}

std::vector<Complex> determinant_sequence(const FunctionSpec& f, Prime p, unsigned k,
                                          unsigned max_order) {
  if (k > max_order)
    throw LimitError(fmt::format("determinant order {} exceeds the bound {}", k, max_order));
  const LocalSeries s = f.local_series(p, k);
  std::vector<Complex> D(k + 1);
  D[0] = 1.0;
  for (unsigned m = 1; m <= k; ++m) {
    Complex acc = 0.0;
    for (unsigned i = 1; i <= m; ++i) {
      const Complex term = s.coeffs[i] * D[m - i];
      acc += (i % 2 == 1) ? term : -term;
    }
    D[m] = acc;
  }
  return D;
}

Complex determinant_Df(const FunctionSpec& f, Prime p, unsigned k, unsigned max_order) {
  return determinant_sequence(f, p, k, max_order)[k];
}

std::vector<Complex> determinant_matrix(const FunctionSpec& f, Prime p, unsigned k) {
  const LocalSeries s = f.local_series(p, k);
  std::vector<Complex> a(static_cast<std::size_t>(k) * k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      const int e = static_cast<int>(i) - static_cast<int>(j) + 1;
      a[i * k + j] = e >= 0 ? s.coeffs[static_cast<unsigned>(e)] : Complex{};
    }
  return a;
}

Complex dense_determinant(std::vector<Complex> a, std::size_t n) {
  if (a.size() != n * n)
    throw std::invalid_argument("dense_determinant: matrix size mismatch");
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c]))
        piv = r;
    if (a[piv * n + c] == Complex{})
      return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    const Complex d = a[c * n + c];
    det *= d;
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex factor = a[r * n + c] / d;
      if (factor == Complex{})
        continue;
      for (std::size_t j = c; j < n; ++j)
        a[r * n + j] -= factor * a[c * n + j];
    }
  }
  return det;
}

Complex h_via_determinant(const FunctionSpec& f, const FunctionSpec& g, Prime p, unsigned n) {
  if (n < 1)
    throw std::invalid_argument("h_via_determinant needs n >= 1");
  const auto D = determinant_sequence(f, p, n - 1);
  const LocalSeries fl = f.local_series(p, n);
  const LocalSeries gl = g.local_series(p, n);
  Complex acc = 0.0;
  for (unsigned k = 0; k < n; ++k) {
    const Complex term = (gl.coeffs[n - k] - fl.coeffs[n - k]) * D[k];
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

DeterminantBoundReport determinant_bound_check(const FunctionSpec& f, Prime p, unsigned k_max,
                                               double delta) {
  DeterminantBoundReport rep;
  rep.p = p;
  rep.delta = delta;
  const LocalSeries s = f.local_series(p, k_max);
  const double pd = std::pow(static_cast<double>(p), delta);
  for (unsigned k = 1; k <= k_max; ++k)
    if (std::abs(s.coeffs[k]) > std::pow(pd, k) * (1.0 + 1e-12))
      rep.hypothesis_violations.push_back(k);

  const auto D = determinant_sequence(f, p, k_max);
  bool ok = rep.hypothesis_violations.empty();
  for (unsigned n = 1; n <= k_max; ++n) {
    DeterminantBoundRow row;
    row.n = n;
    row.abs_det = std::abs(D[n]);
    row.bound = std::ldexp(std::pow(pd, n), static_cast<int>(n) - 1);
    row.pass = row.abs_det <= row.bound * (1.0 + 1e-12);
    ok = ok && row.pass;
    rep.rows.push_back(row);
  }
  rep.all_pass = ok;
  return rep;
}

nlohmann::ordered_json to_json(const QuotientSpec& q) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : q.local) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const Complex c : s.coeffs)
      coeffs.push_back({c.real(), c.imag()});
    arr.push_back({{"prime", s.p}, {"coeffs", std::move(coeffs)}});
  }
  return arr;
}

} // namespace pretense
