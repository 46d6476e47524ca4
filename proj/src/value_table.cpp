#include "pretense/value_table.hpp"

#include "pretense/parallel.hpp"
#include "pretense/summation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <new>
#include <stdexcept>

namespace pretense {

ValueTable make_table(std::string name, std::vector<Complex> values) {
  if (values.size() < 2)
    throw std::invalid_argument("a value table needs at least the entry n = 1");
  ValueTable t;
  t.spec_name = std::move(name);
  t.limit = values.size() - 1;
  t.values = std::move(values);
  t.values[0] = 0.0;
  return t;
}

ValueTable evaluate(const FunctionSpec& spec, const SieveIndex& sieve, std::uint64_t N) {
  if (N < 1)
    throw std::invalid_argument("evaluate needs N >= 1");
  if (N > sieve.limit)
    throw std::out_of_range(fmt::format("evaluate to {} needs a sieve to at least {}, have {}", N, N,
                                        sieve.limit));

  ValueTable table;
  table.spec_name = spec.name;
  table.limit = N;
  try {
    table.values.assign(N + 1, Complex{0.0, 0.0});
  } catch (const std::bad_alloc&) {
    throw ResourceError(fmt::format("cannot allocate a value table to {}: {} bytes required", N,
                                    (N + 1) * sizeof(Complex)));
  }
  auto& v = table.values;
  v[1] = 1.0;

  // Prime powers first; each prime writes only its own powers.
  const auto end = std::upper_bound(sieve.primes.begin(), sieve.primes.end(), N);
  const std::size_t nprimes = static_cast<std::size_t>(end - sieve.primes.begin());
  constexpr std::size_t kPrimesPerChunk = 2048;
  parallel_for((nprimes + kPrimesPerChunk - 1) / kPrimesPerChunk, [&](std::size_t chunk) {
    const std::size_t lo = chunk * kPrimesPerChunk;
    const std::size_t hi = std::min(nprimes, lo + kPrimesPerChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const Prime p = sieve.primes[i];
      unsigned K = 0;
      for (std::uint64_t q = p; q <= N; q *= p) {
        ++K;
        if (q > N / p)
          break;
      }
      const LocalSeries s = spec.local_series(p, K);
      std::uint64_t q = 1;
      for (unsigned k = 1; k <= K; ++k) {
        q *= p;
        v[q] = s.coeffs[k];
      }
    }
  });

  // Composites n = p^e * m with gcd(p, m) = 1; both parts are <= n/2, so every
  // dyadic range [2^j, 2^{j+1}) depends only on earlier ranges.
  constexpr std::uint64_t kChunk = 1 << 15;
  for (std::uint64_t lo = 4; lo <= N; lo *= 2) {
    const std::uint64_t hi = std::min(N, 2 * lo - 1);
    const std::uint64_t span = hi - lo + 1;
    parallel_for((span + kChunk - 1) / kChunk, [&](std::size_t chunk) {
      const std::uint64_t a = lo + chunk * kChunk;
      const std::uint64_t b = std::min(hi, a + kChunk - 1);
      for (std::uint64_t n = a; n <= b; ++n) {
        const std::uint32_t p = sieve.spf[n];
        if (p == n)
          continue;
        std::uint64_t m = n / p;
        std::uint64_t pe = p;
        while (m % p == 0) {
          m /= p;
          pe *= p;
        }
        if (m > 1)
          v[n] = v[pe] * v[m];
      }
    });
  }
  return table;
}

std::string_view to_string(SummationMode mode) {
  return mode == SummationMode::CompensatedSequential ? "compensated-sequential"
                                                      : "block-parallel-deterministic";
}

namespace {

template <class Acc>
auto peek(const Acc& combined, const Acc& partial) {
  Acc t = combined;
  t.add(partial.value());
  return t.value();
}

// Values of sum_{n <= cut} term(n) at each (ascending) integer cut, following
// the block contract: Kahan inside blocks of kReductionBlock terms, block
// totals Kahan-combined in ascending order, and a cut inside block b reads
// combined(0..b-1) + partial(b).
template <class Acc, class Term>
auto block_reduce(const std::vector<std::uint64_t>& cuts, Term term, SummationMode mode) {
  using T = decltype(Acc{}.value());
  std::vector<T> out(cuts.size());
  if (cuts.empty())
    return out;
  const std::uint64_t B = kReductionBlock;
  const std::uint64_t last = cuts.back();

  if (mode == SummationMode::CompensatedSequential) {
    Acc combined;
    Acc block;
    std::size_t ci = 0;
    while (ci < cuts.size() && cuts[ci] == 0)
      out[ci++] = T{};
    for (std::uint64_t n = 1; n <= last; ++n) {
      block.add(term(n));
      while (ci < cuts.size() && cuts[ci] == n)
        out[ci++] = peek(combined, block);
      if (n % B == 0) {
        combined.add(block.value());
        block = Acc{};
      }
    }
    return out;
  }

  const std::uint64_t nblocks = last / B; // complete blocks that may be needed
  std::vector<T> totals(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    Acc acc;
    const std::uint64_t start = b * B + 1;
    for (std::uint64_t n = start; n < start + B; ++n)
      acc.add(term(n));
    totals[b] = acc.value();
  });

  Acc combined;
  std::uint64_t folded = 0; // blocks folded into `combined`
  for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
    const std::uint64_t m = cuts[ci];
    if (m == 0) {
      out[ci] = T{};
      continue;
    }
    const std::uint64_t b = (m - 1) / B;
    while (folded < b)
      combined.add(totals[folded++]);
    Acc partial;
    for (std::uint64_t n = b * B + 1; n <= m; ++n)
      partial.add(term(n));
    out[ci] = peek(combined, partial);
  }
  return out;
}

std::vector<std::uint64_t> integer_cuts(std::span<const double> checkpoints, std::uint64_t limit) {
  std::vector<std::uint64_t> cuts;
  cuts.reserve(checkpoints.size());
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const double x = checkpoints[i];
    if (!std::isfinite(x))
      throw std::invalid_argument("checkpoints must be finite");
    if (i > 0 && !(x > checkpoints[i - 1]))
      throw std::invalid_argument(
          fmt::format("checkpoints must be strictly increasing (position {})", i));
    if (x >= static_cast<double>(limit) + 1.0)
      throw std::out_of_range(fmt::format("checkpoint {} exceeds the table limit {}", x, limit));
    cuts.push_back(x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x)));
  }
  return cuts;
}

} // namespace

PartialSumSeries partial_sums(const ValueTable& table, std::span<const double> checkpoints,
                              SummationMode mode) {
  const auto cuts = integer_cuts(checkpoints, table.limit);
  PartialSumSeries s;
  s.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  s.mode = mode;
  s.sums = block_reduce<KahanComplex>(
      cuts, [&](std::uint64_t n) { return table.values[n]; }, mode);
  return s;
}

double mean_square_sum(const ValueTable& table, double x) {
  const double xs[] = {x};
  const auto cuts = integer_cuts(xs, table.limit);
  return block_reduce<KahanSum>(
      cuts, [&](std::uint64_t n) { return std::norm(table.values[n]); },
      SummationMode::BlockParallelDeterministic)[0];
}

Complex PrefixSums::at(double x) const {
  if (x < 1.0)
    return 0.0;
  const double f = std::floor(x);
  if (f > static_cast<double>(limit()))
    throw std::out_of_range(fmt::format("prefix sum requested at {} beyond {}", x, limit()));
  return sums[static_cast<std::size_t>(f)];
}

PrefixSums prefix_sums(const ValueTable& table) {
  const std::uint64_t N = table.limit;
  const std::uint64_t B = kReductionBlock;
  PrefixSums out;
  out.sums.assign(N + 1, Complex{});
  const std::uint64_t nblocks = (N + B - 1) / B;

  std::vector<Complex> totals(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    KahanComplex acc;
    const std::uint64_t start = b * B + 1;
    const std::uint64_t stop = std::min(N, start + B - 1);
    for (std::uint64_t n = start; n <= stop; ++n)
      acc.add(table.values[n]);
    totals[b] = acc.value();
  });
  std::vector<KahanComplex> before(nblocks);
  for (std::uint64_t b = 1; b < nblocks; ++b) {
    before[b] = before[b - 1];
    before[b].add(totals[b - 1]);
  }
  parallel_for(nblocks, [&](std::size_t b) {
    KahanComplex partial;
    const std::uint64_t start = b * B + 1;
    const std::uint64_t stop = std::min(N, start + B - 1);
    for (std::uint64_t n = start; n <= stop; ++n) {
      partial.add(table.values[n]);
      out.sums[n] = peek(before[b], partial);
    }
  });
  return out;
}

double default_grid_ratio() { return std::pow(10.0, 0.125); }

std::vector<double> geometric_checkpoints(double x0, double ratio, double x_max) {
  if (!(x0 >= 1.0) || !(ratio > 1.0))
    throw std::invalid_argument("geometric grid needs x0 >= 1 and ratio > 1");
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double raw = x0 * std::pow(ratio, j);
    // guard against pow landing a hair below an exact integer
    const double x = std::floor(raw * (1.0 + 1e-12));
    if (x > x_max)
      break;
    if (out.empty() || x > out.back())
      out.push_back(x);
  }
  return out;
}

} // namespace pretense
