#include "pretense/verify.hpp"

#include "pretense/asymptotics.hpp"
#include "pretense/constructions.hpp"
#include "pretense/degree_d.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/io.hpp"
#include "pretense/metrics.hpp"
#include "pretense/random_specs.hpp"
#include "pretense/sieve.hpp"
#include "pretense/value_table.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

namespace pretense {

bool BundleResult::passed() const {
  return std::none_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.status == CheckStatus::Fail; });
}

namespace {

std::string_view status_text(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass:
    return "PASS";
  case CheckStatus::Fail:
    return "FAIL";
  case CheckStatus::Info:
    return "info";
  }
  return "?";
}

} // namespace

std::string BundleResult::render() const {
  std::size_t wc = 5, wv = 5, wt = 9;
  for (const auto& r : rows) {
    wc = std::max(wc, r.check.size());
    wv = std::max(wv, r.value.size());
    wt = std::max(wt, r.threshold.size());
  }
  std::string out = fmt::format("bundle {}  N={}  seed={}\n", bundle, N, seed);
  out += fmt::format("{:<{}}  {:<{}}  {:<{}}  {}\n", "check", wc, "value", wv, "threshold", wt, "status");
  for (const auto& r : rows)
    out += fmt::format("{:<{}}  {:<{}}  {:<{}}  {}\n", r.check, wc, r.value, wv, r.threshold, wt,
                       status_text(r.status));
  out += fmt::format("result: {}\n", passed() ? "PASS" : "FAIL");
  return out;
}

nlohmann::ordered_json BundleResult::to_json() const {
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    rs.push_back({{"check", r.check}, {"value", r.value}, {"threshold", r.threshold},
                  {"status", status_text(r.status)}});
  return {{"bundle", bundle}, {"N", N}, {"seed", seed}, {"rows", rs}, {"passed", passed()}};
}

namespace {

class Bundle {
public:
  Bundle(std::string name, const VerifyOptions& o) {
    r_.bundle = std::move(name);
    r_.N = o.N;
    r_.seed = o.seed;
  }
  void info(std::string check, double v) { r_.rows.push_back({std::move(check), format_double(v), "", CheckStatus::Info}); }
  void info(std::string check, std::string v) { r_.rows.push_back({std::move(check), std::move(v), "", CheckStatus::Info}); }
  void at_most(std::string check, double v, double limit) {
    r_.rows.push_back({std::move(check), format_double(v), "<= " + format_double(limit),
                       v <= limit ? CheckStatus::Pass : CheckStatus::Fail});
  }
  void at_least(std::string check, double v, double limit) {
    r_.rows.push_back({std::move(check), format_double(v), ">= " + format_double(limit),
                       v >= limit ? CheckStatus::Pass : CheckStatus::Fail});
  }
  void within(std::string check, double v, double lo, double hi) {
    r_.rows.push_back({std::move(check), format_double(v),
                       fmt::format("in [{}, {}]", format_double(lo), format_double(hi)),
                       v >= lo && v <= hi ? CheckStatus::Pass : CheckStatus::Fail});
  }
  /// Passes when `v` starts with `want` (verdicts may carry a reason).
  void expect(std::string check, std::string v, std::string want) {
    const bool ok = v.rfind(want, 0) == 0;
    r_.rows.push_back({std::move(check), std::move(v), "== " + want, ok ? CheckStatus::Pass : CheckStatus::Fail});
  }
  BundleResult take() { return std::move(r_); }

private:
  BundleResult r_;
};

std::vector<double> grid(double lo, double hi) { return geometric_checkpoints(lo, default_grid_ratio(), hi); }

std::uint64_t need(const VerifyOptions& o, std::uint64_t at_least) {
  if (o.N < at_least)
    throw std::invalid_argument(fmt::format("this bundle needs N >= {}", at_least));
  return o.N;
}

BundleResult thm1(const VerifyOptions& o) {
  Bundle b("thm1", o);
  const std::uint64_t N = need(o, 100'000);
  const double beta = 0.5;
  const auto f = dirichlet_character(4, 1);
  const auto g = optimality_twist(f, beta);
  b.info("sign rule", g.descriptor.at("rule").get<std::string>());
  const auto sieve = build_sieve(N);
  const auto cps = grid(1e3, double(N));
  const auto ff = growth_fit(partial_sums(evaluate(f, sieve, N), cps));
  const auto fg = growth_fit(partial_sums(evaluate(g, sieve, N), cps));
  b.info("alpha_hat(f) over [1e3, N]", ff.exponent);
  b.at_most("alpha_hat(g) over [1e3, N]", fg.exponent, std::max(ff.exponent, (1 + beta) / 2) + 0.1);
  const auto dist = distance_beta(f, g, beta, sieve, cps);
  b.info("D_beta(f,g)^2 at N", dist.total());
  b.info("D_beta(f,g)^2 tail slope", dist.tail_slope);
  const double sigma = 0.8;
  const auto H = H_series(quotient_spec(f, g), 2 * sigma - 1);
  b.expect("H(2 sigma - 1) at sigma = 0.8", H.verdict, "convergent");
  return b.take();
}

BundleResult thm2(const VerifyOptions& o) {
  Bundle b("thm2", o);
  const std::uint64_t N = std::min<std::uint64_t>(need(o, 10'000), 100'000);
  const auto f = one();
  const auto g = random_sparse_modification(f, o.seed);
  const auto sieve = build_sieve(N);
  const auto hq = solve_quotient_dense(f, g, sieve, N);
  const auto ft = evaluate(f, sieve, N);
  const auto gt = evaluate(g, sieve, N);
  const auto ht = evaluate(hq.h, sieve, N);
  const double alpha = 1.0;
  const auto cps = grid(1, double(N));
  const auto xi = xi_from_table(ft, cps, alpha);
  const auto xig = xi_from_table(gt, cps, alpha);
  const auto xit = xi_tilde_series(ht, xi, XiLookup::Exact);
  double worst = 0.0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const double denom = std::max(std::abs(xig.xi[i]), 1e-300);
    worst = std::max(worst, std::abs(xit.xi[i] - xig.xi[i]) / denom);
  }
  b.at_most("xi_tilde vs S_g/x^alpha (rel)", worst, 1e-8);

  const std::uint64_t Nr = std::min<std::uint64_t>(N, 10'000);
  const auto hinv = dirichlet_inverse_table(ht);
  double round = 0.0;
  for (const double x : cps) {
    if (x > double(Nr))
      break;
    const Complex back = xi_tilde(hinv, xit, x, XiLookup::Exact);
    const Complex want = xi_value(xi, x, XiLookup::Exact);
    round = std::max(round, std::abs(back - want) / std::max(std::abs(want), 1e-300));
  }
  b.at_most("inversion roundtrip, x <= 1e4 (rel)", round, 1e-8);

  const double T = double(N);
  const auto ms_f = mean_square(xi, T);
  const auto ms_g = mean_square(xit, T);
  b.info("mean square of xi on [1, N]", ms_f.value);
  b.info("mean square of xi_tilde on [1, N]", ms_g.value);
  b.at_least("mean-square ratio xi_tilde / xi", ms_g.value / ms_f.value, 1e-3);
  const auto H = H_series(hq.h, 2 * 0.9 - 1);
  b.expect("H(2 sigma - 1) at sigma = 0.9", H.verdict, "convergent");
  return b.take();
}

BundleResult thm3(const VerifyOptions& o) {
  Bundle b("thm3", o);
  const std::uint64_t N = need(o, 100'000);
  const double beta = 0.5;
  const unsigned k = 3;
  const auto f = dirichlet_character(4, 1);
  // g differs from f only at p^j, p <= 7, j <= k
  FunctionSpec g;
  g.name = "thm3-g";
  g.kind = SpecKind::GeneralMultiplicative;
  g.bounded_by_one = true;
  const std::uint64_t seed = o.seed;
  g.rule = [f, seed, k](Prime p, unsigned j) {
    if (p <= 7 && j <= k)
      return std::polar(1.0, 2 * std::numbers::pi * hash_uniform(seed, p, j));
    return f.at(p, j);
  };
  const auto sieve = build_sieve(N);
  const auto cps = grid(1e3, double(N));
  const auto ff = growth_fit(partial_sums(evaluate(f, sieve, N), cps));
  const auto fg = growth_fit(partial_sums(evaluate(g, sieve, N), cps));
  const auto strong = distance_strong(f, g, beta, k, sieve, cps);
  b.info("strong distance at N", strong.total());
  b.at_most("strong distance tail slope", strong.tail_slope, kPlateauSlope);
  const double sigma = std::max(ff.exponent, beta);
  b.info("alpha_hat(f) over [1e3, N]", ff.exponent);
  b.info("sigma = max(alpha_hat(f), beta)", sigma);
  const auto Hhat = Hhat_series(quotient_spec(f, g), sigma, 100.0);
  b.expect("Hhat_Y(sigma), Y = 100", Hhat.verdict, "convergent");
  b.at_most("alpha_hat(g) over [1e3, N]", fg.exponent, sigma + 0.1);
  return b.take();
}

BundleResult thm4(const VerifyOptions& o) {
  Bundle b("thm4", o);
  const std::uint64_t N = need(o, 100'000);
  const double beta = 0.5;
  const auto chi4 = dirichlet_character(4, 1);
  const auto chi3 = dirichlet_character(3, 1);
  const auto f = make_degree_d({chi4, chi3}, "f");
  const auto g = make_degree_d(
      {random_sparse_modification(chi4, o.seed), random_sparse_modification(chi3, o.seed + 1)}, "g");
  const auto sieve = build_sieve(N);
  const auto cps = grid(1e3, double(N));
  const auto ff = growth_fit(partial_sums(evaluate(f.spec, sieve, N), cps));
  const auto fg = growth_fit(partial_sums(evaluate(g.spec, sieve, N), cps));
  b.info("alpha_hat(f) over [1e3, N]", ff.exponent);
  b.at_most("alpha_hat(g) over [1e3, N]", fg.exponent, std::max(ff.exponent, beta) + 0.1);

  const auto dist = distance_strong(f.spec, g.spec, beta, 2, sieve, cps);
  b.info("strong distance (beta, d) at N", dist.total());

  double det_max = 0.0, rec_max = 0.0;
  for (const auto p : sieve.primes_up_to(97)) {
    const auto D = determinant_sequence(g.spec, p, 6);
    for (unsigned kk = 3; kk <= 6; ++kk)
      det_max = std::max(det_max, std::abs(D[kk]));
    for (unsigned n = 0; n <= 6; ++n)
      rec_max = std::max(rec_max, recursion_residual(g.spec, p, n));
  }
  b.at_most("max |D_g(k,p)|, k in [3,6], p <= 97", det_max, 1e-9);
  b.at_most("max recursion residual, p <= 97", rec_max, 1e-9);
  const auto ext = degreedist_extension_check(f, g, beta, sieve, 1000.0);
  b.info("extension sup tail/head, p <= 1000", ext.sup_ratio);
  b.at_most("extension violations, p <= 1000", double(ext.violations), 0.0);
  return b.take();
}

BundleResult remark1(const VerifyOptions& o) {
  Bundle b("remark1", o);
  const std::uint64_t N = need(o, 1'000);
  const auto f = alternating_sign();
  const auto g = one();
  const auto hq = solve_quotient(f, g, std::vector<Prime>{2, 3, 5}, 20);
  double worst = 0.0;
  for (unsigned k = 0; k <= 20; ++k)
    worst = std::max(worst, std::abs(hq.local[0].coeffs[k] - std::ldexp(1.0, int(k))));
  b.at_most("max |h(2^k) - 2^k|, k <= 20", worst, 0.0);
  double odd = 0.0;
  for (std::size_t i = 1; i < hq.local.size(); ++i)
    for (unsigned k = 1; k <= 20; ++k)
      odd = std::max(odd, std::abs(hq.local[i].coeffs[k]));
  b.at_most("max |h(p^k)|, p in {3, 5}", odd, 0.0);
  const auto H = H_series(hq.h, 1.0);
  b.expect("H(1)", H.verdict, "divergent");
  const auto sieve = build_sieve(N);
  const auto t = evaluate(f, sieve, N);
  const auto ps = prefix_sums(t);
  double mx = 0.0;
  for (const auto& s : ps.sums)
    mx = std::max(mx, std::abs(s));
  b.at_most("max |S_f(x)|, x <= N", mx, 1.0);
  return b.take();
}

BundleResult counterexample(const VerifyOptions& o) {
  Bundle b("counterexample", o);
  const std::uint64_t X = std::uint64_t{1} << 17;
  const std::uint64_t N = std::max(o.N, X);
  const auto chi = dirichlet_character(4, 1);
  const std::vector<unsigned> J{3, 4};
  const auto f = sparse_dyadic(chi, J);
  const auto sieve = build_sieve(N);
  std::vector<double> cps = grid(1e3, double(N));
  const auto dist = distance_classic(f, chi, sieve, cps);
  b.at_most("D(f,chi)^2 total increase", dist.total(), 1.0);
  const auto t = evaluate(f, sieve, X);
  const double sx = std::abs(prefix_sums(t).at(double(X)));
  b.at_least("|S_f(2^17)|", sx, 0.05 * double(X) / std::log(double(X)));
  return b.take();
}

BundleResult squarefree(const VerifyOptions& o) {
  Bundle b("squarefree", o);
  const std::uint64_t N = need(o, 100'000);
  const auto sieve = build_sieve(N);
  const auto cps = grid(1e3, double(N));
  for (const std::uint64_t q : {4u, 3u}) {
    const auto chi = dirichlet_character(q, 1);
    const auto tilde = squarefree_restrict(chi);
    const auto fit = growth_fit(partial_sums(evaluate(tilde, sieve, N), cps));
    b.within(fmt::format("alpha_hat(chi~ mod {}) over [1e3, N]", q), fit.exponent, 0.30, 0.60);
    const auto primes = sieve.primes_up_to(1000);
    const auto hq = solve_quotient(chi, tilde, primes, 8);
    std::size_t bad = 0;
    for (const auto& s : hq.local) {
      if (q % s.p == 0)
        continue;
      for (unsigned k = 0; k <= 8; ++k) {
        const Complex want = k == 0 ? 1.0 : (k == 2 ? -1.0 : 0.0);
        if (s.coeffs[k] != want)
          ++bad;
      }
    }
    b.at_most(fmt::format("quotient local mismatches mod {}, p <= 1e3", q), double(bad), 0.0);
  }
  return b.take();
}

} // namespace

const std::vector<std::string>& bundle_names() {
  static const std::vector<std::string> names{"thm1", "thm2", "thm3", "thm4", "remark1", "counterexample",
                                              "squarefree"};
  return names;
}

BundleResult run_bundle(std::string_view name, const VerifyOptions& options) {
  static const std::map<std::string, std::function<BundleResult(const VerifyOptions&)>, std::less<>> table{
      {"thm1", thm1}, {"thm2", thm2}, {"thm3", thm3}, {"thm4", thm4}, {"remark1", remark1},
      {"counterexample", counterexample}, {"squarefree", squarefree}};
  const auto it = table.find(name);
  if (it == table.end())
    throw std::invalid_argument(fmt::format("unknown verify bundle '{}'", name));
  return it->second(options);
}

} // namespace pretense
