// Command-line front end: every subcommand writes CSV or JSON to --out (or
// stdout). Exit status 0 on success, 1 on a computation error or a failed
// verify bundle, 2 on a usage error.

#include "pretense/asymptotics.hpp"
#include "pretense/config.hpp"
#include "pretense/constructions.hpp"
#include "pretense/degree_d.hpp"
#include "pretense/descriptor.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/io.hpp"
#include "pretense/metrics.hpp"
#include "pretense/parallel.hpp"
#include "pretense/sieve.hpp"
#include "pretense/value_table.hpp"
#include "pretense/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace pretense;
using json = nlohmann::ordered_json;

namespace {

/// Raised for bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t N = 0;
  std::vector<std::string> specs;
  std::optional<double> beta, sigma, Y, alpha, t, theta;
  std::optional<unsigned> k;
  std::string checkpoints;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string mode = "nearest";
  std::string config;
  std::string kind = "classic";
  std::string input;
  std::string summation = "block";
  double xmin = 0.0;
  double xmax = std::numeric_limits<double>::infinity();
  // construct
  std::string name;
  std::optional<std::uint64_t> q, index;
  std::optional<std::int64_t> D;
  std::string intervals;
  std::optional<double> cutoff;
  std::vector<std::string> bundle;
};

ExperimentConfig g_config;

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f)
    throw std::runtime_error(fmt::format("cannot write '{}'", o.out));
  f << text;
}

void write_json(const Options& o, const json& j) { write_output(o, j.dump(2) + "\n"); }

std::uint64_t need_N(const Options& o) {
  if (o.N > 0)
    return o.N;
  if (!o.config.empty())
    return g_config.N;
  throw UsageError("--N is required");
}

std::uint64_t seed_of(const Options& o) { return o.seed ? *o.seed : (o.config.empty() ? 1 : g_config.seed); }

template <class T>
T need(const std::optional<T>& v, const char* flag, const char* param_key = nullptr) {
  if (v)
    return *v;
  if (param_key && !g_config.param(param_key).empty())
    return static_cast<T>(std::stod(g_config.param(param_key)));
  throw UsageError(fmt::format("{} is required", flag));
}

std::vector<FunctionSpec> load_specs(const Options& o, std::size_t count) {
  std::vector<FunctionSpec> out;
  try {
    for (const auto& s : o.specs)
      out.push_back(spec_from_argument(s));
    for (std::size_t i = 0; out.size() < count && i < g_config.specs.size(); ++i)
      out.push_back(spec_from_descriptor(g_config.specs[i].second));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (out.size() < count)
    throw UsageError(fmt::format("this subcommand needs {} --spec argument(s)", count));
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad list entry '{}'", item));
    }
  }
  return v;
}

std::vector<double> checkpoints(const Options& o, std::uint64_t N) {
  if (!o.checkpoints.empty())
    return parse_list(o.checkpoints);
  const double ratio = o.config.empty() ? default_grid_ratio() : g_config.grid_ratio();
  const double x0 = o.config.empty() ? 1000.0 : g_config.x0;
  auto c = geometric_checkpoints(std::min(x0, double(N)), ratio, double(N));
  if (c.empty() || c.back() != double(N))
    c.push_back(double(N));
  return c;
}

std::string csv(const auto& thing) {
  std::ostringstream s;
  write_csv(s, thing);
  return s.str();
}

json quotient_json(const QuotientSpec& q) {
  return {{"f", q.f_name}, {"g", q.g_name}, {"max_exponent", q.max_exponent}, {"local", to_json(q)}};
}

XiLookup lookup(const Options& o) {
  if (o.mode == "exact")
    return XiLookup::Exact;
  if (o.mode == "nearest")
    return XiLookup::Nearest;
  throw UsageError("--mode must be exact or nearest");
}

// ---- subcommands ---------------------------------------------------------

void cmd_sieve(const Options& o) {
  const auto N = need_N(o);
  const auto s = build_sieve(N);
  write_json(o, {{"N", N}, {"prime_count", s.primes.size()}, {"largest_prime", s.primes.empty() ? 0 : s.primes.back()}});
}

void cmd_eval(const Options& o) {
  const auto N = need_N(o);
  const auto f = load_specs(o, 1)[0];
  write_output(o, csv(evaluate(f, build_sieve(std::max<std::uint64_t>(N, 2)), N)));
}

void cmd_sums(const Options& o) {
  const auto N = need_N(o);
  const auto f = load_specs(o, 1)[0];
  SummationMode mode;
  if (o.summation == "block")
    mode = SummationMode::BlockParallelDeterministic;
  else if (o.summation == "sequential")
    mode = SummationMode::CompensatedSequential;
  else
    throw UsageError("--summation must be block or sequential");
  const auto t = evaluate(f, build_sieve(std::max<std::uint64_t>(N, 2)), N);
  write_output(o, csv(partial_sums(t, checkpoints(o, N), mode)));
}

void cmd_convolve(const Options& o) {
  const auto N = need_N(o);
  const auto s = load_specs(o, 2);
  const auto sieve = build_sieve(std::max<std::uint64_t>(N, 2));
  write_output(o, csv(convolve_table(evaluate(s[0], sieve, N), evaluate(s[1], sieve, N), N)));
}

void cmd_quotient(const Options& o) {
  const auto N = need_N(o);
  const auto s = load_specs(o, 2);
  const auto sieve = build_sieve(std::max<std::uint64_t>(N, 2));
  if (o.k) {
    const auto primes = sieve.primes_up_to(double(N));
    write_json(o, quotient_json(solve_quotient(s[0], s[1], primes, *o.k)));
  } else {
    write_json(o, quotient_json(solve_quotient_dense(s[0], s[1], sieve, N)));
  }
}

void cmd_inverse(const Options& o) {
  const auto N = need_N(o);
  const auto h = load_specs(o, 1)[0];
  const auto sieve = build_sieve(std::max<std::uint64_t>(N, 2));
  json arr = json::array();
  for (const auto p : sieve.primes_up_to(double(N))) {
    const unsigned K = o.k ? *o.k : unsigned(std::floor(std::log(double(N)) / std::log(double(p)) + 1e-12));
    const auto inv = dirichlet_inverse_local(h, std::vector<Prime>{p}, K)[0];
    json coeffs = json::array();
    for (const auto c : inv.coeffs)
      coeffs.push_back({c.real(), c.imag()});
    arr.push_back({{"prime", p}, {"coeffs", coeffs}});
  }
  write_json(o, {{"base", h.name}, {"local", arr}});
}

void cmd_distance(const Options& o) {
  const auto s = load_specs(o, 2);
  const auto& f = s[0];
  const auto& g = s[1];
  DistanceReport r;
  if (o.kind == "H") {
    r = H_series(quotient_spec(f, g), need(o.sigma, "--sigma", "sigma"));
  } else if (o.kind == "Hhat") {
    r = Hhat_series(quotient_spec(f, g), need(o.sigma, "--sigma", "sigma"), need(o.Y, "--Y", "Y"));
  } else {
    const auto N = need_N(o);
    const auto sieve = build_sieve(std::max<std::uint64_t>(N, 2));
    const auto cps = checkpoints(o, N);
    if (o.kind == "classic")
      r = distance_classic(f, g, sieve, cps);
    else if (o.kind == "beta")
      r = distance_beta(f, g, need(o.beta, "--beta", "beta"), sieve, cps);
    else if (o.kind == "strong")
      r = distance_strong(f, g, need(o.beta, "--beta", "beta"), need(o.k, "--k", "k"), sieve, cps);
    else if (o.kind == "hL1" || o.kind == "hL2") {
      const auto q = solve_quotient_dense(f, g, sieve, N);
      r = h_majorant_series(evaluate(q.h, sieve, N), need(o.sigma, "--sigma", "sigma"),
                            o.kind == "hL1" ? MajorantPower::L1 : MajorantPower::L2, cps);
    } else
      throw UsageError("--kind must be classic, beta, strong, H, Hhat, hL1 or hL2");
  }
  write_json(o, to_json(r));
}

void cmd_hseries(const Options& o) {
  const auto s = load_specs(o, 2);
  const auto h = quotient_spec(s[0], s[1]);
  const double sigma = need(o.sigma, "--sigma", "sigma");
  write_json(o, to_json(o.Y ? Hhat_series(h, sigma, *o.Y) : H_series(h, sigma)));
}

void cmd_degree(const Options& o) {
  const auto f = load_specs(o, 1)[0];
  const double P = o.N ? double(o.N) : 100.0;
  std::vector<Prime> primes;
  for (Prime p = 2; double(p) <= P; ++p) {
    bool prime = true;
    for (Prime d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime)
      primes.push_back(p);
  }
  json arr = json::array();
  for (const auto p : primes) {
    json row = to_json(alpha_coeffs(f, p));
    row["recursion_residual"] = recursion_residual(f, p, o.k ? *o.k : 0);
    arr.push_back(std::move(row));
  }
  write_json(o, {{"spec", f.name}, {"degree", f.degree ? *f.degree : 0}, {"primes", arr}});
}

void cmd_construct(const Options& o) {
  json d = {{"name", o.name}};
  if (o.q)
    d["q"] = *o.q;
  if (o.index)
    d["index"] = *o.index;
  if (o.D)
    d["D"] = *o.D;
  if (o.t)
    d["t"] = *o.t;
  if (o.k)
    d["k"] = *o.k;
  if (o.seed)
    d["seed"] = *o.seed;
  if (o.beta)
    d["beta"] = *o.beta;
  if (o.cutoff)
    d["cutoff"] = *o.cutoff;
  if (!o.intervals.empty()) {
    json J = json::array();
    for (const double j : parse_list(o.intervals))
      J.push_back(static_cast<unsigned>(j));
    d["J"] = J;
  }
  if (!o.specs.empty()) {
    try {
      const auto base = parse_spec_argument(o.specs[0]);
      d[o.name == "sparse-dyadic" ? "chi" : "f"] = base;
      if (o.specs.size() > 1)
        d["g"] = parse_spec_argument(o.specs[1]);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  FunctionSpec spec;
  try {
    spec = spec_from_descriptor(d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_json(o, spec.descriptor.is_null() ? d : spec.descriptor);
}

void cmd_growth_fit(const Options& o) {
  std::vector<double> x;
  std::vector<Complex> S;
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in)
      throw UsageError(fmt::format("cannot open '{}'", o.input));
    auto c = read_csv(in);
    x = std::move(c.x);
    S = std::move(c.values);
  } else {
    const auto N = need_N(o);
    const auto f = load_specs(o, 1)[0];
    const auto ps = partial_sums(evaluate(f, build_sieve(std::max<std::uint64_t>(N, 2)), N), checkpoints(o, N));
    x = ps.checkpoints;
    S = ps.sums;
  }
  write_json(o, to_json(growth_fit(x, S, o.xmin, o.xmax)));
}

void cmd_xi(const Options& o) {
  const auto N = need_N(o);
  const auto mode = lookup(o);
  const double alpha = need(o.alpha, "--alpha", "alpha");
  const auto s = load_specs(o, 1);
  const auto sieve = build_sieve(std::max<std::uint64_t>(N, 2));
  const auto cps = checkpoints(o, N);
  const auto xi = xi_from_table(evaluate(s[0], sieve, N), cps, alpha);
  PartialSumSeries out;
  out.checkpoints = cps;
  if (s.size() >= 2) {
    const auto h = evaluate(quotient_spec(s[0], s[1]), sieve, N);
    out.sums = xi_tilde_series(h, xi, mode).xi;
  } else {
    out.sums = xi.xi;
  }
  write_output(o, csv(out));
}

void cmd_lseries(const Options& o) {
  const auto N = need_N(o);
  const auto f = load_specs(o, 1)[0];
  const Complex s{need(o.sigma, "--sigma", "sigma"), o.t ? *o.t : 0.0};
  const auto t = evaluate(f, build_sieve(std::max<std::uint64_t>(N, 2)), N);
  write_json(o, to_json(l_truncation(t, s, N, o.theta ? *o.theta : 0.0)));
}

int cmd_verify(const Options& o) {
  if (o.bundle.empty())
    throw UsageError(fmt::format("verify needs a bundle name ({})", fmt::join(bundle_names(), ", ")));
  VerifyOptions vo;
  vo.N = o.N ? o.N : (o.config.empty() ? vo.N : g_config.N);
  vo.seed = seed_of(o);
  std::string text;
  bool ok = true;
  for (const auto& name : o.bundle) {
    const auto known = bundle_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw UsageError(fmt::format("unknown bundle '{}' ({})", name, fmt::join(known, ", ")));
    const auto r = run_bundle(name, vo);
    text += r.render();
    ok = ok && r.passed();
  }
  write_output(o, text);
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pretense: multiplicative functions, pretentious distances and partial sums"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--N", o.N, "upper limit of the dense range");
    c->add_option("--spec", o.specs, "spec: name, name:key=value:..., JSON, or a JSON file (repeatable)");
    c->add_option("--checkpoints", o.checkpoints, "comma-separated checkpoints (default: geometric grid)");
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--seed", o.seed, "seed for randomized specs and suites");
    c->add_option("--threads", o.threads, "worker threads (default PRETENSE_THREADS or all cores)");
    c->add_option("--config", o.config, "experiment config file");
    c->add_option("--beta", o.beta, "weight exponent beta");
    c->add_option("--sigma", o.sigma, "real part sigma");
    c->add_option("--k", o.k, "depth k (strong distance, quotient order)");
    c->add_option("--Y", o.Y, "prime cutoff Y for Hhat");
    c->add_option("--alpha", o.alpha, "exponent alpha for xi");
    c->add_option("--mode", o.mode, "xi lookup: exact or nearest")->check(CLI::IsMember({"exact", "nearest"}));
  };

  std::map<std::string, std::function<int()>> run;
  auto sub = [&](const char* name, const char* help, std::function<void(const Options&)> fn) {
    auto* c = app.add_subcommand(name, help);
    common(c);
    run[name] = [fn, &o] {
      fn(o);
      return 0;
    };
    return c;
  };

  sub("sieve", "prime count up to N", cmd_sieve);
  sub("eval", "dense values f(1..N) as CSV", cmd_eval);
  sub("sums", "partial sums S_f at checkpoints as CSV", cmd_sums)
      ->add_option("--summation", o.summation, "block or sequential");
  sub("convolve", "Dirichlet convolution of two specs as CSV", cmd_convolve);
  sub("quotient", "local series of h with g = f * h", cmd_quotient);
  sub("inverse", "local series of the Dirichlet inverse", cmd_inverse);
  sub("distance", "pretentious distances and H-series", cmd_distance)
      ->add_option("--kind", o.kind, "classic, beta, strong, H, Hhat, hL1, hL2");
  sub("hseries", "H(sigma), or Hhat_Y(sigma) with --Y, for h = quotient(f, g)", cmd_hseries);
  sub("degree", "symmetric coefficients of a degree-d spec at primes <= N", cmd_degree);
  auto* construct = sub("construct", "emit a spec descriptor", cmd_construct);
  construct->add_option("name", o.name, "construction name")->required();
  construct->add_option("--q", o.q);
  construct->add_option("--index", o.index);
  construct->add_option("--D", o.D);
  construct->add_option("--t", o.t);
  construct->add_option("--intervals", o.intervals, "comma-separated dyadic indices j");
  construct->add_option("--cutoff", o.cutoff, "sign-rule diagnostic cutoff");
  auto* gf = sub("growth-fit", "fit log|S| against log x", cmd_growth_fit);
  gf->add_option("--in", o.input, "partial-sum CSV (n_or_x,re,im,abs)");
  gf->add_option("--xmin", o.xmin);
  gf->add_option("--xmax", o.xmax);
  sub("xi", "xi = S_f / x^alpha, or xi_tilde with a second spec g", cmd_xi);
  auto* ls = sub("lseries", "truncated Dirichlet series at s = sigma + i t", cmd_lseries);
  ls->add_option("--t", o.t);
  ls->add_option("--theta", o.theta, "coefficient growth |f(n)| <= n^theta");
  auto* verify = app.add_subcommand("verify", "run verification bundles");
  common(verify);
  verify->add_option("bundle", o.bundle, "thm1 thm2 thm3 thm4 remark1 counterexample squarefree")->required();
  run["verify"] = [&o] { return cmd_verify(o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  auto* chosen = app.get_subcommands().front();
  try {
    if (!o.config.empty()) {
      try {
        g_config = load_config(o.config);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (o.threads)
      set_worker_threads(o.threads);
    return run.at(chosen->get_name())();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << chosen->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
