#include "pretense/config.hpp"
#include "pretense/constructions.hpp"
#include "pretense/degree_d.hpp"
#include "pretense/descriptor.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/parallel.hpp"
#include "pretense/random_specs.hpp"
#include "pretense/verify.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace pretense;
using nlohmann::ordered_json;

namespace {

void expect_same_values(const FunctionSpec& a, const FunctionSpec& b) {
  for (Prime p : {2u, 3u, 5u, 7u, 11u, 101u, 257u, 65537u})
    for (unsigned k = 0; k <= 4; ++k)
      ASSERT_EQ(a.at(p, k), b.at(p, k)) << a.name << " p=" << p << " k=" << k;
}

ExperimentConfig sample_config() {
  ExperimentConfig c;
  c.N = 250'000;
  c.seed = 17;
  c.x0 = 123.25;
  c.ratio = 1.5;
  c.out = "runs/a b";
  c.params = {{"beta", "0.5"}, {"note", "x = y"}};
  c.specs = {{"f", ordered_json{{"name", "character"}, {"q", 4}, {"index", 1}}},
             {"g", ordered_json{{"name", "optimality-twist"},
                                {"f", {{"name", "character"}, {"q", 4}, {"index", 1}}},
                                {"beta", 0.5}}}};
  return c;
}

} // namespace

TEST(Config, Roundtrip) {
  const auto c = sample_config();
  const auto text = serialize(c);
  const auto back = parse_config(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize(back), text);
  EXPECT_EQ(back.param("note"), "x = y");
  EXPECT_EQ(back.param("missing", "dflt"), "dflt");
  EXPECT_EQ(back.grid_ratio(), 1.5);
  EXPECT_EQ(ExperimentConfig{}.grid_ratio(), default_grid_ratio());
}

TEST(Config, DefaultsAndComments) {
  const auto c = parse_config("# comment\n[experiment]\nN = 1000\n");
  EXPECT_EQ(c.N, 1000u);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_TRUE(c.specs.empty());
}

TEST(Config, ErrorsNameTheLine) {
  const auto expect_line = [](const std::string& text, const std::string& needle) {
    try {
      (void)parse_config(text);
      FAIL() << text;
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_line("[experiment]\nN = abc\n", "line 2");
  expect_line("[experiment]\nN = 10\n[bogus]\n", "line 3");
  expect_line("N = 10\n", "line 1");
  expect_line("[spec.f]\ndescriptor = {bad\n", "line 2");
  expect_line("[experiment]\nwhat = 1\n", "line 2");
  expect_line("[experiment\n", "line 1");
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "pretense_config_test.ini";
  {
    std::ofstream out(path);
    out << serialize(sample_config());
  }
  EXPECT_EQ(load_config(path.string()), sample_config());
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path.string()), std::invalid_argument);
}

TEST(Descriptor, RoundtripEveryConstruction) {
  const auto chi = dirichlet_character(5, 2);
  const std::vector<unsigned> J{3, 4};
  const std::vector<FunctionSpec> specs{
      one(),
      delta(),
      moebius(),
      liouville(),
      alternating_sign(),
      divisor_function(3),
      chi,
      kronecker_character(-3),
      archimedean_twist(1.25),
      sparse_dyadic(chi, J),
      optimality_twist(chi, 0.5, 1e5),
      squarefree_restrict(chi),
      make_degree_d({chi, one()}).spec,
      quotient_spec(chi, squarefree_restrict(chi)),
      dirichlet_inverse(moebius()),
      random_multiplicative(4),
      random_completely_multiplicative(4),
      random_sparse_modification(chi, 4),
  };
  for (const auto& s : specs) {
    ASSERT_FALSE(s.descriptor.is_null()) << s.name;
    const auto text = s.descriptor.dump();
    const auto back = spec_from_descriptor(ordered_json::parse(text));
    EXPECT_EQ(back.descriptor, s.descriptor) << s.name;
    expect_same_values(s, back);
  }
}

TEST(Descriptor, Tabulated) {
  const auto d = ordered_json::parse(
      R"({"name":"tabulated","primes":[{"prime":2,"coeffs":[[1,0],[0,1],[-1,0]]}],"default":"one"})");
  const auto f = spec_from_descriptor(d);
  EXPECT_EQ(f.at(2, 1), Complex(0, 1));
  EXPECT_EQ(f.at(2, 2), Complex(-1, 0));
  EXPECT_EQ(f.at(2, 3), Complex(0, 0));
  EXPECT_EQ(f.at(3, 5), Complex(1, 0));
  auto bad = d;
  bad["primes"][0]["coeffs"][0] = {2, 0};
  EXPECT_THROW(spec_from_descriptor(bad), std::invalid_argument);
  bad = d;
  bad["default"] = "half";
  EXPECT_THROW(spec_from_descriptor(bad), std::invalid_argument);
}

TEST(Descriptor, Errors) {
  EXPECT_THROW(spec_from_descriptor(ordered_json::parse(R"({"q":4})")), std::invalid_argument);
  EXPECT_THROW(spec_from_descriptor(ordered_json::parse(R"({"name":"nope"})")), std::invalid_argument);
  EXPECT_THROW(spec_from_descriptor(ordered_json::parse(R"({"name":"character","q":"x"})")),
               std::invalid_argument);
  EXPECT_THROW(spec_from_descriptor(ordered_json::parse(R"({"name":"character","q":-4})")),
               std::invalid_argument);
  EXPECT_THROW(spec_from_descriptor(ordered_json::parse(R"({"name":"character","q":4,"index":7})")),
               std::invalid_argument);
}

TEST(ShortForm, Parser) {
  EXPECT_EQ(parse_spec_argument("moebius"), (ordered_json{{"name", "moebius"}}));
  EXPECT_EQ(parse_spec_argument("character:q=4:index=1"),
            (ordered_json{{"name", "character"}, {"q", 4}, {"index", 1}}));
  EXPECT_EQ(parse_spec_argument("archimedean-twist:t=1.5")["t"], 1.5);
  const auto sd = parse_spec_argument("sparse-dyadic:chi=liouville:J=3,4");
  EXPECT_EQ(sd["chi"], (ordered_json{{"name", "liouville"}}));
  EXPECT_EQ(sd["J"], ordered_json::array({3, 4}));
  EXPECT_EQ(parse_spec_argument(R"({"name":"divisor","k":2})")["k"], 2);
  EXPECT_THROW(parse_spec_argument(""), std::invalid_argument);
  EXPECT_THROW(parse_spec_argument("character:q"), std::invalid_argument);
  const auto f = spec_from_argument("character:q=4:index=1");
  EXPECT_EQ(f.at(3, 1), Complex(-1.0));
}

TEST(Verify, BundlesAreDeterministicAcrossThreadCounts) {
  VerifyOptions opts;
  opts.N = 100'000;
  for (const auto& name : {std::string("remark1"), std::string("thm2"), std::string("thm4")}) {
    set_worker_threads(1);
    const auto a = run_bundle(name, opts);
    set_worker_threads(4);
    const auto b = run_bundle(name, opts);
    set_worker_threads(0);
    EXPECT_EQ(a.render(), b.render()) << name;
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump()) << name;
  }
}

TEST(Verify, UnknownBundleAndNames) {
  EXPECT_THROW(run_bundle("thm9", VerifyOptions{}), std::invalid_argument);
  const auto& names = bundle_names();
  EXPECT_EQ(names.size(), 7u);
  EXPECT_NE(std::find(names.begin(), names.end(), "squarefree"), names.end());
}

TEST(Verify, AlternatingBundlePasses) {
  VerifyOptions opts;
  opts.N = 100'000;
  const auto r = run_bundle("remark1", opts);
  EXPECT_TRUE(r.passed()) << r.render();
  EXPECT_EQ(r.to_json()["bundle"], "remark1");
}
