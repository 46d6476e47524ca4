#include "pretense/descriptor.hpp"

#include "pretense/constructions.hpp"
#include "pretense/degree_d.hpp"
#include "pretense/dirichlet.hpp"
#include "pretense/random_specs.hpp"

#include <fmt/format.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

namespace pretense {

namespace {

using json = nlohmann::ordered_json;

const json& field(const json& d, const char* key) {
  if (!d.contains(key))
    throw std::invalid_argument(
        fmt::format("spec '{}' needs parameter '{}'", d.value("name", std::string{"?"}), key));
  return d.at(key);
}

template <class T>
T number(const json& d, const char* key) {
  const json& v = field(d, key);
  if (!v.is_number())
    throw std::invalid_argument(fmt::format("parameter '{}' must be a number", key));
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer())
      throw std::invalid_argument(fmt::format("parameter '{}' must be an integer", key));
    if constexpr (std::is_unsigned_v<T>)
      if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
        throw std::invalid_argument(fmt::format("parameter '{}' must be non-negative", key));
  }
  return v.get<T>();
}

FunctionSpec tabulated(const json& d) {
  auto table = std::make_shared<std::map<Prime, std::vector<Complex>>>();
  for (const auto& row : field(d, "primes")) {
    const Prime p = number<Prime>(row, "prime");
    std::vector<Complex> coeffs;
    for (const auto& c : field(row, "coeffs")) {
      if (!c.is_array() || c.size() != 2)
        throw std::invalid_argument("tabulated coefficients must be [re, im] pairs");
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    if (coeffs.empty() || coeffs[0] != Complex{1.0})
      throw std::invalid_argument(fmt::format("tabulated local series at p={} must start with f(1) = 1", p));
    (*table)[p] = std::move(coeffs);
  }
  const std::string fallback = d.value("default", std::string{"zero"});
  if (fallback != "zero" && fallback != "one")
    throw std::invalid_argument("tabulated default must be \"zero\" or \"one\"");
  FunctionSpec s;
  s.name = d.value("label", std::string{"tabulated"});
  s.kind = SpecKind::Tabulated;
  const bool one_default = fallback == "one";
  s.rule = [table, one_default](Prime p, unsigned k) -> Complex {
    const auto it = table->find(p);
    if (it == table->end())
      return one_default ? Complex{1.0} : Complex{};
    return k < it->second.size() ? it->second[k] : Complex{};
  };
  s.descriptor = d;
  return s;
}

} // namespace

FunctionSpec spec_from_descriptor(const json& d) {
  if (d.is_string())
    return spec_from_descriptor(json{{"name", d.get<std::string>()}});
  if (!d.is_object() || !d.contains("name") || !d["name"].is_string())
    throw std::invalid_argument("spec descriptor must be an object with a string \"name\"");
  const std::string name = d["name"].get<std::string>();

  if (name == "one" || name == "delta" || name == "moebius" || name == "liouville")
    return standard_spec(name);
  if (name == "alternating")
    return alternating_sign();
  if (name == "divisor")
    return divisor_function(number<unsigned>(d, "k"));
  if (name == "character")
    return dirichlet_character(number<std::uint64_t>(d, "q"), d.contains("index") ? number<std::uint64_t>(d, "index") : 0);
  if (name == "kronecker")
    return kronecker_character(number<std::int64_t>(d, "D"));
  if (name == "archimedean-twist")
    return archimedean_twist(number<double>(d, "t"));
  if (name == "sparse-dyadic") {
    const auto chi = spec_from_descriptor(field(d, "chi"));
    std::vector<unsigned> J;
    const json& js = field(d, "J");
    if (js.is_number())
      J.push_back(js.get<unsigned>());
    else
      for (const auto& j : js)
        J.push_back(j.get<unsigned>());
    return sparse_dyadic(chi, J);
  }
  if (name == "optimality-twist") {
    const auto f = spec_from_descriptor(field(d, "f"));
    const double beta = number<double>(d, "beta");
    const double cutoff = d.contains("cutoff") ? number<double>(d, "cutoff") : kDefaultSignCutoff;
    if (d.contains("rule")) {
      SignRule rule;
      rule.cutoff = cutoff;
      const auto r = d["rule"].get<std::string>();
      if (r != "divergent" && r != "convergent")
        throw std::invalid_argument("optimality-twist rule must be \"divergent\" or \"convergent\"");
      rule.divergent = r == "divergent";
      rule.diagnostic = d.value("diagnostic", 0.0);
      return optimality_twist(f, beta, rule);
    }
    return optimality_twist(f, beta, cutoff);
  }
  if (name == "squarefree-restrict")
    return squarefree_restrict(spec_from_descriptor(field(d, "f")));
  if (name == "degree-d") {
    std::vector<FunctionSpec> parts;
    for (const auto& c : field(d, "constituents"))
      parts.push_back(spec_from_descriptor(c));
    return make_degree_d(std::move(parts)).spec;
  }
  if (name == "quotient")
    return quotient_spec(spec_from_descriptor(field(d, "f")), spec_from_descriptor(field(d, "g")));
  if (name == "inverse")
    return dirichlet_inverse(spec_from_descriptor(field(d, "base")));
  if (name == "random")
    return random_multiplicative(number<std::uint64_t>(d, "seed"));
  if (name == "random-cm")
    return random_completely_multiplicative(number<std::uint64_t>(d, "seed"));
  if (name == "random-sparse")
    return random_sparse_modification(spec_from_descriptor(field(d, "f")), number<std::uint64_t>(d, "seed"));
  if (name == "tabulated")
    return tabulated(d);
  throw std::invalid_argument(fmt::format("unknown spec name '{}'", name));
}

namespace {

json parse_value(std::string_view v) {
  if (v.find(',') != std::string_view::npos) {
    json arr = json::array();
    std::size_t start = 0;
    while (start <= v.size()) {
      const std::size_t end = std::min(v.find(',', start), v.size());
      arr.push_back(parse_value(v.substr(start, end - start)));
      start = end + 1;
    }
    return arr;
  }
  std::int64_t i = 0;
  auto [pi, ei] = std::from_chars(v.data(), v.data() + v.size(), i);
  if (ei == std::errc{} && pi == v.data() + v.size() && !v.empty())
    return i;
  double x = 0;
  auto [pd, ed] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ed == std::errc{} && pd == v.data() + v.size() && !v.empty())
    return x;
  return json{{"name", std::string(v)}};
}

} // namespace

json parse_spec_argument(std::string_view text) {
  if (text.empty())
    throw std::invalid_argument("empty spec argument");
  if (text.front() == '{' || text.front() == '"')
    return json::parse(text);
  {
    std::error_code ec;
    const std::filesystem::path path{std::string(text)};
    if (std::filesystem::is_regular_file(path, ec)) {
      std::ifstream in(path);
      return json::parse(in);
    }
  }
  json d;
  std::size_t pos = text.find(':');
  d["name"] = std::string(text.substr(0, pos));
  while (pos != std::string_view::npos) {
    const std::size_t next = text.find(':', pos + 1);
    const std::string_view item = text.substr(pos + 1, next == std::string_view::npos ? std::string_view::npos : next - pos - 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw std::invalid_argument(fmt::format("malformed spec parameter '{}' (expected key=value)", item));
    d[std::string(item.substr(0, eq))] = parse_value(item.substr(eq + 1));
    pos = next;
  }
  return d;
}

} // namespace pretense
