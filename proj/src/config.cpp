#include "pretense/config.hpp"

#include "pretense/io.hpp"
#include "pretense/value_table.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pretense {

std::string ExperimentConfig::param(std::string_view key, std::string_view fallback) const {
  for (const auto& [k, v] : params)
    if (k == key)
      return v;
  return std::string(fallback);
}

double ExperimentConfig::grid_ratio() const { return ratio > 0 ? ratio : default_grid_ratio(); }

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "N = " << c.N << '\n';
  out << "seed = " << c.seed << '\n';
  out << "x0 = " << format_double(c.x0) << '\n';
  out << "ratio = " << format_double(c.ratio) << '\n';
  out << "out = " << c.out << '\n';
  if (!c.params.empty()) {
    out << "\n[params]\n";
    for (const auto& [k, v] : c.params)
      out << k << " = " << v << '\n';
  }
  for (const auto& [label, d] : c.specs)
    out << "\n[spec." << label << "]\ndescriptor = " << d.dump() << '\n';
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view v, std::size_t line) {
  T x{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw std::invalid_argument(fmt::format("config line {}: '{}' is not a valid number", line, v));
  return x;
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::string section;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (line.empty() || line.front() == '#' || line.front() == ';')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument(fmt::format("config line {}: unterminated section header", lineno));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "params" && section.rfind("spec.", 0) != 0)
        throw std::invalid_argument(fmt::format("config line {}: unknown section [{}]", lineno, section));
      if (section.rfind("spec.", 0) == 0 && section.size() == 5)
        throw std::invalid_argument(fmt::format("config line {}: spec section needs a label", lineno));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", lineno));
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section == "experiment") {
      if (key == "N")
        c.N = parse_number<std::uint64_t>(value, lineno);
      else if (key == "seed")
        c.seed = parse_number<std::uint64_t>(value, lineno);
      else if (key == "x0")
        c.x0 = parse_number<double>(value, lineno);
      else if (key == "ratio")
        c.ratio = parse_number<double>(value, lineno);
      else if (key == "out")
        c.out = std::string(value);
      else
        throw std::invalid_argument(fmt::format("config line {}: unknown experiment key '{}'", lineno, key));
    } else if (section == "params") {
      c.params.emplace_back(key, std::string(value));
    } else if (section.rfind("spec.", 0) == 0) {
      if (key != "descriptor")
        throw std::invalid_argument(fmt::format("config line {}: spec sections only take 'descriptor'", lineno));
      try {
        c.specs.emplace_back(section.substr(5), nlohmann::ordered_json::parse(value));
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(fmt::format("config line {}: bad descriptor JSON: {}", lineno, e.what()));
      }
    } else {
      throw std::invalid_argument(fmt::format("config line {}: key outside any section", lineno));
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument(fmt::format("cannot open config file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.N == b.N && a.seed == b.seed && a.x0 == b.x0 && a.ratio == b.ratio && a.out == b.out &&
         a.params == b.params && a.specs == b.specs;
}

} // namespace pretense
