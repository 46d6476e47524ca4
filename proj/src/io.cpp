#include "pretense/io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pretense {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kHeader = "n_or_x,re,im,abs";

void write_row(std::ostream& out, std::string_view label, Complex v) {
  out << label << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
      << format_double(std::abs(v)) << '\n';
}

double parse_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument(fmt::format("csv line {}: cannot parse '{}'", line, s));
  return v;
}

} // namespace

void write_csv(std::ostream& out, const ValueTable& table) {
  out << kHeader << '\n';
  for (std::uint64_t n = 1; n <= table.limit; ++n)
    write_row(out, std::to_string(n), table.values[n]);
}

void write_csv(std::ostream& out, const PartialSumSeries& series) {
  out << kHeader << '\n';
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i)
    write_row(out, format_double(series.checkpoints[i]), series.sums[i]);
}

CsvSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv is empty");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kHeader)
    throw std::invalid_argument(fmt::format("csv header must be '{}', got '{}'", kHeader, line));

  CsvSeries out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::string_view rest = line;
    double fields[4];
    for (int f = 0; f < 4; ++f) {
      const auto comma = rest.find(',');
      if ((f < 3) != (comma != std::string_view::npos))
        throw std::invalid_argument(fmt::format("csv line {}: expected 4 fields", lineno));
      fields[f] = parse_field(rest.substr(0, comma), lineno);
      if (comma != std::string_view::npos)
        rest.remove_prefix(comma + 1);
    }
    out.x.push_back(fields[0]);
    out.values.emplace_back(fields[1], fields[2]);
  }
  return out;
}

} // namespace pretense
