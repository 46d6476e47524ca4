#pragma once

#include "pretense/value_table.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pretense {

/// Shortest decimal form that round-trips the double ('.' radix, no locale).
std::string format_double(double x);

/// CSV with header `n_or_x,re,im,abs`, one row per n in [1, limit].
void write_csv(std::ostream& out, const ValueTable& table);

/// CSV with header `n_or_x,re,im,abs`, one row per checkpoint.
void write_csv(std::ostream& out, const PartialSumSeries& series);

/// Rows of a `n_or_x,re,im,abs` CSV, as (x, complex) pairs.
struct CsvSeries {
  std::vector<double> x;
  std::vector<Complex> values;
};

/// Parses a CSV written by write_csv. Throws std::invalid_argument on a
/// missing or wrong header and on malformed rows (the message names the line).
CsvSeries read_csv(std::istream& in);

} // namespace pretense
