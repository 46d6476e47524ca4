#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pretense {

using Complex = std::complex<double>;
using Prime = std::uint64_t;

/// z^k by k successive multiplications, so z^k agrees bit for bit with a
/// running product z, z^2, ... and stays exact for +-1 and +-i.
inline Complex ipow(Complex z, unsigned k) {
  Complex acc = 1.0;
  for (unsigned i = 0; i < k; ++i)
    acc *= z;
  return acc;
}

// Error taxonomy. Argument problems use the standard std::invalid_argument and
// std::out_of_range; everything below is a computation failure.

/// A prime-power rule failed; the message names the offending (p, k).
class RuleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Memory could not be obtained; the message carries the required byte count.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured size bound (e.g. determinant order) was exceeded.
class LimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A growth fit had too few usable points.
class DegenerateFitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pretense
