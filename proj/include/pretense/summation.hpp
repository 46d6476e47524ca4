#pragma once

#include "pretense/types.hpp"

#include <cstddef>

namespace pretense {

/// Kahan-compensated accumulator for reals.
class KahanSum {
public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Componentwise Kahan accumulator for complex values.
class KahanComplex {
public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

private:
  KahanSum re_;
  KahanSum im_;
};

/// Fixed block length of the deterministic reduction contract: terms are
/// Kahan-summed inside blocks of this many consecutive indices, and block
/// totals are Kahan-combined in ascending block order.
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 16;

} // namespace pretense
