#pragma once

#include "pretense/function_spec.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace pretense {

/// Rebuilds a spec from its descriptor object {"name": ..., params...}.
///
/// Names: one, delta, moebius, liouville, alternating, divisor{k},
/// character{q,index}, kronecker{D}, archimedean-twist{t},
/// sparse-dyadic{chi,J}, optimality-twist{f,beta,cutoff[,rule,diagnostic]},
/// squarefree-restrict{f}, degree-d{constituents}, quotient{f,g},
/// inverse{base}, random{seed}, random-cm{seed}, random-sparse{f,seed},
/// tabulated{primes:[{prime,coeffs:[[re,im],...]}], default:"zero"|"one"}, where
/// coeffs lists f(p^0) = 1, f(p^1), ... and missing powers are 0.
/// A bare string is read as {"name": string}. Throws std::invalid_argument
/// on unknown names and missing or malformed parameters.
FunctionSpec spec_from_descriptor(const nlohmann::ordered_json& descriptor);

/// Accepts inline JSON (leading '{'), an existing file holding JSON, or the
/// short form `name:key=value:key=value`. Values parse as numbers when they
/// look like numbers, comma lists become arrays, anything else is taken as
/// the name of a nested spec (e.g. `optimality-twist:f=one:beta=0.5`).
nlohmann::ordered_json parse_spec_argument(std::string_view text);

inline FunctionSpec spec_from_argument(std::string_view text) {
  return spec_from_descriptor(parse_spec_argument(text));
}

} // namespace pretense
