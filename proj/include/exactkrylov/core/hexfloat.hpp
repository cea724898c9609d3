// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "exactkrylov/core/scalar.hpp"

namespace exactkrylov {

/// Lossless hexadecimal literal, e.g. "0x1.8p+1".
std::string format_hex(double x);
std::string format_hex(float x);

/// Shortest decimal that round-trips in the value's own precision.
std::string format_shortest(double x);
std::string format_shortest(float x);

/// Parses a hex or decimal literal directly in the target precision.
/// Throws PreconditionViolation on malformed or non-finite input.
template <IeeeScalar S>
S parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
float parse_scalar<float>(std::string_view text);

}  // namespace exactkrylov
