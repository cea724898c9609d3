// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exactkrylov {

/// Working precisions. Every algorithm is instantiated for exactly these two.
template <class S>
concept IeeeScalar = std::same_as<S, double> || std::same_as<S, float>;

enum class Precision { binary64, binary32 };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view name);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of operands disagree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold for the given input.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// A NaN or infinity was supplied or produced.
class NonFiniteValue : public Error {
public:
    using Error::Error;
};

/// Recurrence failure that is not a clean (lucky) termination.
class SeriousBreakdown : public Error {
public:
    using Error::Error;
};

template <IeeeScalar S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr Precision precision = Precision::binary64;
    static constexpr const char* name = "binary64";
    /// 2^-53
    static constexpr double unit_roundoff = 0x1p-53;
    /// Range for generated coefficients so that their squares stay normal.
    static constexpr int guard_min_exponent = -500;
    static constexpr int guard_max_exponent = 500;
};

template <>
struct ScalarTraits<float> {
    static constexpr Precision precision = Precision::binary32;
    static constexpr const char* name = "binary32";
    /// 2^-24
    static constexpr double unit_roundoff = 0x1p-24;
    static constexpr int guard_min_exponent = -60;
    static constexpr int guard_max_exponent = 60;
};

template <IeeeScalar S>
constexpr double unit_roundoff() {
    return ScalarTraits<S>::unit_roundoff;
}

template <IeeeScalar S>
S guard_min() {
    return std::ldexp(S(1), ScalarTraits<S>::guard_min_exponent);
}

template <IeeeScalar S>
S guard_max() {
    return std::ldexp(S(1), ScalarTraits<S>::guard_max_exponent);
}

/// |x| in [2^min, 2^max] for the precision's exponent guard.
template <IeeeScalar S>
bool within_exponent_guard(S x) {
    const S a = std::fabs(x);
    return a >= guard_min<S>() && a <= guard_max<S>();
}

/// True when fl(x*x) is finite and normal (or x is zero).
template <IeeeScalar S>
bool square_in_range(S x) {
    if (x == S(0)) return true;
    const S sq = x * x;
    return std::isfinite(sq) && sq >= std::numeric_limits<S>::min();
}

template <IeeeScalar S>
void require_finite(S x, std::string_view what) {
    if (!std::isfinite(x)) {
        throw NonFiniteValue(std::string(what) + ": non-finite value");
    }
}

}  // namespace exactkrylov
