// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/core/rng.hpp"

namespace exactkrylov {

/// Outcome of the square-root roundtrip property over random samples.
struct RoundtripReport {
    Precision precision{};
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    /// Hexadecimal literal of the first failing sample.
    std::optional<std::string> first_violation;

    bool passed() const noexcept { return violations == 0; }
};

/// Random value with a fair sign, an exponent uniform over the exponent guard
/// and uniformly random fraction bits.
template <IeeeScalar S>
S sample_guarded_scalar(SplitMix64& rng) {
    constexpr int digits = std::numeric_limits<S>::digits;
    const int lo = ScalarTraits<S>::guard_min_exponent;
    const int hi = ScalarTraits<S>::guard_max_exponent;
    // Exponent e gives |x| in [2^e, 2^(e+1)); the top binade stops at 2^hi.
    const int e = static_cast<int>(rng.between(lo, hi - 1));
    const std::uint64_t fraction = rng.next() >> (64 - (digits - 1));
    const S mantissa = S(1) + std::ldexp(static_cast<S>(fraction), -(digits - 1));
    const S x = std::ldexp(mantissa, e);
    return rng.coin() ? -x : x;
}

/// Checks fl(sqrt(fl(alpha^2))) == |alpha| bitwise on `samples` values.
template <IeeeScalar S>
RoundtripReport check_sqrt_square_roundtrip(std::uint64_t samples, std::uint64_t seed) {
    RoundtripReport report;
    report.precision = ScalarTraits<S>::precision;
    report.samples = samples;
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const S alpha = sample_guarded_scalar<S>(rng);
        if (!sqrt_square_roundtrip(alpha)) {
            ++report.violations;
            if (!report.first_violation) report.first_violation = format_hex(alpha);
        }
    }
    return report;
}

}  // namespace exactkrylov
