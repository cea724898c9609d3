// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include "exactkrylov/core/dense.hpp"

namespace exactkrylov {

template <IeeeScalar S>
using BitsOf = std::conditional_t<std::same_as<S, double>, std::uint64_t, std::uint32_t>;

template <IeeeScalar S>
BitsOf<S> bits(S x) noexcept {
    return std::bit_cast<BitsOf<S>>(x);
}

/// Bit identity; +0 and -0 differ.
template <IeeeScalar S>
bool bitwise_equal(S a, S b) noexcept {
    return bits(a) == bits(b);
}

/// Location of the first differing entry (row-major order).
struct Mismatch {
    std::size_t row = 0;
    std::size_t col = 0;

    std::string describe() const { return "(" + std::to_string(row) + ", " + std::to_string(col) + ")"; }
};

template <IeeeScalar S>
std::optional<Mismatch> first_mismatch(const DenseVector<S>& a, const DenseVector<S>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("first_mismatch: vector lengths differ");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!bitwise_equal(a[i], b[i])) return Mismatch{i, 0};
    return std::nullopt;
}

template <IeeeScalar S>
std::optional<Mismatch> first_mismatch(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("first_mismatch: matrix shapes differ");
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!bitwise_equal(a(r, c), b(r, c))) return Mismatch{r, c};
    return std::nullopt;
}

template <IeeeScalar S>
bool bitwise_equal(const DenseVector<S>& a, const DenseVector<S>& b) {
    return !first_mismatch(a, b).has_value();
}

template <IeeeScalar S>
bool bitwise_equal(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    return !first_mismatch(a, b).has_value();
}

template <IeeeScalar S>
bool is_symmetric_bitwise(const DenseMatrix<S>& A) {
    if (!A.square()) return false;
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = r + 1; c < A.cols(); ++c)
            if (!bitwise_equal(A(r, c), A(c, r))) return false;
    return true;
}

/// Lemma-style check: fl(sqrt(fl(alpha^2))) == |alpha| bitwise.
/// Throws PreconditionViolation when alpha^2 leaves the normal range.
template <IeeeScalar S>
bool sqrt_square_roundtrip(S alpha) {
    require_finite(alpha, "sqrt_square_roundtrip");
    if (!square_in_range(alpha)) {
        throw PreconditionViolation("sqrt_square_roundtrip: alpha^2 outside the normal exponent range");
    }
    const S sq = alpha * alpha;
    return bitwise_equal(std::sqrt(sq), std::fabs(alpha));
}

}  // namespace exactkrylov
