// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "exactkrylov/core/dense.hpp"

// Exact rational linear algebra used as an oracle. Every finite binary64 or
// binary32 value is a dyadic rational, so conversion into this layer is exact.

namespace exactkrylov {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Rational& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Rational to_rational(double x);

template <IeeeScalar S>
RationalVector to_rational(const DenseVector<S>& x) {
    RationalVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = to_rational(static_cast<double>(x[i]));
    return out;
}

template <IeeeScalar S>
RationalMatrix to_rational(const DenseMatrix<S>& A) {
    RationalMatrix out(A.rows(), A.cols());
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = to_rational(static_cast<double>(A(r, c)));
    return out;
}

/// Nearest binary64 value (round to nearest even).
double to_double(const Rational& q);

RationalVector matvec(const RationalMatrix& A, const RationalVector& x);
Rational dot(const RationalVector& x, const RationalVector& y);
RationalVector difference(const RationalVector& x, const RationalVector& y);

/// x^T A x
Rational energy(const RationalMatrix& A, const RationalVector& x);

bool is_symmetric(const RationalMatrix& A);

/// Solves A x = b for symmetric positive definite A by fraction-free
/// (Bareiss) elimination without pivoting. Positive definiteness is checked
/// through the signs of the leading principal minors; throws
/// PreconditionViolation otherwise.
RationalVector solve_spd_exact(const RationalMatrix& A, const RationalVector& b);

}  // namespace exactkrylov
