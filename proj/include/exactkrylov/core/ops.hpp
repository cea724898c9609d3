// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "exactkrylov/core/dense.hpp"

// Every kernel below performs one correctly rounded IEEE operation per
// arithmetic step, sums strictly left to right starting from +0, and must be
// compiled without FMA contraction (-ffp-contract=off).
//
// Products with an exactly zero factor are skipped. A +0-started sequential
// sum never becomes -0, so adding a +-0 term is the identity and skipping it
// leaves the result bitwise unchanged.

namespace exactkrylov {

namespace detail {

template <class Entries>
void check_result(const Entries& xs, const char* op) {
    for (auto x : xs) {
        if (!std::isfinite(x)) throw NonFiniteValue(std::string(op) + ": non-finite result (overflow)");
    }
}

template <IeeeScalar S>
void require_same_size(const DenseVector<S>& x, const DenseVector<S>& y, const char* op) {
    if (x.size() != y.size()) {
        throw DimensionMismatch(std::string(op) + ": length " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
    }
}

}  // namespace detail

/// y = A x
template <IeeeScalar S>
DenseVector<S> matvec(const DenseMatrix<S>& A, const DenseVector<S>& x) {
    if (A.cols() != x.size()) {
        throw DimensionMismatch("matvec: A is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                ", x has length " + std::to_string(x.size()));
    }
    DenseVector<S> y(A.rows());
    for (std::size_t c = 0; c < A.cols(); ++c) {
        const S xc = x[c];
        if (xc == S(0)) continue;
        for (std::size_t r = 0; r < A.rows(); ++r) {
            const S a = A(r, c);
            if (a == S(0)) continue;
            y[r] = y[r] + a * xc;
        }
    }
    detail::check_result(y.entries(), "matvec");
    return y;
}

/// y = A^T x
template <IeeeScalar S>
DenseVector<S> matvec_transposed(const DenseMatrix<S>& A, const DenseVector<S>& x) {
    if (A.rows() != x.size()) {
        throw DimensionMismatch("matvec_transposed: A is " + std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()) + ", x has length " + std::to_string(x.size()));
    }
    DenseVector<S> y(A.cols());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        const S xr = x[r];
        if (xr == S(0)) continue;
        for (std::size_t c = 0; c < A.cols(); ++c) {
            const S a = A(r, c);
            if (a == S(0)) continue;
            y[c] = y[c] + a * xr;
        }
    }
    detail::check_result(y.entries(), "matvec_transposed");
    return y;
}

template <IeeeScalar S>
S dot(const DenseVector<S>& x, const DenseVector<S>& y) {
    detail::require_same_size(x, y, "dot");
    S acc = S(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == S(0) || y[i] == S(0)) continue;
        acc = acc + x[i] * y[i];
    }
    if (!std::isfinite(acc)) throw NonFiniteValue("dot: non-finite result (overflow)");
    return acc;
}

/// fl(sqrt(fl(sum fl(x_i^2)))), sequential.
template <IeeeScalar S>
S norm2(const DenseVector<S>& x) {
    S acc = S(0);
    for (S xi : x) {
        if (xi == S(0)) continue;
        acc = acc + xi * xi;
    }
    if (!std::isfinite(acc)) throw NonFiniteValue("norm2: sum of squares overflows");
    return std::sqrt(acc);
}

template <IeeeScalar S>
DenseVector<S> scaled(S alpha, const DenseVector<S>& x) {
    DenseVector<S> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i];
    detail::check_result(y.entries(), "scaled");
    return y;
}

template <IeeeScalar S>
DenseVector<S> divided(const DenseVector<S>& x, S alpha) {
    if (alpha == S(0)) throw PreconditionViolation("divided: division by zero");
    DenseVector<S> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / alpha;
    detail::check_result(y.entries(), "divided");
    return y;
}

/// x - y
template <IeeeScalar S>
DenseVector<S> difference(const DenseVector<S>& x, const DenseVector<S>& y) {
    detail::require_same_size(x, y, "difference");
    DenseVector<S> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    detail::check_result(z.entries(), "difference");
    return z;
}

/// x + y
template <IeeeScalar S>
DenseVector<S> sum(const DenseVector<S>& x, const DenseVector<S>& y) {
    detail::require_same_size(x, y, "sum");
    DenseVector<S> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    detail::check_result(z.entries(), "sum");
    return z;
}

/// Exact sign flip.
template <IeeeScalar S>
DenseVector<S> negated(const DenseVector<S>& x) {
    DenseVector<S> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    return z;
}

/// C = A B with sequential inner sums.
template <IeeeScalar S>
DenseMatrix<S> matmul(const DenseMatrix<S>& A, const DenseMatrix<S>& B) {
    if (A.cols() != B.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    DenseMatrix<S> C(A.rows(), B.cols());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const S a = A(r, k);
            if (a == S(0)) continue;
            for (std::size_t c = 0; c < B.cols(); ++c) {
                const S b = B(k, c);
                if (b == S(0)) continue;
                C(r, c) = C(r, c) + a * b;
            }
        }
    }
    detail::check_result(C.entries(), "matmul");
    return C;
}

template <IeeeScalar S>
S frobenius_norm(const DenseMatrix<S>& M) {
    S acc = S(0);
    for (S x : M.entries()) {
        if (x == S(0)) continue;
        acc = acc + x * x;
    }
    if (!std::isfinite(acc)) throw NonFiniteValue("frobenius_norm: overflow");
    return std::sqrt(acc);
}

}  // namespace exactkrylov
