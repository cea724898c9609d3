// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "exactkrylov/core/rational.hpp"
#include "exactkrylov/krylov/arnoldi.hpp"

namespace exactkrylov {

/// Least-squares solution of min ||H y - beta e_1|| for an (k+1) x k upper
/// Hessenberg H, by Givens rotations and back substitution.
template <IeeeScalar S>
DenseVector<S> hessenberg_least_squares(const DenseMatrix<S>& H, S beta) {
    const std::size_t k = H.cols();
    if (H.rows() != k + 1) throw DimensionMismatch("hessenberg_least_squares: H must be (k+1) x k");
    DenseMatrix<S> R = H;
    std::vector<S> g(k + 1, S(0));
    g[0] = beta;
    for (std::size_t j = 0; j < k; ++j) {
        const S a = R(j, j), b = R(j + 1, j);
        if (b == S(0)) continue;
        const S r = std::hypot(a, b);
        const S c = a / r, s = b / r;
        for (std::size_t col = j; col < k; ++col) {
            const S top = R(j, col), bottom = R(j + 1, col);
            R(j, col) = c * top + s * bottom;
            R(j + 1, col) = c * bottom - s * top;
        }
        const S top = g[j], bottom = g[j + 1];
        g[j] = c * top + s * bottom;
        g[j + 1] = c * bottom - s * top;
    }
    DenseVector<S> y(k);
    for (std::size_t i = k; i-- > 0;) {
        S acc = g[i];
        for (std::size_t c = i + 1; c < k; ++c) acc = acc - R(i, c) * y[c];
        if (R(i, i) == S(0)) throw PreconditionViolation("hessenberg_least_squares: H is rank deficient");
        y[i] = acc / R(i, i);
    }
    for (S yi : y) require_finite(yi, "hessenberg_least_squares");
    return y;
}

/// Exact minimizer of ||H y - e_1|| through the normal equations (H^T H) y = H^T e_1.
template <IeeeScalar S>
RationalVector hessenberg_least_squares_exact(const DenseMatrix<S>& H) {
    const std::size_t k = H.cols();
    const RationalMatrix Hq = to_rational(H);
    RationalMatrix N(k, k);
    RationalVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = Hq(0, i);
        for (std::size_t j = 0; j < k; ++j) {
            Rational acc = 0;
            for (std::size_t r = 0; r < H.rows(); ++r) acc += Hq(r, i) * Hq(r, j);
            N(i, j) = acc;
        }
    }
    return solve_spd_exact(N, rhs);
}

template <IeeeScalar S>
struct GmresResult {
    DenseVector<S> x_bar;
    DenseVector<S> y_bar;
    RationalVector x_exact;
    RationalVector y_exact;
    std::size_t steps = 0;
    bool breakdown = false;
    /// ||x_k - x_bar_k|| and ||y_k - y_bar_k||, each from an exact squared norm
    /// rounded once and square-rooted.
    double x_error = 0.0;
    double y_error = 0.0;
};

/// k GMRES steps from x_0 = 0 on A x = v with ||v|| = 1.
template <IeeeScalar S>
GmresResult<S> gmres_structured(const DenseMatrix<S>& A, const DenseVector<S>& v, std::size_t k) {
    if (k == 0) throw PreconditionViolation("gmres_structured: k must be positive");
    const double tol = 4.0 * static_cast<double>(v.size()) * unit_roundoff<S>();
    if (std::fabs(static_cast<double>(norm2(v)) - 1.0) > tol) {
        throw PreconditionViolation("gmres_structured: v must have unit norm");
    }
    const ArnoldiResult<S> ar = arnoldi(A, v, k);
    GmresResult<S> out;
    out.steps = ar.steps();
    out.breakdown = ar.breakdown.has_value() && *ar.breakdown < k;
    const DenseMatrix<S> H = ar.extended_hessenberg(out.steps);
    const DenseMatrix<S> V = ar.basis_matrix(out.steps);
    out.y_bar = hessenberg_least_squares(H, S(1));
    out.x_bar = matvec(V, out.y_bar);

    out.y_exact = hessenberg_least_squares_exact(H);
    out.x_exact = matvec(to_rational(V), out.y_exact);
    const auto err = [](const RationalVector& exact, const DenseVector<S>& computed) {
        const RationalVector diff = difference(exact, to_rational(computed));
        return std::sqrt(to_double(dot(diff, diff)));
    };
    out.x_error = err(out.x_exact, out.x_bar);
    out.y_error = err(out.y_exact, out.y_bar);
    return out;
}

}  // namespace exactkrylov
