// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

/// Number of eigenvalues of T strictly below x (Sturm sequence via the
/// LDL^T pivots of T - xI, evaluated in binary64).
template <IeeeScalar S>
std::size_t sturm_count(const JacobiMatrix<S>& T, double x) {
    const auto& a = T.alpha();
    const auto& b = T.beta();
    double max_b2 = 1.0;
    for (S bj : b) max_b2 = std::max(max_b2, static_cast<double>(bj) * static_cast<double>(bj));
    const double pivmin = std::numeric_limits<double>::min() * max_b2;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double next = static_cast<double>(a[i]) - x;
        if (i > 0) {
            const double bi = static_cast<double>(b[i - 1]);
            next = next - bi * bi / q;
        }
        // A zero pivot is replaced by a tiny negative one.
        if (std::fabs(next) < pivmin) next = -pivmin;
        if (next < 0.0) ++count;
        q = next;
    }
    return count;
}

/// Gershgorin interval [lo, hi] containing the spectrum of T.
template <IeeeScalar S>
std::pair<double, double> gershgorin_bounds(const JacobiMatrix<S>& T) {
    const auto& a = T.alpha();
    const auto& b = T.beta();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += static_cast<double>(b[i - 1]);
        if (i + 1 < a.size()) r += static_cast<double>(b[i]);
        lo = std::min(lo, static_cast<double>(a[i]) - r);
        hi = std::max(hi, static_cast<double>(a[i]) + r);
    }
    return {lo, hi};
}

/// k-th smallest eigenvalue (0-based) by bisection down to adjacent doubles.
template <IeeeScalar S>
double jacobi_eigenvalue(const JacobiMatrix<S>& T, std::size_t k) {
    if (k >= T.size()) throw DimensionMismatch("jacobi_eigenvalue: index out of range");
    auto [lo, hi] = gershgorin_bounds(T);
    const double pad = std::max(std::fabs(lo), std::fabs(hi)) * 1e-12 + std::numeric_limits<double>::min();
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 4096; ++it) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(T, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return lo + (hi - lo) / 2;
}

/// All eigenvalues, increasing.
template <IeeeScalar S>
std::vector<double> jacobi_eigenvalues(const JacobiMatrix<S>& T) {
    std::vector<double> out(T.size());
    for (std::size_t k = 0; k < T.size(); ++k) out[k] = jacobi_eigenvalue(T, k);
    return out;
}

/// lambda_max / lambda_min for a positive definite Jacobi matrix.
template <IeeeScalar S>
double jacobi_condition_number(const JacobiMatrix<S>& T) {
    if (T.size() == 0) throw PreconditionViolation("jacobi_condition_number: empty matrix");
    const double lmin = jacobi_eigenvalue(T, 0);
    const double lmax = jacobi_eigenvalue(T, T.size() - 1);
    if (!(lmin > 0.0)) throw PreconditionViolation("jacobi_condition_number: matrix is not positive definite");
    return lmax / lmin;
}

}  // namespace exactkrylov
