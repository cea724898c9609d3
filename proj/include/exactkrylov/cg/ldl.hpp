// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "exactkrylov/core/dense.hpp"
#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

/// T = L D L^T with L unit lower bidiagonal (subdiagonal `ell`) and D = diag(d).
template <IeeeScalar S>
struct LDLFactors {
    std::vector<S> d;
    std::vector<S> ell;
};

/// d_1 = alpha_1, ell_j = beta_{j+1} / d_j, d_{j+1} = alpha_{j+1} - beta_{j+1} ell_j.
template <IeeeScalar S>
LDLFactors<S> ldl(const JacobiMatrix<S>& T) {
    const auto& a = T.alpha();
    const auto& b = T.beta();
    LDLFactors<S> f;
    if (a.empty()) return f;
    f.d.reserve(a.size());
    f.ell.reserve(b.size());
    f.d.push_back(a[0]);
    for (std::size_t j = 0;; ++j) {
        if (!(f.d[j] > S(0))) {
            throw PreconditionViolation("ldl: nonpositive pivot d_" + std::to_string(j + 1));
        }
        if (j + 1 == a.size()) break;
        const S l = b[j] / f.d[j];
        f.ell.push_back(l);
        f.d.push_back(a[j + 1] - b[j] * l);
    }
    return f;
}

/// Solves T y = rhs * e_1 by forward substitution with L, scaling by D^{-1},
/// and back substitution with L^T.
template <IeeeScalar S>
DenseVector<S> ldl_solve_e1(const LDLFactors<S>& f, S rhs) {
    const std::size_t k = f.d.size();
    DenseVector<S> y(k);
    if (k == 0) return y;
    std::vector<S> z(k);
    z[0] = rhs;
    for (std::size_t j = 1; j < k; ++j) z[j] = -(f.ell[j - 1] * z[j - 1]);
    for (std::size_t j = 0; j < k; ++j) z[j] = z[j] / f.d[j];
    y[k - 1] = z[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) y[j] = z[j] - f.ell[j] * y[j + 1];
    for (S yj : y) require_finite(yj, "ldl_solve_e1");
    return y;
}

/// L D L^T assembled entrywise (for backward-error checks).
template <IeeeScalar S>
DenseMatrix<S> ldl_reconstruct(const LDLFactors<S>& f) {
    const std::size_t k = f.d.size();
    DenseMatrix<S> M(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        M(j, j) = j == 0 ? f.d[0] : f.d[j] + f.ell[j - 1] * f.ell[j - 1] * f.d[j - 1];
        if (j + 1 < k) {
            M(j + 1, j) = f.ell[j] * f.d[j];
            M(j, j + 1) = M(j + 1, j);
        }
    }
    return M;
}

/// CG coefficients to Lanczos coefficients:
/// alpha_k = 1/gamma_{k-1} + delta_{k-1}/gamma_{k-2}, beta_{k+1} = sqrt(delta_k)/gamma_{k-1},
/// with delta_0 = 0 and gamma_{-1} = 1.
///
/// `gammas` holds gamma_0 .. gamma_{k-1}; `deltas` holds delta_1 .. delta_m with
/// m = k-1 or k. The returned betas are beta_2 .. beta_{m+1}.
template <IeeeScalar S>
std::pair<std::vector<S>, std::vector<S>> coeffs_cg_to_lanczos(const std::vector<S>& gammas,
                                                              const std::vector<S>& deltas) {
    const std::size_t k = gammas.size();
    if (!(deltas.size() + 1 == k || deltas.size() == k)) {
        throw DimensionMismatch("coeffs_cg_to_lanczos: need k gammas and k-1 or k deltas");
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (!(gammas[j] > S(0))) throw PreconditionViolation("coeffs_cg_to_lanczos: gamma_" + std::to_string(j) + " <= 0");
    }
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (!(deltas[j] >= S(0))) throw PreconditionViolation("coeffs_cg_to_lanczos: negative delta");
    }
    std::vector<S> alphas(k), betas(deltas.size());
    for (std::size_t j = 0; j < k; ++j) {
        const S delta_prev = j == 0 ? S(0) : deltas[j - 1];
        const S gamma_prev = j == 0 ? S(1) : gammas[j - 1];
        alphas[j] = S(1) / gammas[j] + delta_prev / gamma_prev;
    }
    for (std::size_t j = 0; j < deltas.size(); ++j) betas[j] = std::sqrt(deltas[j]) / gammas[j];
    return {std::move(alphas), std::move(betas)};
}

/// Inverse map through the LDL^T factors: gamma_{j-1} = 1/d_j, delta_j = ell_j^2.
template <IeeeScalar S>
std::pair<std::vector<S>, std::vector<S>> coeffs_lanczos_to_cg(const JacobiMatrix<S>& T) {
    const LDLFactors<S> f = ldl(T);
    std::vector<S> gammas(f.d.size()), deltas(f.ell.size());
    for (std::size_t j = 0; j < f.d.size(); ++j) gammas[j] = S(1) / f.d[j];
    for (std::size_t j = 0; j < f.ell.size(); ++j) deltas[j] = f.ell[j] * f.ell[j];
    return {std::move(gammas), std::move(deltas)};
}

}  // namespace exactkrylov
