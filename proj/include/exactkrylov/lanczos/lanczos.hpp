// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

enum class LanczosVariant {
    /// w = Av_i - beta_i v_{i-1}, alpha_i = w^T v_i, z = w - alpha_i v_i
    mgs,
    /// alpha_i = v_i^T (Av_i), z = Av_i - alpha_i v_i - beta_i v_{i-1}
    cgs,
};

enum class Reorthogonalization { none, full, twice };

std::string to_string(LanczosVariant v);
std::string to_string(Reorthogonalization r);
LanczosVariant parse_lanczos_variant(std::string_view text);
Reorthogonalization parse_reorthogonalization(std::string_view text);

template <IeeeScalar S>
struct LanczosResult {
    /// v_1 .. v_{steps+1}; the last vector is absent after a breakdown.
    std::vector<DenseVector<S>> basis;
    std::vector<S> alpha;
    /// beta_2 .. beta_{steps+1}; the last entry is +0 after a breakdown.
    std::vector<S> beta;
    /// 1-based step i at which beta_{i+1} = 0 stopped the loop.
    std::optional<std::size_t> breakdown;
    S beta1{};

    std::size_t steps() const noexcept { return alpha.size(); }
    S beta_next() const noexcept { return beta.empty() ? S(0) : beta.back(); }

    /// T_steps, built from the leading steps-1 off-diagonal coefficients.
    JacobiMatrix<S> tridiagonal() const {
        return JacobiMatrix<S>(alpha, std::vector<S>(beta.begin(), beta.begin() + (steps() == 0 ? 0 : steps() - 1)));
    }

    /// V_j = [v_1, ..., v_j]
    DenseMatrix<S> basis_matrix(std::size_t j) const {
        if (j > basis.size()) throw DimensionMismatch("LanczosResult: fewer basis vectors than requested");
        const std::size_t n = basis.empty() ? 0 : basis.front().size();
        return DenseMatrix<S>::from_columns(std::span<const DenseVector<S>>(basis.data(), j), n);
    }
};

namespace detail {

/// z <- z - (v_j^T z) v_j for every stored basis vector, in order.
template <IeeeScalar S>
void reorthogonalize(DenseVector<S>& z, const std::vector<DenseVector<S>>& basis) {
    for (const auto& vj : basis) z = difference(z, scaled(dot(vj, z), vj));
}

}  // namespace detail

/// Symmetric Lanczos process for k steps.
///
/// v_0 is the zero vector and beta_1 v_0 is evaluated like every later
/// term. The loop stops as soon as fl(||z||) = 0.
template <IeeeScalar S>
LanczosResult<S> lanczos(const DenseMatrix<S>& A, const DenseVector<S>& v, std::size_t k,
                         LanczosVariant variant = LanczosVariant::mgs,
                         Reorthogonalization reorth = Reorthogonalization::none) {
    if (!A.square() || A.rows() != v.size()) throw DimensionMismatch("lanczos: A and v sizes differ");
    if (!is_symmetric_bitwise(A)) throw PreconditionViolation("lanczos: A is not symmetric");
    const std::size_t n = v.size();
    if (k > n) throw PreconditionViolation("lanczos: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));

    LanczosResult<S> out;
    out.beta1 = norm2(v);
    if (out.beta1 == S(0)) throw PreconditionViolation("lanczos: starting vector is zero");
    out.basis.reserve(k + 1);
    out.alpha.reserve(k);
    out.beta.reserve(k);

    DenseVector<S> v_prev(n);
    out.basis.push_back(divided(v, out.beta1));
    S beta_i = out.beta1;

    for (std::size_t i = 1; i <= k; ++i) {
        const DenseVector<S>& vi = out.basis.back();
        const DenseVector<S> Av = matvec(A, vi);
        S alpha{};
        DenseVector<S> z;
        if (variant == LanczosVariant::mgs) {
            const DenseVector<S> w = difference(Av, scaled(beta_i, v_prev));
            alpha = dot(w, vi);
            z = difference(w, scaled(alpha, vi));
        } else {
            alpha = dot(vi, Av);
            z = difference(difference(Av, scaled(alpha, vi)), scaled(beta_i, v_prev));
        }
        if (reorth != Reorthogonalization::none) detail::reorthogonalize(z, out.basis);
        if (reorth == Reorthogonalization::twice) detail::reorthogonalize(z, out.basis);

        const S beta_next = norm2(z);
        out.alpha.push_back(alpha);
        out.beta.push_back(beta_next);
        if (beta_next == S(0)) {
            out.breakdown = i;
            break;
        }
        v_prev = vi;
        out.basis.push_back(divided(z, beta_next));
        beta_i = beta_next;
    }
    return out;
}

/// ||A V_k - V_k T_k - beta_{k+1} v_{k+1} e_k^T||_F in working precision.
template <IeeeScalar S>
S lanczos_residual(const DenseMatrix<S>& A, const LanczosResult<S>& result) {
    const std::size_t k = result.steps();
    if (k == 0) return S(0);
    if (A.cols() != result.basis.front().size()) throw DimensionMismatch("lanczos_residual: shape mismatch");
    DenseMatrix<S> R(A.rows(), k);
    for (std::size_t i = 0; i < k; ++i) {
        DenseVector<S> y = matvec(A, result.basis[i]);
        y = difference(y, scaled(result.alpha[i], result.basis[i]));
        if (i > 0) y = difference(y, scaled(result.beta[i - 1], result.basis[i - 1]));
        if (i + 1 < result.basis.size()) y = difference(y, scaled(result.beta[i], result.basis[i + 1]));
        for (std::size_t r = 0; r < y.size(); ++r) R(r, i) = y[r];
    }
    return frobenius_norm(R);
}

}  // namespace exactkrylov
