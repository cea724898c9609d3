// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/krylov/structures.hpp"

namespace exactkrylov {

template <IeeeScalar S>
struct NonsymLanczosResult {
    /// v_1 .. v_{steps+1} and w_1 .. w_{steps+1}; the last pair is absent after a breakdown.
    std::vector<DenseVector<S>> v_basis, w_basis;
    std::vector<S> alpha;
    /// beta_2 .. beta_{steps+1} (superdiagonal, from the w recurrence)
    std::vector<S> beta;
    /// gamma_2 .. gamma_{steps+1} (subdiagonal, from the v recurrence)
    std::vector<S> gamma;
    S gamma1{};
    S beta1{};
    /// 1-based step i at which gamma_{i+1} = 0 stopped the loop (lucky breakdown).
    std::optional<std::size_t> breakdown;

    std::size_t steps() const noexcept { return alpha.size(); }

    NonsymTridiagonal<S> tridiagonal() const {
        const std::size_t off = steps() == 0 ? 0 : steps() - 1;
        return NonsymTridiagonal<S>(alpha, std::vector<S>(beta.begin(), beta.begin() + off),
                                    std::vector<S>(gamma.begin(), gamma.begin() + off));
    }
};

/// Two-sided Lanczos biorthogonalization.
///
/// Stops on gamma_{i+1} = 0. A zero beta_{i+1} with a nonzero v-residual is a
/// serious breakdown and raises SeriousBreakdown.
template <IeeeScalar S>
NonsymLanczosResult<S> nonsym_lanczos(const DenseMatrix<S>& A, const DenseVector<S>& v, const DenseVector<S>& w,
                                      std::size_t k) {
    if (!A.square() || A.rows() != v.size() || v.size() != w.size()) {
        throw DimensionMismatch("nonsym_lanczos: A, v and w sizes differ");
    }
    const std::size_t n = v.size();
    if (k > n) throw PreconditionViolation("nonsym_lanczos: k exceeds n");
    NonsymLanczosResult<S> out;
    out.gamma1 = norm2(v);
    if (out.gamma1 == S(0)) throw PreconditionViolation("nonsym_lanczos: v is zero");
    out.v_basis.push_back(divided(v, out.gamma1));
    out.beta1 = dot(w, out.v_basis.front());
    if (out.beta1 == S(0)) throw PreconditionViolation("nonsym_lanczos: w^T v_1 = 0");
    out.w_basis.push_back(divided(w, out.beta1));

    DenseVector<S> v_prev(n), w_prev(n);
    S beta_i = out.beta1, gamma_i = out.gamma1;
    for (std::size_t i = 1; i <= k; ++i) {
        const DenseVector<S>& vi = out.v_basis.back();
        const DenseVector<S>& wi = out.w_basis.back();
        const DenseVector<S> Av = matvec(A, vi);
        const S alpha = dot(wi, Av);
        const DenseVector<S> vhat = difference(difference(Av, scaled(alpha, vi)), scaled(beta_i, v_prev));
        const S gamma_next = norm2(vhat);
        out.alpha.push_back(alpha);
        out.gamma.push_back(gamma_next);
        if (gamma_next == S(0)) {
            out.beta.push_back(S(0));
            out.breakdown = i;
            break;
        }
        DenseVector<S> v_next = divided(vhat, gamma_next);
        const DenseVector<S> what =
            difference(difference(matvec_transposed(A, wi), scaled(alpha, wi)), scaled(gamma_i, w_prev));
        const S beta_next = dot(v_next, what);
        out.beta.push_back(beta_next);
        if (beta_next == S(0)) {
            throw SeriousBreakdown("nonsym_lanczos: serious breakdown, beta_" + std::to_string(i + 1) + " = 0");
        }
        v_prev = vi;
        w_prev = wi;
        out.v_basis.push_back(std::move(v_next));
        out.w_basis.push_back(divided(what, beta_next));
        beta_i = beta_next;
        gamma_i = gamma_next;
    }
    return out;
}

}  // namespace exactkrylov
