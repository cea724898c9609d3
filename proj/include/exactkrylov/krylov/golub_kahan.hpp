// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/krylov/structures.hpp"

namespace exactkrylov {

/// Which normalization coefficient vanished, and its 1-based index.
struct BidiagBreakdown {
    enum class Coefficient { gamma, delta } coefficient;
    std::size_t index = 0;

    friend bool operator==(const BidiagBreakdown&, const BidiagBreakdown&) = default;
};

template <IeeeScalar S>
struct GolubKahanResult {
    /// s_1 .. s_{k+1} (length n) and w_1 .. w_k (length m), truncated at a breakdown.
    std::vector<DenseVector<S>> s_basis, w_basis;
    /// gamma_1 .. gamma_k
    std::vector<S> gamma;
    /// delta_1 .. delta_{k+1}; delta_1 = ||v||.
    std::vector<S> delta;
    std::optional<BidiagBreakdown> breakdown;

    /// Number of completed w vectors.
    std::size_t steps() const noexcept { return w_basis.size(); }

    /// L_j with diagonal gamma_1..gamma_j and subdiagonal delta_2..delta_j.
    LowerBidiagonal<S> bidiagonal(std::size_t j) const {
        if (j > steps()) throw DimensionMismatch("GolubKahanResult: fewer steps than requested");
        return LowerBidiagonal<S>(std::vector<S>(gamma.begin(), gamma.begin() + j),
                                  std::vector<S>(delta.begin() + 1, delta.begin() + (j == 0 ? 1 : j)));
    }
};

/// Golub-Kahan bidiagonalization of a rectangular A (n x m) from v.
template <IeeeScalar S>
GolubKahanResult<S> golub_kahan(const DenseMatrix<S>& A, const DenseVector<S>& v, std::size_t k) {
    if (A.rows() != v.size()) throw DimensionMismatch("golub_kahan: A and v sizes differ");
    if (k > std::min(A.rows(), A.cols())) throw PreconditionViolation("golub_kahan: k exceeds min(n, m)");
    GolubKahanResult<S> out;
    const S delta1 = norm2(v);
    if (delta1 == S(0)) throw PreconditionViolation("golub_kahan: v is zero");
    out.delta.push_back(delta1);
    out.s_basis.push_back(divided(v, delta1));
    DenseVector<S> w_prev(A.cols());
    for (std::size_t i = 1; i <= k; ++i) {
        const DenseVector<S>& si = out.s_basis.back();
        const DenseVector<S> what = difference(matvec_transposed(A, si), scaled(out.delta.back(), w_prev));
        const S g = norm2(what);
        out.gamma.push_back(g);
        if (g == S(0)) {
            out.breakdown = BidiagBreakdown{BidiagBreakdown::Coefficient::gamma, i};
            break;
        }
        out.w_basis.push_back(divided(what, g));
        const DenseVector<S> shat = difference(matvec(A, out.w_basis.back()), scaled(g, si));
        const S d = norm2(shat);
        out.delta.push_back(d);
        if (d == S(0)) {
            out.breakdown = BidiagBreakdown{BidiagBreakdown::Coefficient::delta, i + 1};
            break;
        }
        w_prev = out.w_basis.back();
        out.s_basis.push_back(divided(shat, d));
    }
    return out;
}

/// ||A^T S_k - W_k L_k^T||_F with k = steps().
template <IeeeScalar S>
S golub_kahan_residual_transposed(const DenseMatrix<S>& A, const GolubKahanResult<S>& res) {
    const std::size_t k = res.steps();
    DenseMatrix<S> R(A.cols(), k);
    for (std::size_t i = 0; i < k; ++i) {
        // column i of W L^T is delta_i w_{i-1} + gamma_i w_i
        DenseVector<S> y = matvec_transposed(A, res.s_basis[i]);
        if (i > 0) y = difference(y, scaled(res.delta[i], res.w_basis[i - 1]));
        y = difference(y, scaled(res.gamma[i], res.w_basis[i]));
        for (std::size_t r = 0; r < y.size(); ++r) R(r, i) = y[r];
    }
    return frobenius_norm(R);
}

/// ||A W_k - S_k L_k - delta_{k+1} s_{k+1} e_k^T||_F with k = steps().
template <IeeeScalar S>
S golub_kahan_residual(const DenseMatrix<S>& A, const GolubKahanResult<S>& res) {
    const std::size_t k = res.steps();
    DenseMatrix<S> R(A.rows(), k);
    for (std::size_t i = 0; i < k; ++i) {
        DenseVector<S> y = matvec(A, res.w_basis[i]);
        y = difference(y, scaled(res.gamma[i], res.s_basis[i]));
        if (i + 1 < res.s_basis.size()) y = difference(y, scaled(res.delta[i + 1], res.s_basis[i + 1]));
        for (std::size_t r = 0; r < y.size(); ++r) R(r, i) = y[r];
    }
    return frobenius_norm(R);
}

}  // namespace exactkrylov
