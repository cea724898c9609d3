// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/ops.hpp"

namespace exactkrylov {

template <IeeeScalar S>
struct ArnoldiResult {
    /// v_1 .. v_{steps+1}; the last vector is absent after a breakdown.
    std::vector<DenseVector<S>> basis;
    /// H_{steps+1,steps}; row steps+1 holds h_{steps+1,steps} (+0 after a breakdown).
    DenseMatrix<S> H;
    /// 1-based step j at which h_{j+1,j} = 0 stopped the loop.
    std::optional<std::size_t> breakdown;
    S beta1{};

    std::size_t steps() const noexcept { return H.cols(); }

    /// Square leading block H_j.
    DenseMatrix<S> hessenberg(std::size_t j) const {
        if (j > steps()) throw DimensionMismatch("ArnoldiResult: fewer steps than requested");
        DenseMatrix<S> h(j, j);
        for (std::size_t r = 0; r < j; ++r)
            for (std::size_t c = 0; c < j; ++c) h(r, c) = H(r, c);
        return h;
    }

    /// Rectangular H_{j+1,j}.
    DenseMatrix<S> extended_hessenberg(std::size_t j) const {
        if (j > steps()) throw DimensionMismatch("ArnoldiResult: fewer steps than requested");
        DenseMatrix<S> h(j + 1, j);
        for (std::size_t r = 0; r <= j; ++r)
            for (std::size_t c = 0; c < j; ++c) h(r, c) = H(r, c);
        return h;
    }

    DenseMatrix<S> basis_matrix(std::size_t j) const {
        if (j > basis.size()) throw DimensionMismatch("ArnoldiResult: fewer basis vectors than requested");
        return DenseMatrix<S>::from_columns(std::span<const DenseVector<S>>(basis.data(), j), basis.front().size());
    }
};

/// Arnoldi process with modified Gram-Schmidt; w is updated in place.
template <IeeeScalar S>
ArnoldiResult<S> arnoldi(const DenseMatrix<S>& A, const DenseVector<S>& v, std::size_t k) {
    if (!A.square() || A.rows() != v.size()) throw DimensionMismatch("arnoldi: A and v sizes differ");
    const std::size_t n = v.size();
    if (k > n) throw PreconditionViolation("arnoldi: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    ArnoldiResult<S> out;
    out.beta1 = norm2(v);
    if (out.beta1 == S(0)) throw PreconditionViolation("arnoldi: starting vector is zero");
    out.basis.push_back(divided(v, out.beta1));

    std::vector<std::vector<S>> cols;
    for (std::size_t j = 1; j <= k; ++j) {
        DenseVector<S> w = matvec(A, out.basis[j - 1]);
        std::vector<S> h(j + 1, S(0));
        for (std::size_t i = 1; i <= j; ++i) {
            h[i - 1] = dot(out.basis[i - 1], w);
            w = difference(w, scaled(h[i - 1], out.basis[i - 1]));
        }
        h[j] = norm2(w);
        cols.push_back(std::move(h));
        if (cols.back()[j] == S(0)) {
            out.breakdown = j;
            break;
        }
        out.basis.push_back(divided(w, cols.back()[j]));
    }
    out.H = DenseMatrix<S>(cols.size() + 1, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) out.H(r, c) = cols[c][r];
    return out;
}

/// ||A V_k - V_{k+1} H_{k+1,k}||_F (the last basis term is dropped after a breakdown).
template <IeeeScalar S>
S arnoldi_residual(const DenseMatrix<S>& A, const ArnoldiResult<S>& res) {
    const std::size_t k = res.steps();
    DenseMatrix<S> R(A.rows(), k);
    for (std::size_t j = 0; j < k; ++j) {
        DenseVector<S> y = matvec(A, res.basis[j]);
        for (std::size_t i = 0; i <= j + 1 && i < res.basis.size(); ++i) {
            y = difference(y, scaled(res.H(i, j), res.basis[i]));
        }
        for (std::size_t r = 0; r < y.size(); ++r) R(r, j) = y[r];
    }
    return frobenius_norm(R);
}

}  // namespace exactkrylov
