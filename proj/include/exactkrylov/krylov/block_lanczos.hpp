// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/krylov/structures.hpp"

namespace exactkrylov {

enum class GramSchmidt { cgs, mgs };

std::string to_string(GramSchmidt g);
GramSchmidt parse_gram_schmidt(std::string_view text);

template <IeeeScalar S>
struct ThinQR {
    DenseMatrix<S> Q;
    DenseMatrix<S> R;
    /// 0-based column whose Gram-Schmidt pivot vanished.
    std::optional<std::size_t> zero_pivot;
};

/// Gram-Schmidt QR of an n x p matrix; R has a nonnegative diagonal and
/// stops at the first zero pivot.
template <IeeeScalar S>
ThinQR<S> gram_schmidt_qr(const DenseMatrix<S>& X, GramSchmidt variant) {
    const std::size_t n = X.rows(), p = X.cols();
    ThinQR<S> out{DenseMatrix<S>(n, p), DenseMatrix<S>(p, p), std::nullopt};
    std::vector<DenseVector<S>> q;
    for (std::size_t c = 0; c < p; ++c) {
        const DenseVector<S> a = X.column(c);
        DenseVector<S> w = a;
        if (variant == GramSchmidt::cgs) {
            std::vector<S> coeff(c);
            for (std::size_t j = 0; j < c; ++j) coeff[j] = dot(q[j], a);
            for (std::size_t j = 0; j < c; ++j) {
                out.R(j, c) = coeff[j];
                w = difference(w, scaled(coeff[j], q[j]));
            }
        } else {
            for (std::size_t j = 0; j < c; ++j) {
                out.R(j, c) = dot(q[j], w);
                w = difference(w, scaled(out.R(j, c), q[j]));
            }
        }
        const S nrm = norm2(w);
        out.R(c, c) = nrm;
        if (nrm == S(0)) {
            out.zero_pivot = c;
            return out;
        }
        q.push_back(divided(w, nrm));
        for (std::size_t r = 0; r < n; ++r) out.Q(r, c) = q.back()[r];
    }
    return out;
}

template <IeeeScalar S>
struct BlockLanczosResult {
    /// U_1 .. U_{steps+1}; the last block is absent after a breakdown.
    std::vector<DenseMatrix<S>> U;
    /// M_1 .. M_steps
    std::vector<DenseMatrix<S>> M;
    /// B_2 .. B_{steps+1}; the last block is the partial R factor after a breakdown.
    std::vector<DenseMatrix<S>> B;
    /// 1-based step i at which the QR of R_{i+1} hit a zero pivot.
    std::optional<std::size_t> breakdown;

    std::size_t steps() const noexcept { return M.size(); }

    /// Dense T_j assembled from M_1..M_j and B_2..B_j.
    DenseMatrix<S> projected(std::size_t j) const {
        if (j > steps()) throw DimensionMismatch("BlockLanczosResult: fewer steps than requested");
        const std::size_t p = M.empty() ? 0 : M.front().rows();
        DenseMatrix<S> T(j * p, j * p);
        for (std::size_t b = 0; b < j; ++b)
            for (std::size_t r = 0; r < p; ++r)
                for (std::size_t c = 0; c < p; ++c) {
                    T(b * p + r, b * p + c) = M[b](r, c);
                    if (b + 1 < j) {
                        T((b + 1) * p + r, b * p + c) = B[b](r, c);
                        T(b * p + c, (b + 1) * p + r) = B[b](r, c);
                    }
                }
        return T;
    }
};

/// Block Lanczos: U_0 = U_1, B_1 = 0, M_1 = U_1^T A U_1, and for each step
/// R_{i+1} = A U_i - U_i M_i - U_{i-1} B_i^T = U_{i+1} B_{i+1} (Gram-Schmidt QR),
/// M_{i+1} = U_{i+1}^T A U_{i+1}.
template <IeeeScalar S>
BlockLanczosResult<S> block_lanczos(const DenseMatrix<S>& A, const DenseMatrix<S>& U1, std::size_t k,
                                    GramSchmidt variant = GramSchmidt::mgs) {
    if (!A.square() || A.rows() != U1.rows()) throw DimensionMismatch("block_lanczos: A and U1 sizes differ");
    const std::size_t n = A.rows(), p = U1.cols();
    if (p == 0 || n % p != 0) throw PreconditionViolation("block_lanczos: block size must divide n");
    if (k > n / p) throw PreconditionViolation("block_lanczos: k exceeds the number of blocks");
    const DenseMatrix<S> G = matmul(U1.transposed(), U1);
    const DenseMatrix<S> I = DenseMatrix<S>::identity(p);
    const double tol = 4.0 * static_cast<double>(n) * unit_roundoff<S>();
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < p; ++c) {
            if (std::fabs(static_cast<double>(G(r, c)) - static_cast<double>(I(r, c))) > tol) {
                throw PreconditionViolation("block_lanczos: U1 does not have orthonormal columns");
            }
        }

    BlockLanczosResult<S> out;
    out.U.push_back(U1);
    DenseMatrix<S> AU = matmul(A, U1);
    out.M.push_back(matmul(U1.transposed(), AU));
    DenseMatrix<S> U_prev = U1;
    DenseMatrix<S> B_i(p, p);
    for (std::size_t i = 1; i <= k; ++i) {
        const DenseMatrix<S>& Ui = out.U.back();
        const DenseMatrix<S> UM = matmul(Ui, out.M.back());
        const DenseMatrix<S> UB = matmul(U_prev, B_i.transposed());
        DenseMatrix<S> R(n, p);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < p; ++c) R(r, c) = (AU(r, c) - UM(r, c)) - UB(r, c);
        ThinQR<S> qr = gram_schmidt_qr(R, variant);
        out.B.push_back(qr.R);
        if (qr.zero_pivot) {
            out.breakdown = i;
            break;
        }
        if (i == k) {
            out.U.push_back(std::move(qr.Q));
            break;
        }
        U_prev = Ui;
        B_i = qr.R;
        out.U.push_back(std::move(qr.Q));
        AU = matmul(A, out.U.back());
        out.M.push_back(matmul(out.U.back().transposed(), AU));
    }
    return out;
}

}  // namespace exactkrylov
