// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "exactkrylov/core/ops.hpp"

namespace exactkrylov {

/// ||V^T V - I||_F in working precision. Columns must have unit norm within 4nu.
template <IeeeScalar S>
S loss_of_orthogonality(const DenseMatrix<S>& V) {
    const double tol = 4.0 * static_cast<double>(V.rows()) * unit_roundoff<S>();
    for (std::size_t c = 0; c < V.cols(); ++c) {
        const double nrm = static_cast<double>(norm2(V.column(c)));
        if (std::fabs(nrm - 1.0) > tol) {
            throw PreconditionViolation("loss_of_orthogonality: column " + std::to_string(c) + " is not normalized");
        }
    }
    DenseMatrix<S> G = matmul(V.transposed(), V);
    for (std::size_t i = 0; i < G.rows(); ++i) G(i, i) = G(i, i) - S(1);
    return frobenius_norm(G);
}

/// ||P~^T A P~ - I||_F where every column of P is first scaled to unit A-norm.
template <IeeeScalar S>
S a_orthogonality_loss(const DenseMatrix<S>& P, const DenseMatrix<S>& A) {
    if (!A.square() || A.rows() != P.rows()) throw DimensionMismatch("a_orthogonality_loss: shapes differ");
    DenseMatrix<S> Pn(P.rows(), P.cols());
    for (std::size_t c = 0; c < P.cols(); ++c) {
        const DenseVector<S> p = P.column(c);
        const S pAp = dot(p, matvec(A, p));
        if (!(pAp > S(0))) {
            throw PreconditionViolation("a_orthogonality_loss: p^T A p <= 0 for column " + std::to_string(c));
        }
        const DenseVector<S> q = divided(p, std::sqrt(pAp));
        for (std::size_t r = 0; r < P.rows(); ++r) Pn(r, c) = q[r];
    }
    DenseMatrix<S> G = matmul(Pn.transposed(), matmul(A, Pn));
    for (std::size_t i = 0; i < G.rows(); ++i) G(i, i) = G(i, i) - S(1);
    return frobenius_norm(G);
}

}  // namespace exactkrylov
