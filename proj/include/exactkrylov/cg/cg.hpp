// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/cg/ldl.hpp"
#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"

namespace exactkrylov {

/// Iterates of a CG run. Index k of x, r, p, rho is iteration k (k = 0 is the
/// initial state); gamma[k] is gamma_k and delta[k] is delta_{k+1}.
template <IeeeScalar S>
struct CGTrace {
    std::vector<DenseVector<S>> x, r, p;
    std::vector<S> gamma, delta;
    /// ||r_k||; for cgLanczos this is rho_k = ell_k rho_{k-1}.
    std::vector<S> rho;

    // cgLanczos only
    std::vector<S> d, ell;
    LanczosResult<S> lanczos;
    /// Set when beta_{k+1} = 0 ended the run: x is then the exact-Krylov solution.
    bool exact_termination = false;

    std::size_t iterations() const noexcept { return x.empty() ? 0 : x.size() - 1; }

    /// [p_0, ..., p_{j-1}]
    DenseMatrix<S> directions(std::size_t j) const {
        if (j > p.size()) throw DimensionMismatch("CGTrace: fewer directions than requested");
        const std::size_t n = p.empty() ? 0 : p.front().size();
        return DenseMatrix<S>::from_columns(std::span<const DenseVector<S>>(p.data(), j), n);
    }
};

/// Hestenes-Stiefel conjugate gradients.
template <IeeeScalar S>
CGTrace<S> cg_hs(const DenseMatrix<S>& A, const DenseVector<S>& b, const DenseVector<S>& x0, std::size_t kmax) {
    if (!A.square() || A.rows() != b.size() || b.size() != x0.size()) throw DimensionMismatch("cg_hs: shapes differ");
    if (kmax > b.size()) throw PreconditionViolation("cg_hs: kmax exceeds n");
    CGTrace<S> t;
    DenseVector<S> r = difference(b, matvec(A, x0));
    DenseVector<S> p = r;
    DenseVector<S> x = x0;
    S rr = dot(r, r);
    t.x.push_back(x);
    t.r.push_back(r);
    t.p.push_back(p);
    t.rho.push_back(std::sqrt(rr));
    for (std::size_t k = 1; k <= kmax && rr != S(0); ++k) {
        const DenseVector<S> Ap = matvec(A, p);
        const S pAp = dot(p, Ap);
        if (!(pAp > S(0))) {
            throw PreconditionViolation("cg_hs: p^T A p <= 0 at iteration " + std::to_string(k) +
                                        " (A is not numerically positive definite)");
        }
        const S gamma = rr / pAp;
        x = sum(x, scaled(gamma, p));
        r = difference(r, scaled(gamma, Ap));
        const S rr_new = dot(r, r);
        const S delta = rr_new / rr;
        p = sum(r, scaled(delta, p));
        rr = rr_new;
        t.gamma.push_back(gamma);
        t.delta.push_back(delta);
        t.x.push_back(x);
        t.r.push_back(r);
        t.p.push_back(p);
        t.rho.push_back(std::sqrt(rr));
    }
    return t;
}

/// cgLanczos: Lanczos vectors and coefficients first, then the LDL^T
/// recurrences, then the CG vectors. x_0 = 0.
template <IeeeScalar S>
CGTrace<S> cglanczos(const DenseMatrix<S>& A, const DenseVector<S>& b, std::size_t kmax) {
    if (!A.square() || A.rows() != b.size()) throw DimensionMismatch("cglanczos: shapes differ");
    if (!is_symmetric_bitwise(A)) throw PreconditionViolation("cglanczos: A is not symmetric");
    const std::size_t n = b.size();
    if (kmax > n) throw PreconditionViolation("cglanczos: kmax exceeds n");

    CGTrace<S> t;
    auto& lz = t.lanczos;
    S beta_k = S(0);
    S ell_prev = S(0);
    DenseVector<S> v_prev(n);
    DenseVector<S> x(n);
    DenseVector<S> r = b;
    DenseVector<S> p = r;
    S rho = norm2(b);
    if (rho == S(0)) throw PreconditionViolation("cglanczos: b is zero");
    lz.beta1 = rho;
    lz.basis.push_back(divided(b, rho));
    t.x.push_back(x);
    t.r.push_back(r);
    t.p.push_back(p);
    t.rho.push_back(rho);

    for (std::size_t k = 1; k <= kmax; ++k) {
        // T_k and V_k
        const DenseVector<S>& vk = lz.basis.back();
        DenseVector<S> w = difference(matvec(A, vk), scaled(beta_k, v_prev));
        const S alpha = dot(w, vk);
        w = difference(w, scaled(alpha, vk));
        const S beta_next = norm2(w);
        lz.alpha.push_back(alpha);
        lz.beta.push_back(beta_next);

        // T_k = L_k D_k L_k^T
        const S d = alpha - beta_k * ell_prev;
        if (!(d > S(0))) throw PreconditionViolation("cglanczos: nonpositive pivot d_" + std::to_string(k));
        t.d.push_back(d);
        t.gamma.push_back(S(1) / d);
        x = sum(x, divided(p, d));
        t.x.push_back(x);

        if (beta_next == S(0)) {
            lz.breakdown = k;
            t.exact_termination = true;
            t.ell.push_back(S(0));
            t.delta.push_back(S(0));
            t.rho.push_back(S(0));
            t.r.push_back(DenseVector<S>(n));
            t.p.push_back(DenseVector<S>(n));
            break;
        }
        v_prev = vk;
        lz.basis.push_back(divided(w, beta_next));
        const S ell = beta_next / d;
        rho = ell * rho;
        t.ell.push_back(ell);
        t.delta.push_back(ell * ell);
        t.rho.push_back(rho);

        // x_k, r_k and p_k
        r = scaled(rho, lz.basis.back());
        if (k % 2 == 1) r = negated(r);
        p = sum(r, scaled(ell * ell, p));
        t.r.push_back(r);
        t.p.push_back(p);

        beta_k = beta_next;
        ell_prev = ell;
    }
    return t;
}

template <IeeeScalar S>
struct LanczosSolve {
    DenseVector<S> x;
    DenseVector<S> y;
    std::size_t steps = 0;
    bool breakdown = false;
};

/// x_k = V_k y_k with T_k y_k = ||b|| e_1 solved through LDL^T; x_0 = 0.
template <IeeeScalar S>
LanczosSolve<S> cg_from_lanczos_solve(const DenseMatrix<S>& A, const DenseVector<S>& b, std::size_t k) {
    if (k == 0) throw PreconditionViolation("cg_from_lanczos_solve: k must be positive");
    const LanczosResult<S> lz = lanczos(A, b, k, LanczosVariant::mgs, Reorthogonalization::none);
    LanczosSolve<S> out;
    out.steps = lz.steps();
    out.breakdown = lz.breakdown.has_value() && *lz.breakdown < k;
    out.y = ldl_solve_e1(ldl(lz.tridiagonal()), lz.beta1);
    out.x = matvec(lz.basis_matrix(out.steps), out.y);
    return out;
}

}  // namespace exactkrylov
