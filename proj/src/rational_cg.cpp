// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/cg/rational_cg.hpp"

#include <string>

namespace exactkrylov {

namespace {

RationalVector axpy(const Rational& a, const RationalVector& x, const RationalVector& y) {
    RationalVector z(y);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += a * x[i];
    return z;
}

}  // namespace

Rational squared_norm(const RationalVector& x) { return dot(x, x); }

RationalCGTrace rational_cg_oracle(const RationalMatrix& A, const RationalVector& b, std::size_t kmax) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw DimensionMismatch("rational_cg_oracle: shapes differ");
    if (n > kRationalOracleMaxSize) throw PreconditionViolation("rational_cg_oracle: n exceeds the size guard of 48");
    if (kmax > n) throw PreconditionViolation("rational_cg_oracle: kmax exceeds n");

    RationalCGTrace t;
    t.solution = solve_spd_exact(A, b);

    RationalVector x(n, Rational(0));
    RationalVector r = b;
    RationalVector p = r;
    Rational rr = dot(r, r);
    const auto record = [&] {
        t.x.push_back(x);
        t.r.push_back(r);
        t.p.push_back(p);
        t.residual_norm2.push_back(rr);
        t.energy_error2.push_back(energy(A, difference(t.solution, x)));
    };
    record();
    for (std::size_t k = 1; k <= kmax && sgn(rr) != 0; ++k) {
        const RationalVector Ap = matvec(A, p);
        const Rational pAp = dot(p, Ap);
        if (sgn(pAp) <= 0) throw PreconditionViolation("rational_cg_oracle: p^T A p <= 0 at iteration " + std::to_string(k));
        const Rational gamma = rr / pAp;
        x = axpy(gamma, p, x);
        r = axpy(-gamma, Ap, r);
        const Rational rr_new = dot(r, r);
        const Rational delta = rr_new / rr;
        p = axpy(delta, p, r);
        rr = rr_new;
        t.gamma.push_back(gamma);
        t.delta.push_back(delta);
        record();
    }
    return t;
}

}  // namespace exactkrylov
