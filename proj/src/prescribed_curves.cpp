// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/problems/prescribed_curves.hpp"

namespace exactkrylov {

ExactPrescribedProblem prescribe_cg_curves_exact(const ConvergenceCurves<double>& curves) {
    curves.validate();
    const std::size_t n = curves.size();
    std::vector<Rational> r(n), e2(n + 1, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = to_rational(curves.residual_norms[k]);
        const Rational ek = to_rational(curves.energy_errors[k]);
        e2[k] = ek * ek;
    }

    ExactPrescribedProblem out;
    out.gamma.resize(n);
    out.delta.resize(n - 1);
    std::vector<Rational> sqrt_delta(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        sqrt_delta[k - 1] = r[k] / r[k - 1];
        out.delta[k - 1] = sqrt_delta[k - 1] * sqrt_delta[k - 1];
    }
    for (std::size_t k = 0; k < n; ++k) {
        out.gamma[k] = (e2[k] - e2[k + 1]) / (r[k] * r[k]);
        if (sgn(out.gamma[k]) <= 0) {
            throw PreconditionViolation("prescribe_cg_curves_exact: curves are inconsistent with an SPD system");
        }
    }

    out.T = RationalMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.T(k, k) = 1 / out.gamma[k];
        if (k > 0) out.T(k, k) += out.delta[k - 1] / out.gamma[k - 1];
        if (k + 1 < n) {
            out.T(k + 1, k) = sqrt_delta[k] / out.gamma[k];
            out.T(k, k + 1) = out.T(k + 1, k);
        }
    }
    out.b.assign(n, Rational(0));
    out.b[0] = r[0];
    return out;
}

}  // namespace exactkrylov
