// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exactkrylov/cg/ldl.hpp"
#include "exactkrylov/core/rational.hpp"
#include "exactkrylov/core/rng.hpp"
#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

/// Prescribed CG behaviour: ||r_k|| and ||x - x_k||_A for k = 0..n-1, with
/// ||x - x_n||_A = 0 implied.
template <IeeeScalar S>
struct ConvergenceCurves {
    std::vector<S> residual_norms;
    std::vector<S> energy_errors;

    std::size_t size() const noexcept { return residual_norms.size(); }

    void validate() const {
        if (residual_norms.empty() || residual_norms.size() != energy_errors.size()) {
            throw DimensionMismatch("ConvergenceCurves: need two nonempty curves of equal length");
        }
        for (std::size_t k = 0; k < size(); ++k) {
            require_finite(residual_norms[k], "ConvergenceCurves residual norm");
            require_finite(energy_errors[k], "ConvergenceCurves energy error");
            if (!(residual_norms[k] > S(0)) || !(energy_errors[k] > S(0))) {
                throw PreconditionViolation("ConvergenceCurves: entries must be positive");
            }
            if (k > 0 && !(energy_errors[k] < energy_errors[k - 1])) {
                throw PreconditionViolation("ConvergenceCurves: energy errors must decrease strictly");
            }
        }
    }
};

template <IeeeScalar S>
struct PrescribedProblem {
    JacobiMatrix<S> T;
    DenseVector<S> b;
    /// gamma_0 .. gamma_{n-1}
    std::vector<S> gamma;
    /// delta_1 .. delta_{n-1}
    std::vector<S> delta;
};

/// Builds (T_n, ||r_0|| e_1) on which CG reproduces the curves:
/// delta_k = ||r_k||^2 / ||r_{k-1}||^2, gamma_k = (e_k^2 - e_{k+1}^2) / ||r_k||^2,
/// then T_n from the CG-to-Lanczos coefficient map.
template <IeeeScalar S>
PrescribedProblem<S> prescribe_cg_curves(const ConvergenceCurves<S>& curves) {
    curves.validate();
    const std::size_t n = curves.size();
    const auto& r = curves.residual_norms;
    const auto& e = curves.energy_errors;
    PrescribedProblem<S> out;
    out.gamma.resize(n);
    out.delta.resize(n - 1);
    for (std::size_t k = 1; k < n; ++k) out.delta[k - 1] = (r[k] * r[k]) / (r[k - 1] * r[k - 1]);
    for (std::size_t k = 0; k < n; ++k) {
        const S next = k + 1 < n ? e[k + 1] * e[k + 1] : S(0);
        out.gamma[k] = (e[k] * e[k] - next) / (r[k] * r[k]);
        if (!(out.gamma[k] > S(0)) || !std::isfinite(out.gamma[k])) {
            throw PreconditionViolation("prescribe_cg_curves: gamma_" + std::to_string(k) +
                                        " is not positive; curves are inconsistent with an SPD system");
        }
    }
    auto [alphas, betas] = coeffs_cg_to_lanczos(out.gamma, out.delta);
    out.T = JacobiMatrix<S>(std::move(alphas), std::move(betas));
    out.b = DenseVector<S>::unit(n, 0, r[0]);
    return out;
}

/// The same construction carried out exactly over the rationals. Square roots
/// are avoided through sqrt(delta_k) = ||r_k|| / ||r_{k-1}||.
struct ExactPrescribedProblem {
    RationalMatrix T;
    RationalVector b;
    std::vector<Rational> gamma, delta;
};

ExactPrescribedProblem prescribe_cg_curves_exact(const ConvergenceCurves<double>& curves);

/// Random admissible curves: residual norms wander by factors in [0.25, 1.25],
/// energy errors shrink by factors in [0.3, 0.9] per step.
template <IeeeScalar S>
ConvergenceCurves<S> random_convergence_curves(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw PreconditionViolation("random_convergence_curves: n must be positive");
    SplitMix64 rng(seed);
    ConvergenceCurves<S> c;
    c.residual_norms.resize(n);
    c.energy_errors.resize(n);
    c.residual_norms[0] = static_cast<S>(rng.uniform(0.5, 2.0));
    c.energy_errors[0] = static_cast<S>(rng.uniform(0.5, 2.0));
    for (std::size_t k = 1; k < n; ++k) {
        c.residual_norms[k] = c.residual_norms[k - 1] * static_cast<S>(rng.uniform(0.25, 1.25));
        c.energy_errors[k] = c.energy_errors[k - 1] * static_cast<S>(rng.uniform(0.3, 0.9));
    }
    c.validate();
    return c;
}

}  // namespace exactkrylov
