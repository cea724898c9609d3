// SPDX-License-Identifier: Apache-2.0

#include "exactkrylov/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exactkrylov/cg/cg.hpp"
#include "exactkrylov/cg/rational_cg.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/harness/metrics.hpp"
#include "exactkrylov/krylov/gmres.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/prescribed_curves.hpp"
#include "exactkrylov/problems/spectrum.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace exactkrylov {

namespace {

constexpr double kLossThreshold = 1e-8;

/// sqrt(||a - b||^2 / ||a||^2), the ratio rounded once.
double relative_error(const RationalVector& exact, const DenseVector<double>& computed) {
    const RationalVector diff = difference(exact, to_rational(computed));
    const Rational den = squared_norm(exact);
    if (sgn(den) == 0) return std::sqrt(to_double(squared_norm(diff)));
    return std::sqrt(to_double(squared_norm(diff) / den));
}

double five_u_bound(double kappa) {
    const double t = 5.0 * unit_roundoff<double>() * kappa;
    if (!(t < 1.0)) throw PreconditionViolation("error bound: 5 u kappa >= 1");
    return t / (1.0 - t);
}

DenseVector<double> e1(std::size_t n) { return DenseVector<double>::unit(n, 0); }

}  // namespace

StrakosInstance strakos_instance() {
    StrakosInstance inst;
    inst.lambda = strakos_spectrum<double>(kStrakosSize, kStrakosLambdaMin, kStrakosLambdaMax, kStrakosRho);
    const DenseMatrix<double> Lambda = DenseMatrix<double>::diagonal(inst.lambda);
    const DenseVector<double> ones(std::vector<double>(kStrakosSize, 1.0));
    const LanczosResult<double> lz =
        lanczos(Lambda, ones, kStrakosSize, LanczosVariant::mgs, Reorthogonalization::twice);
    if (lz.steps() != kStrakosSize) throw PreconditionViolation("strakos_instance: Lanczos stopped early");
    inst.T = lz.tridiagonal();
    const std::vector<double> theta = jacobi_eigenvalues(inst.T);
    for (std::size_t i = 0; i < kStrakosSize; ++i) {
        inst.max_eigenvalue_error =
            std::max(inst.max_eigenvalue_error, std::fabs(theta[i] - inst.lambda[i]) / inst.lambda[i]);
    }
    return inst;
}

Fig2Result experiment_fig2() {
    Fig2Result out;
    out.series.experiment = "fig2";
    out.instance = strakos_instance();
    const std::size_t n = kStrakosSize;
    const DenseMatrix<double> A = out.instance.T.dense();

    const CGTrace<double> hs = cg_hs(A, e1(n), DenseVector<double>(n), n);
    const std::size_t kmax = std::min(n, hs.r.size());
    std::vector<DenseVector<double>> cols;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const std::size_t j = k - 1;
        DenseVector<double> q = divided(hs.r[j], norm2(hs.r[j]));
        if (j % 2 == 1) q = negated(q);
        cols.push_back(std::move(q));
        const double loss = loss_of_orthogonality(DenseMatrix<double>::from_columns(cols, n));
        out.series.add(k, "hs_cg_loss", loss);
        out.max_hs_loss = std::max(out.max_hs_loss, loss);
        if (loss > kLossThreshold && !out.first_k_above_threshold) out.first_k_above_threshold = k;
    }

    const LanczosResult<double> lz = lanczos(A, e1(n), n, LanczosVariant::mgs, Reorthogonalization::none);
    out.lanczos_exact = lz.steps() == n;
    for (std::size_t k = 1; k <= lz.steps(); ++k) {
        const double loss = loss_of_orthogonality(lz.basis_matrix(k));
        out.series.add(k, "lanczos_loss", loss);
        out.lanczos_exact = out.lanczos_exact && bitwise_equal(loss, 0.0);
    }
    return out;
}

Fig3Result experiment_fig3() {
    Fig3Result out;
    out.series.experiment = "fig3";
    const StrakosInstance inst = strakos_instance();
    const std::size_t n = kStrakosSize;
    const DenseMatrix<double> A = inst.T.dense();
    const DenseVector<double> b = e1(n);
    out.kappa = jacobi_condition_number(inst.T);
    out.bound = five_u_bound(out.kappa);

    const CGTrace<double> cgl = cglanczos(A, b, n);
    const CGTrace<double> hs = cg_hs(A, b, DenseVector<double>(n), n);
    const RationalCGTrace oracle = rational_cg_oracle(A, b, n);
    const std::size_t kmax = std::min({cgl.iterations(), oracle.iterations(), n});
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double loss = a_orthogonality_loss(cgl.directions(k), A);
        const double err = relative_error(oracle.x[k], cgl.x[k]);
        out.series.add(k, "a_orthogonality_loss", loss);
        out.series.add(k, "relative_error", err);
        out.max_a_orthogonality_loss = std::max(out.max_a_orthogonality_loss, loss);
        out.max_relative_error = std::max(out.max_relative_error, err);
        if (k <= hs.iterations()) {
            const double hs_loss = a_orthogonality_loss(hs.directions(k), A);
            out.series.add(k, "hs_a_orthogonality_loss", hs_loss);
            out.max_hs_a_orthogonality_loss = std::max(out.max_hs_a_orthogonality_loss, hs_loss);
        }
    }
    out.final_residual_ratio = cgl.rho.back() / cgl.rho.front();
    return out;
}

CollinearityReport check_cg_lanczos_collinearity(std::size_t instances, std::uint64_t seed) {
    CollinearityReport rep;
    const auto fail = [&rep](const std::string& what) {
        ++rep.violations;
        if (!rep.first_violation) rep.first_violation = what;
    };
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = 2 + i % 11;
        const std::uint64_t s = seed + i;
        const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(s);
        SplitMix64 rng(s ^ 0xC011EA5ULL);
        const auto prob = assemble<double>(random_jacobi<double>(n, s, {}, true), SignedPermutation::random(n, rng.next()),
                                           rng.uniform(0.5, 2.0));
        const LanczosResult<double> lz = lanczos(prob.A, prob.v, n);
        const RationalCGTrace oracle = rational_cg_oracle(prob.A, prob.v, n);
        ++rep.instances;
        if (oracle.iterations() != n || sgn(oracle.residual_norm2.back()) != 0) {
            fail(tag + ": exact CG did not terminate at step n");
        }
        const std::size_t count = std::min(lz.basis.size(), oracle.iterations());
        for (std::size_t j = 0; j < count; ++j) {
            const RationalVector& r = oracle.r[j];
            const RationalVector v = to_rational(lz.basis[j]);
            ++rep.vectors_checked;
            bool collinear = true;
            for (std::size_t a = 0; a < n && collinear; ++a)
                for (std::size_t c = a + 1; c < n && collinear; ++c)
                    if (sgn(r[a] * v[c] - r[c] * v[a]) != 0) collinear = false;
            if (!collinear) {
                fail(tag + ": r_" + std::to_string(j) + " is not collinear with v_" + std::to_string(j + 1));
                continue;
            }
            const int orientation = sgn(dot(r, v)) * (j % 2 == 0 ? 1 : -1);
            if (orientation <= 0) {
                fail(tag + ": (-1)^j r_" + std::to_string(j) + " points against v_" + std::to_string(j + 1));
            }
        }
    }
    return rep;
}

PrescribedCurvesReport experiment_prescribed_curves(std::size_t instances, std::size_t max_n, std::uint64_t seed) {
    if (max_n < 2) throw PreconditionViolation("prescribed curves: max_n must be at least 2");
    PrescribedCurvesReport rep;
    rep.series.experiment = "prescribed-curves";
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = 2 + i % (max_n - 1);
        const std::uint64_t s = seed + i;
        const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(s);
        const ConvergenceCurves<double> curves = random_convergence_curves<double>(n, s);
        ++rep.instances;

        const ExactPrescribedProblem exact = prescribe_cg_curves_exact(curves);
        const RationalCGTrace oracle = rational_cg_oracle(exact.T, exact.b, n);
        bool match = oracle.iterations() == n && sgn(oracle.residual_norm2[n]) == 0 && sgn(oracle.energy_error2[n]) == 0;
        for (std::size_t k = 0; match && k < n; ++k) {
            const Rational r = to_rational(curves.residual_norms[k]);
            const Rational e = to_rational(curves.energy_errors[k]);
            match = oracle.residual_norm2[k] == r * r && oracle.energy_error2[k] == e * e;
        }
        if (!match) {
            ++rep.exact_mismatches;
            if (!rep.first_failure) rep.first_failure = tag + ": exact CG does not reproduce the curves";
        }

        const PrescribedProblem<double> fp = prescribe_cg_curves(curves);
        const CGTrace<double> cgl = cglanczos(fp.T.dense(), fp.b, n);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k >= cgl.rho.size()) {
                worst = HUGE_VAL;
                break;
            }
            const double target = curves.residual_norms[k];
            worst = std::max(worst, std::fabs(cgl.rho[k] - target) / target);
        }
        rep.max_residual_error = std::max(rep.max_residual_error, worst);
        if (!(worst <= kPrescribedResidualTolerance) && !rep.first_failure) {
            rep.first_failure = tag + ": cgLanczos residual error " + format_shortest(worst);
        }
        rep.series.add(i, "exact_match", match ? 1.0 : 0.0);
        rep.series.add(i, "max_residual_error", worst);
    }
    return rep;
}

ErrorBoundReport check_error_bound(std::size_t instances, std::size_t max_n, std::uint64_t seed) {
    if (max_n < 2 || max_n > kRationalOracleMaxSize) throw PreconditionViolation("error bound: max_n out of range");
    ErrorBoundReport rep;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = 2 + i % (max_n - 1);
        const std::uint64_t s = seed + i;
        const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(s);
        SplitMix64 rng(s ^ 0xB0D5ULL);
        const JacobiMatrix<double> T = random_jacobi<double>(n, s, {}, true);
        const auto prob = assemble<double>(T, SignedPermutation::random(n, rng.next()), rng.uniform(0.5, 2.0));
        const double bound = five_u_bound(jacobi_condition_number(T));
        const CGTrace<double> cgl = cglanczos(prob.A, prob.v, n);
        const RationalCGTrace oracle = rational_cg_oracle(prob.A, prob.v, n);
        ++rep.instances;
        const std::size_t kmax = std::min(cgl.iterations(), oracle.iterations());
        for (std::size_t k = 1; k <= kmax; ++k) {
            const LanczosSolve<double> direct = cg_from_lanczos_solve(prob.A, prob.v, k);
            for (const auto& [name, x] : {std::pair<const char*, const DenseVector<double>*>{"cglanczos", &cgl.x[k]},
                                          {"lanczos-ldl", &direct.x}}) {
                const double err = relative_error(oracle.x[k], *x);
                ++rep.iterates;
                rep.max_ratio = std::max(rep.max_ratio, err / bound);
                if (!(err <= bound)) {
                    ++rep.violations;
                    if (!rep.first_violation) {
                        rep.first_violation = tag + " k=" + std::to_string(k) + " " + name + ": error " +
                                              format_shortest(err) + " > bound " + format_shortest(bound);
                    }
                }
            }
        }
    }
    return rep;
}

GmresIdentityReport check_gmres_identity(const std::vector<std::size_t>& sizes,
                                         const std::vector<std::uint64_t>& seeds) {
    GmresIdentityReport rep;
    for (std::size_t n : sizes)
        for (std::uint64_t s : seeds) {
            const auto prob = assemble<double>(random_hessenberg<double>(n, s),
                                               SignedPermutation::random(n, s ^ 0x6E5ULL), 1.0);
            ++rep.instances;
            for (std::size_t k = 1; k <= n; ++k) {
                const GmresResult<double> g = gmres_structured(prob.A, prob.v, k);
                const double scale = std::max(g.x_error, g.y_error);
                const double disc = scale == 0.0 ? 0.0 : std::fabs(g.x_error - g.y_error) / scale;
                ++rep.steps_checked;
                rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
                if (!(disc <= kGmresIdentityTolerance)) {
                    ++rep.violations;
                    if (!rep.first_violation) {
                        rep.first_violation = "n=" + std::to_string(n) + " seed=" + std::to_string(s) +
                                              " k=" + std::to_string(k) + ": " + format_hex(g.x_error) + " vs " +
                                              format_hex(g.y_error);
                    }
                }
            }
        }
    return rep;
}

}  // namespace exactkrylov
