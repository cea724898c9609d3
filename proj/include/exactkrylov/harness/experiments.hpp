// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/harness/csv.hpp"
#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

/// The Strakos test instance: Lambda = strakos_spectrum(24, 1e-3, 1, 0.7),
/// v = ones, and T_n from Lanczos with double reorthogonalization.
struct StrakosInstance {
    std::vector<double> lambda;
    JacobiMatrix<double> T;
    /// Largest |theta_i - lambda_i| / lambda_i over Sturm-bisection eigenvalues theta of T.
    double max_eigenvalue_error = 0.0;
};

inline constexpr std::size_t kStrakosSize = 24;
inline constexpr double kStrakosLambdaMin = 1e-3;
inline constexpr double kStrakosLambdaMax = 1.0;
inline constexpr double kStrakosRho = 0.7;

StrakosInstance strakos_instance();

/// Metrics "hs_cg_loss" (HS-CG normalized residuals) and "lanczos_loss"
/// (Lanczos basis from the same (A, e_1)) for k = 1..n.
struct Fig2Result {
    MetricSeries series;
    StrakosInstance instance;
    double max_hs_loss = 0.0;
    /// First k whose HS-CG loss exceeds 1e-8.
    std::optional<std::size_t> first_k_above_threshold;
    /// Every Lanczos loss value is +0 bitwise.
    bool lanczos_exact = false;
};

Fig2Result experiment_fig2();

/// Metrics "a_orthogonality_loss" and "relative_error" for cgLanczos and
/// "hs_a_orthogonality_loss" for HS-CG, each for k = 1..n.
struct Fig3Result {
    MetricSeries series;
    double kappa = 0.0;
    /// 5 u kappa / (1 - 5 u kappa)
    double bound = 0.0;
    double max_relative_error = 0.0;
    double max_a_orthogonality_loss = 0.0;
    double max_hs_a_orthogonality_loss = 0.0;
    /// rho_n / rho_0 of cgLanczos.
    double final_residual_ratio = 0.0;
};

Fig3Result experiment_fig3();

/// Exact CG residuals against exact Lanczos vectors on structured SPD instances.
struct CollinearityReport {
    std::size_t instances = 0;
    std::size_t vectors_checked = 0;
    std::size_t violations = 0;
    std::optional<std::string> first_violation;

    bool passed() const noexcept { return violations == 0 && instances > 0; }
};

/// For each instance (n in [2, 12]): r_j from the rational oracle must satisfy
/// r_j[a] v[b] - r_j[b] v[a] = 0 for all a, b with v = v_{j+1} from structured
/// Lanczos, and (-1)^j r_j must point along v_{j+1}.
CollinearityReport check_cg_lanczos_collinearity(std::size_t instances, std::uint64_t seed);

/// Roundtrip of random prescribed convergence curves.
struct PrescribedCurvesReport {
    MetricSeries series;
    std::size_t instances = 0;
    std::size_t exact_mismatches = 0;
    /// Largest |rho_k - r_k| / r_k of floating cgLanczos over all instances and k.
    double max_residual_error = 0.0;
    std::optional<std::string> first_failure;
};

inline constexpr double kPrescribedResidualTolerance = 1e-10;

/// Instance i has size 2 + (i mod (max_n - 1)) and seed seed + i.
PrescribedCurvesReport experiment_prescribed_curves(std::size_t instances, std::size_t max_n, std::uint64_t seed);

/// Forward error of cgLanczos and of the LDL^T Lanczos solve against the
/// rational oracle, relative to 5 u kappa / (1 - 5 u kappa).
struct ErrorBoundReport {
    std::size_t instances = 0;
    std::size_t iterates = 0;
    std::size_t violations = 0;
    /// Largest error / bound ratio.
    double max_ratio = 0.0;
    std::optional<std::string> first_violation;

    bool passed() const noexcept { return violations == 0 && instances > 0; }
};

/// Structured SPD instances with n in [2, max_n] (binary64).
ErrorBoundReport check_error_bound(std::size_t instances, std::size_t max_n, std::uint64_t seed);

/// ||x_k - x_bar_k|| versus ||y_k - y_bar_k|| on structured Hessenberg instances.
struct GmresIdentityReport {
    std::size_t instances = 0;
    std::size_t steps_checked = 0;
    std::size_t violations = 0;
    /// Largest |ex - ey| / max(ex, ey) (0 when both vanish).
    double max_discrepancy = 0.0;
    std::optional<std::string> first_violation;

    bool passed() const noexcept { return violations == 0 && instances > 0; }
};

inline constexpr double kGmresIdentityTolerance = 1e-15;

GmresIdentityReport check_gmres_identity(const std::vector<std::size_t>& sizes,
                                         const std::vector<std::uint64_t>& seeds);

}  // namespace exactkrylov
