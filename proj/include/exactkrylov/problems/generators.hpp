// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "exactkrylov/core/rng.hpp"
#include "exactkrylov/krylov/structures.hpp"
#include "exactkrylov/problems/jacobi.hpp"

namespace exactkrylov {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Sampling {
    uniform,
    /// Uniform in log2, so that coefficients spread over many binades.
    log_uniform,
};

/// Ranges for random structured matrices. `offdiag` applies to the
/// coefficients that get normalized (and therefore squared) by the
/// algorithms; it must lie within the exponent guard and be positive.
struct CoefficientRanges {
    Interval diag{-1.0, 1.0};
    Interval offdiag{0.5, 2.0};
    Sampling offdiag_sampling = Sampling::uniform;
};

namespace detail {

template <IeeeScalar S>
void check_ranges(const CoefficientRanges& r) {
    if (!(r.diag.lo <= r.diag.hi) || !std::isfinite(r.diag.lo) || !std::isfinite(r.diag.hi)) {
        throw PreconditionViolation("generator: invalid diagonal range");
    }
    if (!(r.offdiag.lo > 0.0) || !(r.offdiag.lo <= r.offdiag.hi)) {
        throw PreconditionViolation("generator: off-diagonal range must be a nonempty subset of (0, inf)");
    }
    if (r.offdiag.lo < static_cast<double>(guard_min<S>()) || r.offdiag.hi > static_cast<double>(guard_max<S>())) {
        throw PreconditionViolation("generator: off-diagonal range leaves the exponent guard");
    }
}

template <IeeeScalar S>
S clamp_to(double x, Interval iv) {
    S v = static_cast<S>(x);
    const S lo = static_cast<S>(iv.lo), hi = static_cast<S>(iv.hi);
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    return v;
}

template <IeeeScalar S>
S sample_diag(SplitMix64& rng, const CoefficientRanges& r) {
    return clamp_to<S>(rng.uniform(r.diag.lo, r.diag.hi), r.diag);
}

template <IeeeScalar S>
S sample_positive(SplitMix64& rng, const CoefficientRanges& r) {
    double x;
    if (r.offdiag_sampling == Sampling::log_uniform) {
        x = std::exp2(rng.uniform(std::log2(r.offdiag.lo), std::log2(r.offdiag.hi)));
    } else {
        x = rng.uniform(r.offdiag.lo, r.offdiag.hi);
    }
    S v = clamp_to<S>(x, r.offdiag);
    // Rounding to a narrower format can leave the guard at the edges.
    if (v < guard_min<S>()) v = guard_min<S>();
    if (v > guard_max<S>()) v = guard_max<S>();
    return v;
}

}  // namespace detail

/// Random Jacobi matrix, deterministic in (n, seed, ranges, spd).
///
/// With `spd` the diagonal is shifted (Gershgorin) until the matrix is
/// strictly diagonally dominant with positive diagonal.
template <IeeeScalar S>
JacobiMatrix<S> random_jacobi(std::size_t n, std::uint64_t seed, const CoefficientRanges& ranges = {},
                              bool spd = false) {
    if (n == 0) throw PreconditionViolation("random_jacobi: n must be positive");
    detail::check_ranges<S>(ranges);
    SplitMix64 rng(seed);
    std::vector<S> alpha(n), beta(n - 1);
    for (auto& a : alpha) a = detail::sample_diag<S>(rng, ranges);
    for (auto& b : beta) b = detail::sample_positive<S>(rng, ranges);
    if (spd) {
        std::vector<double> radius(n, 0.0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            radius[j] += static_cast<double>(beta[j]);
            radius[j + 1] += static_cast<double>(beta[j]);
        }
        double shift = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            shift = std::max(shift, radius[i] - static_cast<double>(alpha[i]));
            scale = std::max(scale, radius[i]);
        }
        double margin = std::max(1e-3 * scale, 1e-3);
        for (int attempt = 0;; ++attempt) {
            std::vector<S> shifted(n);
            bool dominant = true;
            for (std::size_t i = 0; i < n; ++i) {
                shifted[i] = static_cast<S>(static_cast<double>(alpha[i]) + shift + margin);
                if (!(static_cast<double>(shifted[i]) > radius[i] * (1.0 + 1e-6)) || !std::isfinite(shifted[i])) {
                    dominant = false;
                }
            }
            if (dominant) {
                alpha = std::move(shifted);
                break;
            }
            if (attempt > 64) throw PreconditionViolation("random_jacobi: could not enforce positive definiteness");
            margin *= 2.0;
        }
    }
    return JacobiMatrix<S>(std::move(alpha), std::move(beta));
}

/// Eigenvalues lambda_i = l1 + (i-1)/(n-1) (ln - l1) rho^(n-i), increasing.
template <IeeeScalar S>
std::vector<S> strakos_spectrum(std::size_t n, S lambda1, S lambdan, S rho) {
    if (n < 2) throw PreconditionViolation("strakos_spectrum: n must be at least 2");
    if (!(lambda1 > S(0)) || !(lambda1 < lambdan)) throw PreconditionViolation("strakos_spectrum: need 0 < l1 < ln");
    if (!(rho > S(0)) || !(rho <= S(1))) throw PreconditionViolation("strakos_spectrum: need 0 < rho <= 1");
    std::vector<S> lambda(n);
    lambda[0] = lambda1;
    const S width = lambdan - lambda1;
    for (std::size_t i = 2; i <= n; ++i) {
        const S ratio = static_cast<S>(i - 1) / static_cast<S>(n - 1);
        const S decay = std::pow(rho, static_cast<S>(n - i));
        lambda[i - 1] = lambda1 + ratio * width * decay;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(lambda[i] > lambda[i - 1])) throw PreconditionViolation("strakos_spectrum: result is not increasing");
    }
    return lambda;
}

/// Random upper Hessenberg matrix with positive subdiagonal.
template <IeeeScalar S>
HessenbergMatrix<S> random_hessenberg(std::size_t n, std::uint64_t seed, const CoefficientRanges& ranges = {}) {
    if (n == 0) throw PreconditionViolation("random_hessenberg: n must be positive");
    detail::check_ranges<S>(ranges);
    SplitMix64 rng(seed);
    DenseMatrix<S> h(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) h(i, j) = detail::sample_diag<S>(rng, ranges);
        if (j + 1 < n) h(j + 1, j) = detail::sample_positive<S>(rng, ranges);
    }
    return HessenbergMatrix<S>(std::move(h));
}

/// Random nonsymmetric tridiagonal matrix; superdiagonal entries get random signs.
template <IeeeScalar S>
NonsymTridiagonal<S> random_nonsym_tridiagonal(std::size_t n, std::uint64_t seed,
                                               const CoefficientRanges& ranges = {}) {
    if (n == 0) throw PreconditionViolation("random_nonsym_tridiagonal: n must be positive");
    detail::check_ranges<S>(ranges);
    SplitMix64 rng(seed);
    std::vector<S> alpha(n), beta(n - 1), gamma(n - 1);
    for (auto& a : alpha) a = detail::sample_diag<S>(rng, ranges);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const S b = detail::sample_positive<S>(rng, ranges);
        beta[j] = rng.coin() ? -b : b;
        gamma[j] = detail::sample_positive<S>(rng, ranges);
    }
    return NonsymTridiagonal<S>(std::move(alpha), std::move(beta), std::move(gamma));
}

template <IeeeScalar S>
LowerBidiagonal<S> random_lower_bidiagonal(std::size_t n, std::uint64_t seed, const CoefficientRanges& ranges = {}) {
    if (n == 0) throw PreconditionViolation("random_lower_bidiagonal: n must be positive");
    detail::check_ranges<S>(ranges);
    SplitMix64 rng(seed);
    std::vector<S> gamma(n), delta(n - 1);
    for (auto& g : gamma) g = detail::sample_positive<S>(rng, ranges);
    for (auto& d : delta) d = detail::sample_positive<S>(rng, ranges);
    return LowerBidiagonal<S>(std::move(gamma), std::move(delta));
}

/// Random block tridiagonal matrix with m blocks of size p.
template <IeeeScalar S>
BlockTridiagonal<S> random_block_tridiagonal(std::size_t m, std::size_t p, std::uint64_t seed,
                                             const CoefficientRanges& ranges = {}) {
    if (m == 0 || p == 0) throw PreconditionViolation("random_block_tridiagonal: m and p must be positive");
    detail::check_ranges<S>(ranges);
    SplitMix64 rng(seed);
    std::vector<DenseMatrix<S>> diag, sub;
    for (std::size_t b = 0; b < m; ++b) {
        DenseMatrix<S> M(p, p);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = r; c < p; ++c) {
                M(r, c) = detail::sample_diag<S>(rng, ranges);
                M(c, r) = M(r, c);
            }
        diag.push_back(std::move(M));
    }
    for (std::size_t b = 0; b + 1 < m; ++b) {
        DenseMatrix<S> B(p, p);
        for (std::size_t r = 0; r < p; ++r) {
            B(r, r) = detail::sample_positive<S>(rng, ranges);
            for (std::size_t c = r + 1; c < p; ++c) B(r, c) = detail::sample_diag<S>(rng, ranges);
        }
        sub.push_back(std::move(B));
    }
    return BlockTridiagonal<S>(p, std::move(diag), std::move(sub));
}

}  // namespace exactkrylov
