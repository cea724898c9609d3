// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/harness/exactness.hpp"
#include "exactkrylov/krylov/arnoldi.hpp"
#include "exactkrylov/krylov/block_lanczos.hpp"
#include "exactkrylov/krylov/golub_kahan.hpp"
#include "exactkrylov/krylov/nonsym_lanczos.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace exactkrylov {

enum class SweepAlgorithm {
    lanczos_mgs,
    lanczos_cgs,
    arnoldi,
    bilanczos,
    golub_kahan,
    block_lanczos_cgs,
    block_lanczos_mgs,
    /// Lanczos on a grade-deficient pair built by extend_deficient.
    deficient,
};

std::string to_string(SweepAlgorithm a);
SweepAlgorithm parse_sweep_algorithm(std::string_view text);

/// Outcome of one structured instance.
struct ExactnessReport {
    SweepAlgorithm algorithm{};
    std::size_t n = 0;
    /// Block size for block Lanczos; 1 otherwise. For the deficient case, the grade d.
    std::size_t p = 1;
    std::uint64_t seed = 0;
    Precision precision{};
    bool projected_match = false;
    bool basis_match = false;
    bool breakdown_match = false;
    std::optional<std::string> mismatch;

    bool passed() const noexcept { return projected_match && basis_match && breakdown_match; }
    std::string reproducer() const;

    friend bool operator<(const ExactnessReport& a, const ExactnessReport& b) {
        return std::tie(a.algorithm, a.precision, a.n, a.p, a.seed) < std::tie(b.algorithm, b.precision, b.n, b.p, b.seed);
    }
};

/// Coefficient ranges used by the sweeps: diagonal entries in [-4, 4],
/// normalization coefficients log-uniform over the whole exponent guard.
template <IeeeScalar S>
CoefficientRanges sweep_ranges() {
    CoefficientRanges r;
    r.diag = {-4.0, 4.0};
    r.offdiag = {static_cast<double>(guard_min<S>()), static_cast<double>(guard_max<S>())};
    r.offdiag_sampling = Sampling::log_uniform;
    return r;
}

namespace detail {

/// Independent sub-seeds for the matrix, the permutation and scalars.
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    return rng.next();
}

template <IeeeScalar S>
S sweep_scale(std::uint64_t seed) {
    SplitMix64 rng(subseed(seed, 7));
    return detail::sample_positive<S>(rng, sweep_ranges<S>());
}

template <IeeeScalar S>
ExactnessReport start_report(SweepAlgorithm a, std::size_t n, std::size_t p, std::uint64_t seed) {
    ExactnessReport r;
    r.algorithm = a;
    r.n = n;
    r.p = p;
    r.seed = seed;
    r.precision = ScalarTraits<S>::precision;
    return r;
}

inline ExactnessReport finish_report(ExactnessReport r, const ExactnessCheck& c) {
    r.projected_match = c.projected;
    r.basis_match = c.basis;
    r.breakdown_match = c.breakdown;
    r.mismatch = c.mismatch;
    return r;
}

template <IeeeScalar S>
ExactnessReport run_lanczos_instance(SweepAlgorithm a, std::size_t n, std::uint64_t seed) {
    const auto T = random_jacobi<S>(n, subseed(seed, 0), sweep_ranges<S>());
    const auto prob = assemble<S>(T, SignedPermutation::random(n, subseed(seed, 1)), sweep_scale<S>(seed));
    const auto variant = a == SweepAlgorithm::lanczos_mgs ? LanczosVariant::mgs : LanczosVariant::cgs;
    const LanczosResult<S> res = lanczos(prob.A, prob.v, n, variant, Reorthogonalization::none);
    return finish_report(start_report<S>(a, n, 1, seed), check_lanczos_exact(res, T, prob.perm, prob.beta1, n));
}

/// Grade d = n - n/3 (at least 1); trailing blocks: R1 a signed permutation,
/// R2 a random symmetric matrix.
template <IeeeScalar S>
ExactnessReport run_deficient_instance(std::size_t n, std::uint64_t seed) {
    const std::size_t d = std::max<std::size_t>(1, n - n / 3);
    const auto T = random_jacobi<S>(d, subseed(seed, 0), sweep_ranges<S>());
    const auto P = SignedPermutation::random(d, subseed(seed, 1));
    const std::size_t t = n - d;
    DenseMatrix<S> R1 = t == 0 ? DenseMatrix<S>() : SignedPermutation::random(t, subseed(seed, 2)).template dense<S>();
    DenseMatrix<S> R2(t, t);
    SplitMix64 rng(subseed(seed, 3));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i; j < t; ++j) R2(i, j) = R2(j, i) = static_cast<S>(rng.uniform(-4.0, 4.0));
    const auto prob = extend_deficient(T, P, R1, R2, sweep_scale<S>(seed));
    const LanczosResult<S> res = lanczos(prob.A, prob.v, n, LanczosVariant::mgs, Reorthogonalization::none);
    detail::CheckBuilder c;
    std::string where;
    c.projected(res.steps() == d, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(d));
    c.projected(detail::vectors_match(res.alpha, T.alpha(), d, where, "alpha"), where);
    c.projected(detail::vectors_match(res.beta, T.beta(), d - 1, where, "beta"), where);
    // The basis lives in the leading d coordinates; trailing entries are +0.
    bool basis_ok = res.basis.size() >= d;
    if (!basis_ok) where = "v: only " + std::to_string(res.basis.size()) + " vectors";
    for (std::size_t j = 0; basis_ok && j < d; ++j) {
        DenseVector<S> expected(n);
        expected[P.target(j)] = P.sign(j) < 0 ? S(-1) : S(1);
        basis_ok = detail::column_matches(res.basis[j], expected, where, "v column " + std::to_string(j));
    }
    c.basis(basis_ok, where);
    c.breakdown(res.breakdown == d && bitwise_equal(res.beta_next(), S(0)),
                "breakdown at " + detail::describe_index(res.breakdown) + ", expected " + std::to_string(d) +
                    ", beta_{d+1} = " + format_hex(res.beta_next()));
    return finish_report(start_report<S>(SweepAlgorithm::deficient, n, d, seed), c.result());
}

template <IeeeScalar S>
ExactnessReport run_arnoldi_instance(std::size_t n, std::uint64_t seed) {
    const auto H = random_hessenberg<S>(n, subseed(seed, 0), sweep_ranges<S>());
    const auto prob = assemble<S>(H, SignedPermutation::random(n, subseed(seed, 1)), sweep_scale<S>(seed));
    const ArnoldiResult<S> res = arnoldi(prob.A, prob.v, n);
    return finish_report(start_report<S>(SweepAlgorithm::arnoldi, n, 1, seed),
                         check_arnoldi_exact(res, H, prob.perm, prob.beta1, n));
}

template <IeeeScalar S>
ExactnessReport run_bilanczos_instance(std::size_t n, std::uint64_t seed) {
    const auto T = random_nonsym_tridiagonal<S>(n, subseed(seed, 0), sweep_ranges<S>());
    SplitMix64 rng(subseed(seed, 5));
    const S scale_w = rng.coin() ? -sweep_scale<S>(seed ^ 1) : sweep_scale<S>(seed ^ 1);
    const auto prob = assemble_nonsym<S>(T, SignedPermutation::random(n, subseed(seed, 1)), sweep_scale<S>(seed), scale_w);
    const NonsymLanczosResult<S> res = nonsym_lanczos(prob.A, prob.v, prob.w, n);
    return finish_report(start_report<S>(SweepAlgorithm::bilanczos, n, 1, seed),
                         check_nonsym_lanczos_exact(res, T, prob.perm, prob.beta1, scale_w, n));
}

template <IeeeScalar S>
ExactnessReport run_golub_kahan_instance(std::size_t n, std::uint64_t seed) {
    const auto L = random_lower_bidiagonal<S>(n, subseed(seed, 0), sweep_ranges<S>());
    const auto prob = assemble<S>(L, SignedPermutation::random(n, subseed(seed, 1)), sweep_scale<S>(seed));
    const GolubKahanResult<S> res = golub_kahan(prob.A, prob.v, n);
    return finish_report(start_report<S>(SweepAlgorithm::golub_kahan, n, 1, seed),
                         check_golub_kahan_exact(res, L, prob.perm, prob.beta1, n));
}

template <IeeeScalar S>
ExactnessReport run_block_instance(SweepAlgorithm a, std::size_t m, std::size_t p, std::uint64_t seed) {
    const auto T = random_block_tridiagonal<S>(m, p, subseed(seed, 0), sweep_ranges<S>());
    const auto prob = assemble_block<S>(T, SignedBlockPermutation::random(m, p, subseed(seed, 1)));
    const auto qr = a == SweepAlgorithm::block_lanczos_cgs ? GramSchmidt::cgs : GramSchmidt::mgs;
    const BlockLanczosResult<S> res = block_lanczos(prob.A, prob.U1, m, qr);
    return finish_report(start_report<S>(a, m * p, p, seed), check_block_lanczos_exact(res, T, prob.perm, m));
}

}  // namespace detail

/// One structured instance of the given algorithm. For block Lanczos, n must
/// be a multiple of p.
template <IeeeScalar S>
ExactnessReport run_exactness_instance(SweepAlgorithm a, std::size_t n, std::uint64_t seed, std::size_t p = 1) {
    if (n == 0) throw PreconditionViolation("exactness sweep: n must be positive");
    switch (a) {
        case SweepAlgorithm::lanczos_mgs:
        case SweepAlgorithm::lanczos_cgs:
            return detail::run_lanczos_instance<S>(a, n, seed);
        case SweepAlgorithm::deficient:
            return detail::run_deficient_instance<S>(n, seed);
        case SweepAlgorithm::arnoldi:
            return detail::run_arnoldi_instance<S>(n, seed);
        case SweepAlgorithm::bilanczos:
            return detail::run_bilanczos_instance<S>(n, seed);
        case SweepAlgorithm::golub_kahan:
            return detail::run_golub_kahan_instance<S>(n, seed);
        case SweepAlgorithm::block_lanczos_cgs:
        case SweepAlgorithm::block_lanczos_mgs:
            if (p == 0 || n % p != 0) throw PreconditionViolation("exactness sweep: p must divide n");
            return detail::run_block_instance<S>(a, n / p, p, seed);
    }
    throw PreconditionViolation("exactness sweep: unknown algorithm");
}

struct SweepConfig {
    SweepAlgorithm algorithm = SweepAlgorithm::lanczos_mgs;
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds;
    std::vector<Precision> precisions{Precision::binary64, Precision::binary32};
    std::size_t block_size = 1;
};

/// Runs every (size, seed, precision) combination; reports are sorted by key.
std::vector<ExactnessReport> exactness_sweep(const SweepConfig& config);

}  // namespace exactkrylov
