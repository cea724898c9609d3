// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "exactkrylov/cg/cg.hpp"
#include "exactkrylov/cg/ldl.hpp"
#include "exactkrylov/cg/rational_cg.hpp"
#include "exactkrylov/harness/metrics.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/spectrum.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace ek = exactkrylov;

namespace {

constexpr double u = 0x1p-53;

double relative_error(const ek::RationalVector& exact, const ek::DenseVector<double>& x) {
    const auto diff = ek::difference(exact, ek::to_rational(x));
    return std::sqrt(ek::to_double(ek::squared_norm(diff) / ek::squared_norm(exact)));
}

}  // namespace

TEST(Ldl, HandEvaluated) {
    const ek::JacobiMatrix<double> T({2, 2}, {1});
    const auto f = ek::ldl(T);
    EXPECT_EQ(f.d, (std::vector<double>{2.0, 1.5}));
    EXPECT_EQ(f.ell, (std::vector<double>{0.5}));
    const auto single = ek::ldl(ek::JacobiMatrix<double>({3.25}, {}));
    EXPECT_EQ(single.d, (std::vector<double>{3.25}));
    EXPECT_TRUE(single.ell.empty());
}

TEST(Ldl, NonpositivePivotIsReported) {
    const ek::JacobiMatrix<double> T({1, 1}, {2});
    try {
        ek::ldl(T);
        FAIL() << "expected an error";
    } catch (const ek::PreconditionViolation& e) {
        EXPECT_NE(std::string(e.what()).find("d_2"), std::string::npos) << e.what();
    }
}

TEST(Ldl, ReconstructionWithinBackwardBound) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto T = ek::random_jacobi<double>(15, seed, {}, true);
        const auto LDLt = ek::ldl_reconstruct(ek::ldl(T));
        const auto D = T.dense();
        for (std::size_t i = 0; i < 15; ++i)
            for (std::size_t j = 0; j < 15; ++j) EXPECT_LE(std::fabs(LDLt(i, j) - D(i, j)), 5 * u * std::fabs(D(i, j)));
    }
}

TEST(CoefficientMaps, BoundaryAndRoundtrip) {
    const auto [a1, b1] = ek::coeffs_cg_to_lanczos<double>({0.25}, {});
    EXPECT_EQ(a1, (std::vector<double>{4.0}));
    EXPECT_TRUE(b1.empty());
    EXPECT_THROW(ek::coeffs_cg_to_lanczos<double>({-1.0}, {}), ek::PreconditionViolation);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto T = ek::random_jacobi<double>(10, seed, {}, true);
        const auto [gammas, deltas] = ek::coeffs_lanczos_to_cg(T);
        const auto [alphas, betas] = ek::coeffs_cg_to_lanczos(gammas, deltas);
        for (std::size_t i = 0; i < 10; ++i) EXPECT_LE(std::fabs(alphas[i] - T.alpha()[i]), 8 * u * std::fabs(T.alpha()[i]));
        for (std::size_t i = 0; i < 9; ++i) EXPECT_LE(std::fabs(betas[i] - T.beta()[i]), 8 * u * T.beta()[i]);
    }
}

TEST(CoefficientMaps, RationalCgCoefficientsGiveExactBetaSquares) {
    // For (T, e_1) exact CG coefficients satisfy beta_{k+1}^2 = delta_k / gamma_{k-1}^2.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto T = ek::random_jacobi<double>(8, seed, {}, true);
        const auto oracle = ek::rational_cg_oracle(T.dense(), ek::DenseVector<double>::unit(8, 0), 8);
        ASSERT_EQ(oracle.iterations(), 8u);
        for (std::size_t k = 1; k < 8; ++k) {
            const ek::Rational b = ek::to_rational(T.beta()[k - 1]);
            EXPECT_EQ(oracle.delta[k - 1] / (oracle.gamma[k - 1] * oracle.gamma[k - 1]), b * b);
        }
        for (std::size_t k = 1; k <= 8; ++k) {
            const ek::Rational a = ek::to_rational(T.alpha()[k - 1]);
            ek::Rational expected = 1 / oracle.gamma[k - 1];
            if (k > 1) expected += oracle.delta[k - 2] / oracle.gamma[k - 2];
            EXPECT_EQ(expected, a);
        }
    }
}

TEST(CgHs, IdentityConvergesInOneStep) {
    const ek::DenseVector<double> b{1, -2, 3};
    const auto t = ek::cg_hs(ek::DenseMatrix<double>::identity(3), b, ek::DenseVector<double>(3), 3);
    ASSERT_EQ(t.iterations(), 1u);
    EXPECT_TRUE(ek::bitwise_equal(t.x[1], b));
    EXPECT_TRUE(ek::bitwise_equal(t.r[1], ek::DenseVector<double>(3)));
}

TEST(CgHs, IndefiniteMatrixIsRejected) {
    const ek::DenseMatrix<double> A(2, 2, {1, 0, 0, -1});
    EXPECT_THROW(ek::cg_hs(A, ek::DenseVector<double>{0, 1}, ek::DenseVector<double>(2), 2), ek::PreconditionViolation);
}

TEST(CgHs, CoefficientsMatchRationalOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 3 + seed % 10;
        ek::SplitMix64 rng(seed);
        std::vector<double> b(n);
        for (auto& x : b) x = rng.uniform(-1, 1);
        const auto T = ek::random_jacobi<double>(n, seed, {}, true);
        const auto A = ek::permute_similar(T.dense(), ek::SignedPermutation::random(n, seed));
        const ek::DenseVector<double> bv(b);
        const auto t = ek::cg_hs(A, bv, ek::DenseVector<double>(n), 3);
        const auto oracle = ek::rational_cg_oracle(A, bv, 3);
        for (std::size_t k = 0; k < std::min(t.gamma.size(), oracle.gamma.size()); ++k) {
            EXPECT_NEAR(t.gamma[k], ek::to_double(oracle.gamma[k]), 1e-12 * std::fabs(t.gamma[k]));
            // At exact termination the true delta is zero and only rounding noise remains.
            if (sgn(oracle.delta[k]) == 0) continue;
            EXPECT_NEAR(t.delta[k], ek::to_double(oracle.delta[k]), 1e-12 * std::fabs(t.delta[k]));
        }
    }
}

TEST(CgLanczos, StructuredResidualsAreExactlyOrthogonal) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 2 + seed;
        const auto T = ek::random_jacobi<double>(n, seed, {}, true);
        const auto P = ek::SignedPermutation::random(n, seed + 50);
        const auto prob = ek::assemble<double>(T, P, 1.25);
        const auto t = ek::cglanczos(prob.A, prob.v, n);
        EXPECT_TRUE(t.exact_termination);
        const auto lz = ek::lanczos(prob.A, prob.v, n);
        EXPECT_TRUE(ek::bitwise_equal(t.lanczos.tridiagonal().dense(), lz.tridiagonal().dense()));
        std::vector<ek::DenseVector<double>> q;
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_TRUE(ek::bitwise_equal(t.rho[k], std::fabs(t.r[k][P.target(k)])));
            q.push_back(ek::divided(t.r[k], t.rho[k]));
        }
        const auto Q = ek::DenseMatrix<double>::from_columns(q, n);
        EXPECT_TRUE(ek::bitwise_equal(ek::matmul(Q.transposed(), Q), ek::DenseMatrix<double>::identity(n)));
    }
}

TEST(CgLanczos, RhoIsTheProductOfEll) {
    const auto T = ek::random_jacobi<double>(10, 9, {}, true);
    const auto t = ek::cglanczos(T.dense(), ek::DenseVector<double>::unit(10, 0, 3.0), 10);
    double rho = 3.0;
    for (std::size_t k = 1; k < t.rho.size() - 1; ++k) {
        rho = t.ell[k - 1] * rho;
        EXPECT_TRUE(ek::bitwise_equal(t.rho[k], rho));
    }
}

TEST(CgLanczos, AgreesWithHsCgBeforeOrthogonalityDegrades) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 4 + seed % 8;
        ek::SplitMix64 rng(seed + 1000);
        std::vector<double> b(n);
        for (auto& x : b) x = rng.uniform(-1, 1);
        const auto A = ek::random_jacobi<double>(n, seed, {}, true).dense();
        const ek::DenseVector<double> bv(b);
        const auto hs = ek::cg_hs(A, bv, ek::DenseVector<double>(n), n);
        const auto cl = ek::cglanczos(A, bv, n);
        for (std::size_t k = 1; k <= std::min<std::size_t>(3, std::min(hs.iterations(), cl.iterations())); ++k) {
            const double scale = ek::norm2(hs.x[k]);
            EXPECT_LE(ek::norm2(ek::difference(hs.x[k], cl.x[k])), 1e-8 * scale);
        }
    }
}

TEST(CgLanczos, ErrorWithinBoundOnSmallInstances) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 2 + seed % 11;
        const auto T = ek::random_jacobi<double>(n, seed, {}, true);
        const auto prob = ek::assemble<double>(T, ek::SignedPermutation::random(n, seed), 0.5);
        const double t = 5 * u * ek::jacobi_condition_number(T);
        const double bound = t / (1 - t);
        const auto cl = ek::cglanczos(prob.A, prob.v, n);
        const auto oracle = ek::rational_cg_oracle(prob.A, prob.v, n);
        for (std::size_t k = 1; k <= std::min(cl.iterations(), oracle.iterations()); ++k) {
            EXPECT_LE(relative_error(oracle.x[k], cl.x[k]), bound);
            const auto direct = ek::cg_from_lanczos_solve(prob.A, prob.v, k);
            EXPECT_LE(relative_error(oracle.x[k], direct.x), bound);
        }
    }
}

TEST(CgLanczos, NonpositivePivotIsAnError) {
    const ek::DenseMatrix<double> A(2, 2, {0, 1, 1, 0});
    EXPECT_THROW(ek::cglanczos(A, ek::DenseVector<double>{1, 0}, 2), ek::PreconditionViolation);
}

TEST(LanczosSolve, IdentityAndBreakdown) {
    const ek::DenseVector<double> b{0, 2, 0};
    const auto s = ek::cg_from_lanczos_solve(ek::DenseMatrix<double>::identity(3), b, 1);
    EXPECT_TRUE(ek::bitwise_equal(s.y, ek::DenseVector<double>{2}));
    EXPECT_TRUE(ek::bitwise_equal(s.x, b));
    const auto early = ek::cg_from_lanczos_solve(ek::DenseMatrix<double>::identity(3), b, 3);
    EXPECT_TRUE(early.breakdown);
    EXPECT_EQ(early.steps, 1u);
}

TEST(RationalOracle, BasicProperties) {
    const auto one = ek::rational_cg_oracle(ek::DenseMatrix<double>::identity(4), ek::DenseVector<double>{1, 2, 3, 4}, 4);
    ASSERT_EQ(one.iterations(), 1u);
    EXPECT_EQ(one.x[1], ek::to_rational(ek::DenseVector<double>{1, 2, 3, 4}));

    const auto T = ek::random_jacobi<double>(9, 5, {}, true);
    ek::SplitMix64 rng(3);
    std::vector<double> b(9);
    for (auto& x : b) x = rng.uniform(-1, 1);
    const auto A = T.dense();
    const auto oracle = ek::rational_cg_oracle(A, ek::DenseVector<double>(b), 9);
    const auto Aq = ek::to_rational(A);
    ASSERT_EQ(oracle.iterations(), 9u);
    for (std::size_t i = 0; i <= 9; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_EQ(sgn(ek::dot(oracle.r[i], oracle.r[j])), 0);
            if (i < 9) EXPECT_EQ(sgn(ek::dot(oracle.p[i], ek::matvec(Aq, oracle.p[j]))), 0);
        }
    EXPECT_EQ(sgn(oracle.energy_error2.back()), 0);
}

TEST(RationalOracle, Guards) {
    EXPECT_THROW(ek::rational_cg_oracle(ek::DenseMatrix<double>::identity(49), ek::DenseVector<double>::unit(49, 0), 1),
                 ek::PreconditionViolation);
    const ek::DenseMatrix<double> A(2, 2, {1, 2, 2, 1});
    EXPECT_THROW(ek::rational_cg_oracle(A, ek::DenseVector<double>{1, 0}, 2), ek::PreconditionViolation);
}
