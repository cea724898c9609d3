// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "exactkrylov/harness/metrics.hpp"
#include "exactkrylov/krylov/arnoldi.hpp"
#include "exactkrylov/krylov/block_lanczos.hpp"
#include "exactkrylov/krylov/gmres.hpp"
#include "exactkrylov/krylov/golub_kahan.hpp"
#include "exactkrylov/krylov/nonsym_lanczos.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace ek = exactkrylov;

template <class S>
class KrylovTyped : public ::testing::Test {};
using Precisions = ::testing::Types<double, float>;
TYPED_TEST_SUITE(KrylovTyped, Precisions);

namespace {

template <class S>
ek::DenseMatrix<S> random_matrix(std::size_t n, std::uint64_t seed, bool symmetric) {
    ek::SplitMix64 rng(seed);
    ek::DenseMatrix<S> A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (symmetric && j < i) {
                A(i, j) = A(j, i);
            } else {
                A(i, j) = static_cast<S>(rng.uniform(-1, 1));
            }
        }
    return A;
}

template <class S>
ek::DenseVector<S> random_vector(std::size_t n, std::uint64_t seed) {
    ek::SplitMix64 rng(seed);
    std::vector<S> v(n);
    for (auto& x : v) x = static_cast<S>(rng.uniform(-1, 1));
    return ek::DenseVector<S>(v);
}

}  // namespace

TYPED_TEST(KrylovTyped, ArnoldiStructuredIsExact) {
    using S = TypeParam;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 1 + seed % 15;
        const auto H = ek::random_hessenberg<S>(n, seed);
        const auto P = ek::SignedPermutation::random(n, seed + 100);
        const auto prob = ek::assemble<S>(H, P, S(3));
        const auto res = ek::arnoldi(prob.A, prob.v, n);
        ASSERT_EQ(res.steps(), n);
        EXPECT_EQ(res.breakdown, n);
        EXPECT_TRUE(ek::bitwise_equal(res.hessenberg(n), H.dense()));
        for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(ek::bitwise_equal(res.basis[j], P.template column<S>(j)));
        EXPECT_TRUE(ek::bitwise_equal(ek::arnoldi_residual(prob.A, res), S(0)));
    }
}

TYPED_TEST(KrylovTyped, ArnoldiSizeOne) {
    using S = TypeParam;
    const ek::DenseMatrix<S> A(1, 1, {S(-2.5)});
    const auto res = ek::arnoldi(A, ek::DenseVector<S>{S(-4)}, 1);
    EXPECT_EQ(res.steps(), 1u);
    EXPECT_EQ(res.breakdown, 1u);
    EXPECT_EQ(res.H(0, 0), S(-2.5));
    EXPECT_TRUE(ek::bitwise_equal(res.basis[0], ek::DenseVector<S>{S(-1)}));
}

TYPED_TEST(KrylovTyped, NonsymLanczosStructuredIsExact) {
    using S = TypeParam;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 1 + seed % 12;
        const auto T = ek::random_nonsym_tridiagonal<S>(n, seed);
        const auto P = ek::SignedPermutation::random(n, seed + 7);
        const auto prob = ek::assemble_nonsym<S>(T, P, S(2), S(0.5));
        const auto res = ek::nonsym_lanczos(prob.A, prob.v, prob.w, n);
        EXPECT_EQ(res.breakdown, n);
        EXPECT_TRUE(ek::bitwise_equal(res.tridiagonal().dense(), T.dense()));
        for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(ek::bitwise_equal(res.v_basis[j], P.template column<S>(j)));
    }
}

TEST(NonsymLanczos, SymmetricWithEqualStartReducesToLanczos) {
    const auto A = random_matrix<double>(8, 3, true);
    const auto v = random_vector<double>(8, 4);
    const auto lz = ek::lanczos(A, v, 6);
    const auto bl = ek::nonsym_lanczos(A, v, ek::divided(v, ek::norm2(v)), 6);
    ASSERT_EQ(bl.steps(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(bl.alpha[i], lz.alpha[i], 1e-12);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(bl.gamma[i], lz.beta[i], 1e-12);
        EXPECT_NEAR(bl.beta[i], lz.beta[i], 1e-12);
    }
}

TEST(NonsymLanczos, BasesAreBiorthogonal) {
    const auto A = random_matrix<double>(10, 5, false);
    const auto v = random_vector<double>(10, 6);
    const auto w = random_vector<double>(10, 7);
    const auto res = ek::nonsym_lanczos(A, v, w, 5);
    for (std::size_t i = 0; i < res.steps(); ++i)
        for (std::size_t j = 0; j < res.steps(); ++j)
            EXPECT_NEAR(ek::dot(res.w_basis[i], res.v_basis[j]), i == j ? 1.0 : 0.0, 1e-10) << i << "," << j;
}

TEST(NonsymLanczos, SeriousBreakdownAndBadStarts) {
    const ek::DenseMatrix<double> A(2, 2, {0, 1, 1, 0});
    // w^T v_1 = 0 is an invalid start.
    EXPECT_THROW(ek::nonsym_lanczos(A, ek::DenseVector<double>{1, 0}, ek::DenseVector<double>{0, 1}, 2),
                 ek::PreconditionViolation);
    EXPECT_THROW(ek::nonsym_lanczos(A, ek::DenseVector<double>(2), ek::DenseVector<double>{0, 1}, 2),
                 ek::PreconditionViolation);
    // A e_1 = e_2 but A^T e_1 = 0, so beta_2 = 0 while gamma_2 = 1.
    const ek::DenseMatrix<double> C(2, 2, {0, 0, 1, 0});
    EXPECT_THROW(ek::nonsym_lanczos(C, ek::DenseVector<double>{1, 0}, ek::DenseVector<double>{1, 0}, 2), ek::SeriousBreakdown);
}

TYPED_TEST(KrylovTyped, GolubKahanStructuredIsExact) {
    using S = TypeParam;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 1 + seed % 12;
        const auto L = ek::random_lower_bidiagonal<S>(n, seed);
        const auto P = ek::SignedPermutation::random(n, seed + 1);
        const auto prob = ek::assemble<S>(L, P, S(1.5));
        const auto res = ek::golub_kahan(prob.A, prob.v, n);
        ASSERT_EQ(res.steps(), n);
        EXPECT_TRUE(ek::bitwise_equal(res.bidiagonal(n).dense(), L.dense()));
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_TRUE(ek::bitwise_equal(res.s_basis[j], P.template column<S>(j)));
            EXPECT_TRUE(ek::bitwise_equal(res.w_basis[j], P.template column<S>(j)));
        }
        ASSERT_TRUE(res.breakdown.has_value());
        EXPECT_EQ(res.breakdown->index, n + 1);
        EXPECT_EQ(res.breakdown->coefficient, ek::BidiagBreakdown::Coefficient::delta);
        EXPECT_TRUE(ek::bitwise_equal(ek::golub_kahan_residual(prob.A, res), S(0)));
    }
}

TEST(GolubKahan, Identity) {
    const auto res = ek::golub_kahan(ek::DenseMatrix<double>::identity(3), ek::DenseVector<double>{0, 3, 4}, 3);
    ASSERT_EQ(res.steps(), 1u);
    EXPECT_EQ(res.delta[0], 5.0);
    EXPECT_EQ(res.gamma[0], 1.0);
    ASSERT_TRUE(res.breakdown.has_value());
    EXPECT_EQ(res.breakdown->index, 2u);
    EXPECT_EQ(res.breakdown->coefficient, ek::BidiagBreakdown::Coefficient::delta);
}

TEST(GolubKahan, GeneralInputResidualIsSmall) {
    const auto A = random_matrix<double>(12, 8, false);
    const auto res = ek::golub_kahan(A, random_vector<double>(12, 9), 6);
    EXPECT_LE(ek::golub_kahan_residual(A, res), 1e-12);
    EXPECT_LE(ek::golub_kahan_residual_transposed(A, res), 1e-12);
}

TYPED_TEST(KrylovTyped, BlockLanczosStructuredIsExact) {
    using S = TypeParam;
    for (auto gs : {ek::GramSchmidt::cgs, ek::GramSchmidt::mgs})
        for (std::size_t p : {1u, 2u, 3u})
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                const std::size_t m = 1 + seed % 5;
                const auto T = ek::random_block_tridiagonal<S>(m, p, seed);
                const auto P = ek::SignedBlockPermutation::random(m, p, seed + 3);
                const auto prob = ek::assemble_block<S>(T, P);
                const auto res = ek::block_lanczos(prob.A, prob.U1, m, gs);
                ASSERT_EQ(res.steps(), m);
                EXPECT_EQ(res.breakdown, m);
                EXPECT_TRUE(ek::bitwise_equal(res.projected(m), T.dense()));
                const auto flat = P.flatten();
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t c = 0; c < p; ++c)
                        EXPECT_TRUE(ek::bitwise_equal(res.U[i].column(c), flat.template column<S>(i * p + c)));
            }
}

TEST(BlockLanczos, SingleColumnMatchesLanczos) {
    const auto A = random_matrix<double>(9, 10, true);
    const auto v = ek::divided(random_vector<double>(9, 11), ek::norm2(random_vector<double>(9, 11)));
    const auto lz = ek::lanczos(A, v, 6);
    const auto bl = ek::block_lanczos(A, ek::DenseMatrix<double>::from_columns(std::vector{v}, 9), 6);
    ASSERT_EQ(bl.steps(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(bl.M[i](0, 0), lz.alpha[i], 1e-12);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(bl.B[i](0, 0), lz.beta[i], 1e-12);
}

TEST(BlockLanczos, BlocksAreOrthonormal) {
    const auto A = random_matrix<double>(12, 12, true);
    ek::DenseMatrix<double> X(12, 3);
    ek::SplitMix64 rng(13);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t c = 0; c < 3; ++c) X(i, c) = rng.uniform(-1, 1);
    const auto U1 = ek::gram_schmidt_qr(X, ek::GramSchmidt::mgs).Q;
    const auto res = ek::block_lanczos(A, U1, 3);
    for (std::size_t i = 0; i < res.steps(); ++i)
        for (std::size_t j = 0; j < res.steps(); ++j) {
            const auto G = ek::matmul(res.U[i].transposed(), res.U[j]);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    EXPECT_NEAR(G(r, c), (i == j && r == c) ? 1.0 : 0.0, 1e-10);
        }
}

TEST(GramSchmidtQr, RankDeficientInputReportsZeroPivot) {
    const ek::DenseMatrix<double> X(3, 2, {1, 2, 0, 0, 0, 0});
    const auto qr = ek::gram_schmidt_qr(X, ek::GramSchmidt::cgs);
    EXPECT_EQ(qr.zero_pivot, 1u);
}

TEST(Gmres, IdentityGivesStartVector) {
    const ek::DenseVector<double> v{0, 0, 1};
    const auto res = ek::gmres_structured(ek::DenseMatrix<double>::identity(3), v, 1);
    EXPECT_TRUE(ek::bitwise_equal(res.x_bar, v));
    EXPECT_EQ(res.x_error, 0.0);
}

TEST(Gmres, StructuredIdentityAndConditioningBound) {
    for (std::size_t n : {3u, 6u, 9u, 12u})
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto H = ek::random_hessenberg<double>(n, seed * 31 + n);
            const auto prob = ek::assemble<double>(H, ek::SignedPermutation::random(n, seed), 1.0);
            for (std::size_t k = 1; k <= n; ++k) {
                const auto res = ek::gmres_structured(prob.A, prob.v, k);
                // x_bar = P_k y_bar holds exactly, so the two relative errors agree.
                EXPECT_LE(std::fabs(res.x_error - res.y_error), 1e-15 * std::max(1.0, res.y_error));
                Eigen::MatrixXd Hk(k + 1, k);
                for (std::size_t i = 0; i <= k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        Hk(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                            i < n ? H(i, j) : 0.0;
                const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Hk);
                const auto& sv = svd.singularValues();
                const double kappa = sv(0) / sv(sv.size() - 1);
                EXPECT_LE(res.y_error, 1e3 * static_cast<double>(k) * 0x1p-53 * kappa) << n << " " << seed << " " << k;
            }
        }
}

TEST(HessenbergLeastSquares, ExactAgreesWithGivens) {
    const auto H = ek::random_hessenberg<double>(6, 2).dense();
    ek::DenseMatrix<double> Hk(7, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) Hk(i, j) = H(i, j);
    Hk(6, 5) = 0.25;
    const auto y = ek::hessenberg_least_squares(Hk, 1.0);
    const auto exact = ek::hessenberg_least_squares_exact(Hk);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(y[i], ek::to_double(exact[i]), 1e-10 * std::fabs(y[i]) + 1e-14);
}

TEST(SweepNames, GramSchmidt) {
    EXPECT_EQ(ek::parse_gram_schmidt("mgs"), ek::GramSchmidt::mgs);
    EXPECT_EQ(ek::to_string(ek::GramSchmidt::cgs), "cgs");
    EXPECT_THROW(ek::parse_gram_schmidt("qr"), ek::PreconditionViolation);
}
