// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "exactkrylov/harness/metrics.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace ek = exactkrylov;

template <class S>
class LanczosTyped : public ::testing::Test {};
using Precisions = ::testing::Types<double, float>;
TYPED_TEST_SUITE(LanczosTyped, Precisions);

namespace {

template <class S>
void expect_structured_exact(const ek::LanczosResult<S>& res, const ek::JacobiMatrix<S>& T,
                             const ek::SignedPermutation& P) {
    const std::size_t n = T.size();
    ASSERT_EQ(res.steps(), n);
    ASSERT_EQ(res.breakdown, n);
    EXPECT_TRUE(ek::bitwise_equal(res.tridiagonal().dense(), T.dense()));
    EXPECT_TRUE(ek::bitwise_equal(res.beta_next(), S(0)));
    for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(ek::bitwise_equal(res.basis[j], P.template column<S>(j))) << j;
}

}  // namespace

TYPED_TEST(LanczosTyped, DiagonalWithE1BreaksDownImmediately) {
    using S = TypeParam;
    const std::vector<S> d{1, 2, 3, 4};
    const auto res = ek::lanczos(ek::DenseMatrix<S>::diagonal(d), ek::DenseVector<S>::unit(4, 0), 4);
    EXPECT_EQ(res.breakdown, 1u);
    ASSERT_EQ(res.steps(), 1u);
    EXPECT_EQ(res.alpha[0], S(1));
    ASSERT_EQ(res.basis.size(), 1u);
    EXPECT_TRUE(ek::bitwise_equal(res.basis[0], ek::DenseVector<S>::unit(4, 0)));
}

TYPED_TEST(LanczosTyped, JacobiWithE1IsExact) {
    using S = TypeParam;
    for (auto variant : {ek::LanczosVariant::mgs, ek::LanczosVariant::cgs}) {
        const auto T = ek::random_jacobi<S>(12, 4);
        const auto res = ek::lanczos(T.dense(), ek::DenseVector<S>::unit(12, 0), 12, variant);
        expect_structured_exact(res, T, ek::SignedPermutation::identity(12));
        EXPECT_TRUE(ek::bitwise_equal(ek::lanczos_residual(T.dense(), res), S(0)));
    }
}

TYPED_TEST(LanczosTyped, PermutedStructuredInstancesAreExact) {
    using S = TypeParam;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 1 + seed % 20;
        const auto T = ek::random_jacobi<S>(n, seed, {{-4, 4}, {0.01, 100}, ek::Sampling::log_uniform});
        const auto P = ek::SignedPermutation::random(n, seed * 7 + 1);
        const auto prob = ek::assemble<S>(T, P, static_cast<S>(0.5 + seed));
        for (auto variant : {ek::LanczosVariant::mgs, ek::LanczosVariant::cgs}) {
            const auto res = ek::lanczos(prob.A, prob.v, n, variant);
            expect_structured_exact(res, T, P);
            EXPECT_TRUE(ek::bitwise_equal(res.beta1, prob.beta1));
        }
    }
}

TYPED_TEST(LanczosTyped, ExtremeCoefficientsInsideTheGuard) {
    using S = TypeParam;
    const S lo = ek::guard_min<S>(), hi = ek::guard_max<S>();
    const ek::JacobiMatrix<S> T({S(1), S(-2), S(0), S(3)}, {lo, hi, lo});
    const auto P = ek::SignedPermutation::random(4, 12);
    const auto prob = ek::assemble<S>(T, P, hi);
    expect_structured_exact(ek::lanczos(prob.A, prob.v, 4), T, P);
}

TYPED_TEST(LanczosTyped, ScaleEquivariance) {
    using S = TypeParam;
    const auto T = ek::random_jacobi<S>(9, 21);
    const auto P = ek::SignedPermutation::random(9, 22);
    const auto a = ek::lanczos(ek::assemble<S>(T, P, S(1)).A, ek::assemble<S>(T, P, S(1)).v, 9);
    const auto b = ek::lanczos(ek::assemble<S>(T, P, S(1024.5)).A, ek::assemble<S>(T, P, S(1024.5)).v, 9);
    EXPECT_EQ(b.beta1, S(1024.5));
    EXPECT_TRUE(ek::bitwise_equal(a.tridiagonal().dense(), b.tridiagonal().dense()));
    for (std::size_t j = 0; j < 9; ++j) EXPECT_TRUE(ek::bitwise_equal(a.basis[j], b.basis[j]));
}

TYPED_TEST(LanczosTyped, DeficientGradeStopsAtD) {
    using S = TypeParam;
    const auto T = ek::random_jacobi<S>(5, 3);
    const auto P = ek::SignedPermutation::random(5, 4);
    const auto R1 = ek::SignedPermutation::random(3, 5).dense<S>();
    const ek::DenseMatrix<S> R2(3, 3, {1, 2, 0, 2, S(-1), S(0.5), 0, S(0.5), 3});
    const auto prob = ek::extend_deficient(T, P, R1, R2, S(2));
    const auto res = ek::lanczos(prob.A, prob.v, 8);
    EXPECT_EQ(res.breakdown, 5u);
    EXPECT_TRUE(ek::bitwise_equal(res.beta_next(), S(0)));
    EXPECT_TRUE(ek::bitwise_equal(res.tridiagonal().dense(), T.dense()));
}

TYPED_TEST(LanczosTyped, Preconditions) {
    using S = TypeParam;
    ek::DenseMatrix<S> A = ek::DenseMatrix<S>::identity(3);
    EXPECT_THROW(ek::lanczos(A, ek::DenseVector<S>::unit(3, 0), 4), ek::PreconditionViolation);
    EXPECT_THROW(ek::lanczos(A, ek::DenseVector<S>(3), 2), ek::PreconditionViolation);
    EXPECT_THROW(ek::lanczos(A, ek::DenseVector<S>(2), 1), ek::DimensionMismatch);
    A(0, 1) = S(1);
    EXPECT_THROW(ek::lanczos(A, ek::DenseVector<S>::unit(3, 0), 2), ek::PreconditionViolation);
}

TEST(Lanczos, ResidualOnGeneralInputIsSmall) {
    const auto lambda = ek::strakos_spectrum<double>(24, 1e-3, 1.0, 0.7);
    const auto A = ek::DenseMatrix<double>::diagonal(lambda);
    const ek::DenseVector<double> ones(std::vector<double>(24, 1.0));
    const auto res = ek::lanczos(A, ones, 24, ek::LanczosVariant::mgs, ek::Reorthogonalization::twice);
    EXPECT_LE(ek::lanczos_residual(A, res), 10.0 * 24 * 0x1p-53 * ek::frobenius_norm(A));
    EXPECT_TRUE(ek::bitwise_equal(ek::lanczos_residual(A, ek::LanczosResult<double>{}), 0.0));
}

TEST(Lanczos, DoubleReorthogonalizationKeepsOrthogonality) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const std::size_t n = 60 + 40 * seed;
        ek::SplitMix64 rng(seed);
        std::vector<double> d(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = std::exp(rng.uniform(-6, 0));
            v[i] = rng.uniform(-1, 1);
        }
        const auto res = ek::lanczos(ek::DenseMatrix<double>::diagonal(d), ek::DenseVector<double>(v), n / 2,
                                     ek::LanczosVariant::cgs, ek::Reorthogonalization::twice);
        const std::size_t k = res.steps();
        EXPECT_LE(ek::loss_of_orthogonality(res.basis_matrix(k)), 1e3 * 0x1p-53 * static_cast<double>(k));
    }
}

TEST(Lanczos, WithoutReorthogonalizationOrthogonalityIsLost) {
    const auto lambda = ek::strakos_spectrum<double>(48, 1e-3, 1.0, 0.7);
    const ek::DenseVector<double> ones(std::vector<double>(48, 1.0 / std::sqrt(48.0)));
    const auto res = ek::lanczos(ek::DenseMatrix<double>::diagonal(lambda), ones, 48);
    EXPECT_GT(ek::loss_of_orthogonality(res.basis_matrix(res.steps())), 1e-8);
}

TEST(Lanczos, VariantNames) {
    EXPECT_EQ(ek::parse_lanczos_variant("cgs"), ek::LanczosVariant::cgs);
    EXPECT_EQ(ek::to_string(ek::LanczosVariant::mgs), "mgs");
    EXPECT_EQ(ek::parse_reorthogonalization("double"), ek::Reorthogonalization::twice);
    EXPECT_EQ(ek::to_string(ek::Reorthogonalization::full), "full");
    EXPECT_THROW(ek::parse_lanczos_variant("householder"), ek::PreconditionViolation);
}
