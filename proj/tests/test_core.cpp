// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/core/rational.hpp"
#include "exactkrylov/core/rng.hpp"
#include "exactkrylov/problems/signed_permutation.hpp"

namespace ek = exactkrylov;

template <class S>
class CoreTyped : public ::testing::Test {};
using Precisions = ::testing::Types<double, float>;
TYPED_TEST_SUITE(CoreTyped, Precisions);

TYPED_TEST(CoreTyped, MatvecIdentity) {
    using S = TypeParam;
    const auto y = ek::matvec(ek::DenseMatrix<S>::identity(3), ek::DenseVector<S>{1, 2, 3});
    EXPECT_TRUE(ek::bitwise_equal(y, ek::DenseVector<S>{1, 2, 3}));
}

TYPED_TEST(CoreTyped, MatvecHandEvaluated) {
    using S = TypeParam;
    const ek::DenseMatrix<S> A(2, 2, {2, 1, 1, 2});
    EXPECT_TRUE(ek::bitwise_equal(ek::matvec(A, ek::DenseVector<S>{1, 1}), ek::DenseVector<S>{3, 3}));
}

TYPED_TEST(CoreTyped, MatvecOnSignedUnitSelectsColumn) {
    using S = TypeParam;
    const ek::DenseMatrix<S> A(3, 3, {S(0.1), S(-2), S(0), S(7), S(1e-3), S(-0.25), S(0), S(5), S(3)});
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_TRUE(ek::bitwise_equal(ek::matvec(A, ek::DenseVector<S>::unit(3, j)), A.column(j)));
        // Sums start at +0, so a zero entry of A stays +0 after scaling by -1.
        std::vector<S> expected(3);
        for (std::size_t i = 0; i < 3; ++i) expected[i] = A(i, j) == S(0) ? S(0) : -A(i, j);
        EXPECT_TRUE(ek::bitwise_equal(ek::matvec(A, ek::DenseVector<S>::unit(3, j, S(-1))), ek::DenseVector<S>(expected)));
    }
}

TYPED_TEST(CoreTyped, MatvecRejectsShapeMismatch) {
    using S = TypeParam;
    EXPECT_THROW(ek::matvec(ek::DenseMatrix<S>(2, 3), ek::DenseVector<S>(2)), ek::DimensionMismatch);
}

TYPED_TEST(CoreTyped, MatvecOverflowIsAnError) {
    using S = TypeParam;
    const S big = std::numeric_limits<S>::max();
    const ek::DenseMatrix<S> A(1, 2, {big, big});
    EXPECT_THROW(ek::matvec(A, ek::DenseVector<S>{1, 1}), ek::NonFiniteValue);
}

TYPED_TEST(CoreTyped, MatvecIsDeterministic) {
    using S = TypeParam;
    ek::SplitMix64 rng(11);
    std::vector<S> a(25), x(5);
    for (auto& e : a) e = static_cast<S>(rng.uniform(-1, 1));
    for (auto& e : x) e = static_cast<S>(rng.uniform(-1, 1));
    const ek::DenseMatrix<S> A(5, 5, a);
    const ek::DenseVector<S> v(x);
    EXPECT_TRUE(ek::bitwise_equal(ek::matvec(A, v), ek::matvec(A, v)));
}

TYPED_TEST(CoreTyped, Norm2Cases) {
    using S = TypeParam;
    EXPECT_TRUE(ek::bitwise_equal(ek::norm2(ek::DenseVector<S>{3, 4}), S(5)));
    EXPECT_TRUE(ek::bitwise_equal(ek::norm2(ek::DenseVector<S>(4)), S(0)));
    const S alpha = static_cast<S>(-0.3);
    EXPECT_TRUE(ek::bitwise_equal(ek::norm2(ek::DenseVector<S>::unit(6, 4, alpha)), std::fabs(alpha)));
}

TYPED_TEST(CoreTyped, Norm2OverflowIsAnError) {
    using S = TypeParam;
    EXPECT_THROW(ek::norm2(ek::DenseVector<S>{std::numeric_limits<S>::max(), S(1)}), ek::NonFiniteValue);
}

TYPED_TEST(CoreTyped, BitwiseEqualDistinguishesZeroSigns) {
    using S = TypeParam;
    EXPECT_TRUE(ek::bitwise_equal(S(1.5), S(1.5)));
    EXPECT_FALSE(ek::bitwise_equal(S(0), -S(0)));
    const S eps = std::numeric_limits<S>::epsilon();
    EXPECT_FALSE(ek::bitwise_equal(S(1), S(1) + eps));
    const ek::DenseVector<S> a{1, 0, 2}, b{1, -S(0), 2};
    const auto mm = ek::first_mismatch(a, b);
    ASSERT_TRUE(mm.has_value());
    EXPECT_EQ(mm->row, 1u);
    EXPECT_THROW(ek::first_mismatch(a, ek::DenseVector<S>(2)), ek::DimensionMismatch);
}

TYPED_TEST(CoreTyped, SqrtSquareRoundtripExamples) {
    using S = TypeParam;
    EXPECT_TRUE(ek::sqrt_square_roundtrip(S(3)));
    EXPECT_TRUE(ek::sqrt_square_roundtrip(static_cast<S>(0.1)));
    EXPECT_TRUE(ek::sqrt_square_roundtrip(static_cast<S>(-7.25)));
    EXPECT_THROW(ek::sqrt_square_roundtrip(std::numeric_limits<S>::max()), ek::PreconditionViolation);
    EXPECT_THROW(ek::sqrt_square_roundtrip(std::numeric_limits<S>::min()), ek::PreconditionViolation);
    EXPECT_THROW(ek::sqrt_square_roundtrip(std::numeric_limits<S>::quiet_NaN()), ek::NonFiniteValue);
}

TYPED_TEST(CoreTyped, ElementaryOperationCatalog) {
    using S = TypeParam;
    ek::SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const S a = static_cast<S>(std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.between(-40, 40))));
        if (a == S(0)) continue;
        EXPECT_TRUE(ek::bitwise_equal(S(1) * a, a));
        EXPECT_TRUE(ek::bitwise_equal(S(0) * std::fabs(a), S(0)));
        EXPECT_TRUE(ek::bitwise_equal(a - a, S(0)));
        EXPECT_TRUE(ek::bitwise_equal(a / a, S(1)));
    }
}

TYPED_TEST(CoreTyped, SignedPermutationIsExactlyOrthogonal) {
    using S = TypeParam;
    const auto P = ek::SignedPermutation::random(7, 99).dense<S>();
    EXPECT_TRUE(ek::bitwise_equal(ek::matmul(P.transposed(), P), ek::DenseMatrix<S>::identity(7)));
    const ek::DenseVector<S> v{S(0.1), S(-2), S(3), S(4.5), S(-1e-3), S(6), S(7)};
    const auto Pv = ek::matvec(P, v);
    EXPECT_TRUE(ek::bitwise_equal(ek::matvec(P.transposed(), Pv), v));
}

TYPED_TEST(CoreTyped, ContainersRejectNonFinite) {
    using S = TypeParam;
    EXPECT_THROW(ek::DenseVector<S>({S(1), std::numeric_limits<S>::infinity()}), ek::NonFiniteValue);
    EXPECT_THROW(ek::DenseMatrix<S>(1, 1, {std::numeric_limits<S>::quiet_NaN()}), ek::NonFiniteValue);
    EXPECT_THROW(ek::DenseMatrix<S>(2, 2, {S(1)}), ek::DimensionMismatch);
}

TEST(HexFloat, RoundTripsBothPrecisions) {
    for (double x : {0.1, -3.0, 1e-300, 0x1.fffffffffffffp+1023, 0.0}) {
        EXPECT_TRUE(ek::bitwise_equal(ek::parse_scalar<double>(ek::format_hex(x)), x));
        EXPECT_TRUE(ek::bitwise_equal(ek::parse_scalar<double>(ek::format_shortest(x)), x));
    }
    for (float x : {0.1f, -3.0f, 1e-30f, 0.0f}) {
        EXPECT_TRUE(ek::bitwise_equal(ek::parse_scalar<float>(ek::format_hex(x)), x));
        EXPECT_TRUE(ek::bitwise_equal(ek::parse_scalar<float>(ek::format_shortest(x)), x));
    }
    EXPECT_TRUE(ek::bitwise_equal(ek::parse_scalar<double>("-0x0p+0"), -0.0));
    EXPECT_EQ(ek::format_hex(3.0), "0x1.8p+1");
}

TEST(HexFloat, RejectsMalformedAndNonFinite) {
    EXPECT_THROW(ek::parse_scalar<double>("abc"), ek::PreconditionViolation);
    EXPECT_THROW(ek::parse_scalar<double>("1.0x"), ek::PreconditionViolation);
    EXPECT_THROW(ek::parse_scalar<double>("inf"), ek::PreconditionViolation);
    EXPECT_THROW(ek::parse_scalar<float>("1e60"), ek::PreconditionViolation);
}

TEST(Precision, Names) {
    EXPECT_EQ(ek::to_string(ek::Precision::binary64), "binary64");
    EXPECT_EQ(ek::parse_precision("binary32"), ek::Precision::binary32);
    EXPECT_THROW(ek::parse_precision("binary16"), ek::PreconditionViolation);
}

TEST(SplitMix64, ReferenceOutputs) {
    // Published reference stream for seed 1234567.
    ek::SplitMix64 rng(1234567);
    EXPECT_EQ(rng.next(), 6457827717110365317ULL);
    EXPECT_EQ(rng.next(), 3203168211198807973ULL);
    EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(Rational, RoundingToNearestDouble) {
    EXPECT_EQ(ek::to_double(ek::Rational(1, 3)), 1.0 / 3.0);
    EXPECT_EQ(ek::to_double(ek::Rational(2, 3)), 2.0 / 3.0);
    EXPECT_EQ(ek::to_double(ek::to_rational(0.1)), 0.1);
    // 1 + 2^-53 is a tie between 1 and 1 + 2^-52: ties go to even.
    ek::Rational tie = ek::Rational(1) + ek::Rational(1, mpz_class(1) << 53);
    EXPECT_EQ(ek::to_double(tie), 1.0);
    ek::Rational tie_up = ek::Rational(1) + ek::Rational(3, mpz_class(1) << 53);
    EXPECT_EQ(ek::to_double(tie_up), 1.0 + 0x1p-51);
    EXPECT_EQ(ek::to_double(-ek::Rational(1, 10)), -0.1);
}

TEST(Rational, SolveSpdExact) {
    ek::RationalMatrix A(2, 2);
    A(0, 0) = 2;
    A(0, 1) = 1;
    A(1, 0) = 1;
    A(1, 1) = 2;
    const ek::RationalVector x = ek::solve_spd_exact(A, {1, 0});
    EXPECT_EQ(x[0], ek::Rational(2, 3));
    EXPECT_EQ(x[1], ek::Rational(-1, 3));
    ek::RationalMatrix B(2, 2);
    B(0, 0) = 1;
    B(0, 1) = 2;
    B(1, 0) = 2;
    B(1, 1) = 1;
    EXPECT_THROW(ek::solve_spd_exact(B, {1, 0}), ek::PreconditionViolation);
}
