// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "exactkrylov/harness/csv.hpp"
#include "exactkrylov/harness/exactness.hpp"
#include "exactkrylov/harness/experiments.hpp"
#include "exactkrylov/harness/metrics.hpp"
#include "exactkrylov/harness/roundtrip.hpp"
#include "exactkrylov/harness/sweep.hpp"
#include "exactkrylov/problems/generators.hpp"
#include "exactkrylov/problems/spectrum.hpp"
#include "exactkrylov/problems/structured.hpp"

namespace ek = exactkrylov;

TEST(Metrics, IdentityHasNoLoss) {
    EXPECT_TRUE(ek::bitwise_equal(ek::loss_of_orthogonality(ek::DenseMatrix<double>::identity(5)), 0.0));
    const auto single = ek::DenseMatrix<double>::from_columns(std::vector{ek::DenseVector<double>{0.6, 0.8}}, 2);
    EXPECT_LE(ek::loss_of_orthogonality(single), 4 * 0x1p-53);
    EXPECT_TRUE(ek::bitwise_equal(
        ek::a_orthogonality_loss(ek::DenseMatrix<double>::identity(3), ek::DenseMatrix<double>::identity(3)), 0.0));
}

TEST(Metrics, KnownLossAndPreconditions) {
    // Columns e_1 and (e_1 + e_2)/sqrt(2): off-diagonal Gram entries are 1/sqrt(2).
    const double s = 1 / std::sqrt(2.0);
    const ek::DenseMatrix<double> V(2, 2, {1, s, 0, s});
    EXPECT_NEAR(ek::loss_of_orthogonality(V), 1.0, 1e-15);
    EXPECT_THROW(ek::loss_of_orthogonality(ek::DenseMatrix<double>(2, 1, {2, 0})), ek::PreconditionViolation);
    const ek::DenseMatrix<double> A(2, 2, {1, 0, 0, -1});
    EXPECT_THROW(ek::a_orthogonality_loss(ek::DenseMatrix<double>::identity(2), A), ek::PreconditionViolation);
}

TEST(Csv, HeaderRowsAndQuoting) {
    ek::MetricSeries s;
    s.experiment = "demo";
    s.add(1, "loss", 0.5);
    s.add(2, "loss", 0.25);
    s.add(1, "a,b", 3.0);
    EXPECT_THROW(s.add(2, "loss", 1.0), ek::PreconditionViolation);
    std::ostringstream out;
    ek::write_csv(out, s);
    EXPECT_EQ(out.str(),
              "experiment,k,metric,value,hex\n"
              "demo,1,loss,0.5,0x1p-1\n"
              "demo,2,loss,0.25,0x1p-2\n"
              "demo,1,\"a,b\",3,0x1.8p+1\n");
    EXPECT_EQ(ek::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(s.max("loss"), 0.5);
    EXPECT_EQ(s.values("loss"), (std::vector<double>{0.5, 0.25}));
}

TEST(Sweep, DeterministicSortedAndPassing) {
    for (auto a : {ek::SweepAlgorithm::lanczos_mgs, ek::SweepAlgorithm::lanczos_cgs, ek::SweepAlgorithm::arnoldi,
                   ek::SweepAlgorithm::bilanczos, ek::SweepAlgorithm::golub_kahan, ek::SweepAlgorithm::block_lanczos_cgs,
                   ek::SweepAlgorithm::block_lanczos_mgs, ek::SweepAlgorithm::deficient}) {
        ek::SweepConfig cfg;
        cfg.algorithm = a;
        cfg.sizes = {2, 4, 8};
        cfg.seeds = {3, 1, 2};
        cfg.block_size = 2;
        const auto first = ek::exactness_sweep(cfg);
        const auto second = ek::exactness_sweep(cfg);
        ASSERT_EQ(first.size(), 18u) << ek::to_string(a);
        EXPECT_TRUE(std::is_sorted(first.begin(), first.end()));
        for (std::size_t i = 0; i < first.size(); ++i) {
            EXPECT_TRUE(first[i].passed()) << first[i].reproducer() << " " << first[i].mismatch.value_or("");
            EXPECT_EQ(first[i].reproducer(), second[i].reproducer());
        }
        EXPECT_EQ(ek::parse_sweep_algorithm(ek::to_string(a)), a);
    }
    EXPECT_THROW(ek::parse_sweep_algorithm("qr"), ek::PreconditionViolation);
}

TEST(Sweep, ReproducerNamesTheInstance) {
    const auto r = ek::run_exactness_instance<float>(ek::SweepAlgorithm::golub_kahan, 5, 42);
    const auto text = r.reproducer();
    EXPECT_NE(text.find("gk"), std::string::npos) << text;
    EXPECT_NE(text.find("42"), std::string::npos) << text;
    EXPECT_NE(text.find("binary32"), std::string::npos) << text;
}

TEST(Roundtrip, SmallSampleRunsClean) {
    const auto d = ek::check_sqrt_square_roundtrip<double>(20000, 1);
    const auto f = ek::check_sqrt_square_roundtrip<float>(20000, 1);
    EXPECT_TRUE(d.passed());
    EXPECT_TRUE(f.passed());
    EXPECT_EQ(d.samples, 20000u);
    EXPECT_EQ(f.precision, ek::Precision::binary32);
}

TEST(Roundtrip, SamplesStayInsideTheGuard) {
    ek::SplitMix64 rng(8);
    bool saw_negative = false;
    for (int i = 0; i < 5000; ++i) {
        const float x = ek::sample_guarded_scalar<float>(rng);
        EXPECT_TRUE(ek::within_exponent_guard(x)) << x;
        saw_negative = saw_negative || x < 0;
    }
    EXPECT_TRUE(saw_negative);
}

TEST(Experiments, StrakosInstanceMatchesSpectrum) {
    const auto inst = ek::strakos_instance();
    EXPECT_EQ(inst.lambda.size(), ek::kStrakosSize);
    EXPECT_EQ(inst.T.size(), ek::kStrakosSize);
    EXPECT_LE(inst.max_eigenvalue_error, 1e-10);
}

TEST(Experiments, Fig2ShowsLossForHsCgAndNoneForLanczos) {
    const auto r = ek::experiment_fig2();
    const auto hs = r.series.values("hs_cg_loss");
    ASSERT_EQ(hs.size(), ek::kStrakosSize);
    EXPECT_LE(hs.front(), 1e-15);
    EXPECT_GT(r.max_hs_loss, 1e-8);
    EXPECT_TRUE(r.lanczos_exact);
    for (double x : r.series.values("lanczos_loss")) EXPECT_TRUE(ek::bitwise_equal(x, 0.0));
}

TEST(Experiments, Fig3StaysWithinBound) {
    const auto r = ek::experiment_fig3();
    EXPECT_LE(r.max_relative_error, r.bound);
    EXPECT_LE(r.final_residual_ratio, 1e-10);
    EXPECT_GT(r.kappa, 1.0);
    EXPECT_EQ(r.series.values("relative_error").size(), ek::kStrakosSize);
}

TEST(Experiments, SmallHarnessChecksPass) {
    EXPECT_TRUE(ek::check_cg_lanczos_collinearity(6, 1).passed());
    const auto pc = ek::experiment_prescribed_curves(4, 8, 2);
    EXPECT_EQ(pc.exact_mismatches, 0u);
    EXPECT_LE(pc.max_residual_error, ek::kPrescribedResidualTolerance);
    EXPECT_TRUE(ek::check_error_bound(6, 10, 3).passed());
    EXPECT_TRUE(ek::check_gmres_identity({4, 7}, {1, 2}).passed());
}

TEST(Exactness, PartialRunsMatchTheirLeadingData) {
    const auto T = ek::random_jacobi<double>(8, 1);
    const auto P = ek::SignedPermutation::random(8, 2);
    const auto prob = ek::assemble<double>(T, P, 2.0);
    const auto H = ek::random_hessenberg<double>(8, 3);
    const auto hp = ek::assemble<double>(H, P, 2.0);
    const auto N = ek::random_nonsym_tridiagonal<double>(8, 4);
    const auto np = ek::assemble_nonsym<double>(N, P, 2.0, -0.5);
    const auto L = ek::random_lower_bidiagonal<double>(8, 5);
    const auto lp = ek::assemble<double>(L, P, 2.0);
    const auto B = ek::random_block_tridiagonal<double>(4, 2, 6);
    const auto bp = ek::assemble_block<double>(B, ek::SignedBlockPermutation::random(4, 2, 7));
    for (std::size_t k = 1; k <= 8; ++k) {
        const auto c1 = ek::check_lanczos_exact(ek::lanczos(prob.A, prob.v, k), T, P, 2.0, k);
        EXPECT_TRUE(c1.passed()) << k << " " << c1.mismatch.value_or("");
        const auto c2 = ek::check_arnoldi_exact(ek::arnoldi(hp.A, hp.v, k), H, P, 2.0, k);
        EXPECT_TRUE(c2.passed()) << k << " " << c2.mismatch.value_or("");
        const auto c3 = ek::check_nonsym_lanczos_exact(ek::nonsym_lanczos(np.A, np.v, np.w, k), N, P, 2.0, -0.5, k);
        EXPECT_TRUE(c3.passed()) << k << " " << c3.mismatch.value_or("");
        const auto c4 = ek::check_golub_kahan_exact(ek::golub_kahan(lp.A, lp.v, k), L, P, 2.0, k);
        EXPECT_TRUE(c4.passed()) << k << " " << c4.mismatch.value_or("");
        if (k <= 4) {
            const auto c5 = ek::check_block_lanczos_exact(ek::block_lanczos(bp.A, bp.U1, k), B, bp.perm, k);
            EXPECT_TRUE(c5.passed()) << k << " " << c5.mismatch.value_or("");
        }
    }
}

TEST(Exactness, OneUlpChangeIsReported) {
    const auto T = ek::random_jacobi<double>(6, 11);
    const auto P = ek::SignedPermutation::random(6, 12);
    const auto prob = ek::assemble<double>(T, P, 1.0);
    const auto res = ek::lanczos(prob.A, prob.v, 6);
    auto alpha = T.alpha();
    alpha[3] = std::nextafter(alpha[3], 10.0);
    const ek::JacobiMatrix<double> off(alpha, T.beta());
    const auto c = ek::check_lanczos_exact(res, off, P, 1.0, 6);
    EXPECT_FALSE(c.projected);
    EXPECT_TRUE(c.basis);
    EXPECT_TRUE(c.breakdown);
    ASSERT_TRUE(c.mismatch.has_value());
    EXPECT_NE(c.mismatch->find("alpha[3]"), std::string::npos) << *c.mismatch;
    const auto wrong_perm = ek::check_lanczos_exact(res, T, ek::SignedPermutation::identity(6), 1.0, 6);
    EXPECT_FALSE(wrong_perm.basis);
    EXPECT_THROW(ek::check_lanczos_exact(res, T, P, 1.0, 7), ek::PreconditionViolation);
}
