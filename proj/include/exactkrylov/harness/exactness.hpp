// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/krylov/arnoldi.hpp"
#include "exactkrylov/krylov/block_lanczos.hpp"
#include "exactkrylov/krylov/golub_kahan.hpp"
#include "exactkrylov/krylov/nonsym_lanczos.hpp"
#include "exactkrylov/krylov/structures.hpp"
#include "exactkrylov/lanczos/lanczos.hpp"
#include "exactkrylov/problems/jacobi.hpp"
#include "exactkrylov/problems/signed_permutation.hpp"

// Bitwise comparison of a run on a structured pair (P T P^T, beta1 P e_1)
// against its generating data after k steps. With k = n the run must also
// stop with an exact zero normalization coefficient at step n.

namespace exactkrylov {

struct ExactnessCheck {
    bool projected = true;
    bool basis = true;
    bool breakdown = true;
    /// First mismatch found, in check order.
    std::optional<std::string> mismatch;

    bool passed() const noexcept { return projected && basis && breakdown; }
};

namespace detail {

class CheckBuilder {
public:
    void projected(bool ok, const std::string& where) { note(c_.projected, ok, where); }
    void basis(bool ok, const std::string& where) { note(c_.basis, ok, where); }
    void breakdown(bool ok, const std::string& where) { note(c_.breakdown, ok, where); }
    ExactnessCheck result() const { return c_; }

private:
    void note(bool& flag, bool ok, const std::string& where) {
        flag = flag && ok;
        if (!ok && !c_.mismatch) c_.mismatch = where;
    }
    ExactnessCheck c_;
};

template <IeeeScalar S>
bool vectors_match(const std::vector<S>& a, const std::vector<S>& b, std::size_t count, std::string& where,
                   const std::string& label) {
    if (a.size() < count || b.size() < count) {
        where = label + ": length " + std::to_string(a.size()) + ", expected at least " + std::to_string(count);
        return false;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!bitwise_equal(a[i], b[i])) {
            where = label + "[" + std::to_string(i) + "] = " + format_hex(a[i]) + ", expected " + format_hex(b[i]);
            return false;
        }
    }
    return true;
}

template <IeeeScalar S>
bool column_matches(const DenseVector<S>& got, const DenseVector<S>& expected, std::string& where,
                    const std::string& label) {
    if (got.size() != expected.size()) {
        where = label + ": length " + std::to_string(got.size());
        return false;
    }
    if (auto mm = first_mismatch(got, expected)) {
        where = label + " " + mm->describe();
        return false;
    }
    return true;
}

template <IeeeScalar S>
bool columns_match(const std::vector<DenseVector<S>>& basis, const SignedPermutation& P, std::size_t count,
                   std::string& where, const std::string& label) {
    if (basis.size() < count) {
        where = label + ": only " + std::to_string(basis.size()) + " vectors";
        return false;
    }
    for (std::size_t j = 0; j < count; ++j) {
        if (!column_matches(basis[j], P.template column<S>(j), where, label + " column " + std::to_string(j))) return false;
    }
    return true;
}

inline std::string describe_index(const std::optional<std::size_t>& i) {
    return i ? std::to_string(*i) : std::string("none");
}

inline void check_steps(std::size_t n, std::size_t k) {
    if (k == 0 || k > n) throw PreconditionViolation("exactness check: k must be in 1..n");
}

}  // namespace detail

template <IeeeScalar S>
ExactnessCheck check_lanczos_exact(const LanczosResult<S>& res, const JacobiMatrix<S>& T, const SignedPermutation& P,
                                   S beta1, std::size_t k) {
    const std::size_t n = T.size();
    detail::check_steps(n, k);
    if (P.size() != n) throw DimensionMismatch("exactness check: T and P sizes differ");
    detail::CheckBuilder b;
    std::string where;
    b.projected(bitwise_equal(res.beta1, beta1), "beta1 = " + format_hex(res.beta1) + ", expected " + format_hex(beta1));
    b.projected(res.steps() == k, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(k));
    b.projected(detail::vectors_match(res.alpha, T.alpha(), k, where, "alpha"), where);
    b.projected(detail::vectors_match(res.beta, T.beta(), std::min(k, n - 1), where, "beta"), where);
    b.basis(detail::columns_match(res.basis, P, k, where, "v"), where);
    if (k == n) {
        b.breakdown(res.breakdown == n && bitwise_equal(res.beta_next(), S(0)),
                    "breakdown at " + detail::describe_index(res.breakdown) + ", beta_{n+1} = " +
                        format_hex(res.beta_next()));
    } else {
        b.breakdown(!res.breakdown.has_value(), "breakdown at " + detail::describe_index(res.breakdown));
    }
    return b.result();
}

template <IeeeScalar S>
ExactnessCheck check_arnoldi_exact(const ArnoldiResult<S>& res, const HessenbergMatrix<S>& H,
                                   const SignedPermutation& P, S beta1, std::size_t k) {
    const std::size_t n = H.size();
    detail::check_steps(n, k);
    if (P.size() != n) throw DimensionMismatch("exactness check: H and P sizes differ");
    detail::CheckBuilder b;
    std::string where;
    b.projected(bitwise_equal(res.beta1, beta1), "beta1 = " + format_hex(res.beta1) + ", expected " + format_hex(beta1));
    const bool steps_ok = res.steps() == k;
    b.projected(steps_ok, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(k));
    if (steps_ok) {
        const std::size_t rows = std::min(k + 1, n);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < rows && i <= j + 1; ++i) {
                if (!bitwise_equal(res.H(i, j), H(i, j))) {
                    b.projected(false, "H(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                           format_hex(res.H(i, j)) + ", expected " + format_hex(H(i, j)));
                }
            }
    }
    b.basis(detail::columns_match(res.basis, P, k, where, "v"), where);
    if (k == n) {
        b.breakdown(steps_ok && res.breakdown == n && bitwise_equal(res.H(n, n - 1), S(0)),
                    "breakdown at " + detail::describe_index(res.breakdown));
    } else {
        b.breakdown(!res.breakdown.has_value(), "breakdown at " + detail::describe_index(res.breakdown));
    }
    return b.result();
}

/// gamma1 scales v, beta1_w scales w. The off-support zeros of w_i carry the
/// sign of beta_i (beta1_w for w_1), since w_i = what_i / beta_i and the
/// off-support entries of what_i are +0.
template <IeeeScalar S>
ExactnessCheck check_nonsym_lanczos_exact(const NonsymLanczosResult<S>& res, const NonsymTridiagonal<S>& T,
                                          const SignedPermutation& P, S gamma1, S beta1_w, std::size_t k) {
    const std::size_t n = T.size();
    detail::check_steps(n, k);
    if (P.size() != n) throw DimensionMismatch("exactness check: T and P sizes differ");
    detail::CheckBuilder b;
    std::string where;
    b.projected(bitwise_equal(res.gamma1, gamma1), "gamma1 = " + format_hex(res.gamma1));
    b.projected(bitwise_equal(res.beta1, beta1_w), "beta1 = " + format_hex(res.beta1));
    b.projected(res.steps() == k, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(k));
    const std::size_t off = std::min(k, n - 1);
    b.projected(detail::vectors_match(res.alpha, T.alpha(), k, where, "alpha"), where);
    b.projected(detail::vectors_match(res.beta, T.beta(), off, where, "beta"), where);
    b.projected(detail::vectors_match(res.gamma, T.gamma(), off, where, "gamma"), where);
    b.basis(detail::columns_match(res.v_basis, P, k, where, "v"), where);
    bool w_ok = res.w_basis.size() >= k;
    if (!w_ok) where = "w: only " + std::to_string(res.w_basis.size()) + " vectors";
    for (std::size_t j = 0; w_ok && j < k; ++j) {
        const S scale = j == 0 ? beta1_w : T.beta()[j - 1];
        DenseVector<S> expected = P.template column<S>(j);
        for (std::size_t i = 0; i < n; ++i)
            if (i != P.target(j)) expected[i] = std::copysign(S(0), scale);
        w_ok = detail::column_matches(res.w_basis[j], expected, where, "w column " + std::to_string(j));
    }
    b.basis(w_ok, where);
    if (k == n) {
        b.breakdown(res.breakdown == n && !res.gamma.empty() && bitwise_equal(res.gamma.back(), S(0)),
                    "breakdown at " + detail::describe_index(res.breakdown));
    } else {
        b.breakdown(!res.breakdown.has_value(), "breakdown at " + detail::describe_index(res.breakdown));
    }
    return b.result();
}

/// delta1 is the norm of the starting vector. With k = n the run stops with
/// delta_{n+1} = +0.
template <IeeeScalar S>
ExactnessCheck check_golub_kahan_exact(const GolubKahanResult<S>& res, const LowerBidiagonal<S>& L,
                                       const SignedPermutation& P, S delta1, std::size_t k) {
    const std::size_t n = L.size();
    detail::check_steps(n, k);
    if (P.size() != n) throw DimensionMismatch("exactness check: L and P sizes differ");
    detail::CheckBuilder b;
    std::string where;
    std::vector<S> expected_delta{delta1};
    expected_delta.insert(expected_delta.end(), L.delta().begin(), L.delta().end());
    b.projected(res.steps() == k, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(k));
    b.projected(detail::vectors_match(res.gamma, L.gamma(), k, where, "gamma"), where);
    b.projected(detail::vectors_match(res.delta, expected_delta, std::min(k + 1, n), where, "delta"), where);
    b.basis(detail::columns_match(res.s_basis, P, k, where, "s") && detail::columns_match(res.w_basis, P, k, where, "w"),
            where);
    const auto describe = [&] {
        if (!res.breakdown) return std::string("no breakdown");
        return std::string(res.breakdown->coefficient == BidiagBreakdown::Coefficient::delta ? "delta" : "gamma") +
               " breakdown at " + std::to_string(res.breakdown->index);
    };
    if (k == n) {
        const BidiagBreakdown expected{BidiagBreakdown::Coefficient::delta, n + 1};
        b.breakdown(res.breakdown == expected && res.delta.size() == n + 1 && bitwise_equal(res.delta.back(), S(0)),
                    describe());
    } else {
        b.breakdown(!res.breakdown.has_value(), describe());
    }
    return b.result();
}

/// k counts block steps, 1..m.
template <IeeeScalar S>
ExactnessCheck check_block_lanczos_exact(const BlockLanczosResult<S>& res, const BlockTridiagonal<S>& T,
                                         const SignedBlockPermutation& P, std::size_t k) {
    const std::size_t m = T.blocks(), p = T.block_size();
    detail::check_steps(m, k);
    if (P.blocks() != m || P.block_size() != p) throw DimensionMismatch("exactness check: T and P layouts differ");
    detail::CheckBuilder b;
    std::string where;
    const bool steps_ok = res.steps() == k;
    b.projected(steps_ok, "steps " + std::to_string(res.steps()) + ", expected " + std::to_string(k));
    for (std::size_t i = 0; steps_ok && i < k; ++i) {
        if (auto mm = first_mismatch(res.M[i], T.diagonal_blocks()[i])) {
            b.projected(false, "M_" + std::to_string(i + 1) + " " + mm->describe());
        }
    }
    const std::size_t subs = std::min(k, m - 1);
    b.projected(res.B.size() >= subs, "only " + std::to_string(res.B.size()) + " B blocks");
    for (std::size_t i = 0; i < subs && i < res.B.size(); ++i) {
        if (auto mm = first_mismatch(res.B[i], T.subdiagonal_blocks()[i])) {
            b.projected(false, "B_" + std::to_string(i + 2) + " " + mm->describe());
        }
    }
    const SignedPermutation flat = P.flatten();
    bool basis_ok = res.U.size() >= k;
    if (!basis_ok) where = "U: only " + std::to_string(res.U.size()) + " blocks";
    for (std::size_t i = 0; basis_ok && i < k; ++i)
        for (std::size_t c = 0; basis_ok && c < p; ++c) {
            basis_ok = detail::column_matches(res.U[i].column(c), flat.template column<S>(i * p + c), where,
                                              "U_" + std::to_string(i + 1) + " column " + std::to_string(c));
        }
    b.basis(basis_ok, where);
    if (k == m) {
        b.breakdown(res.breakdown == m, "breakdown at " + detail::describe_index(res.breakdown));
    } else {
        b.breakdown(!res.breakdown.has_value(), "breakdown at " + detail::describe_index(res.breakdown));
    }
    return b.result();
}

}  // namespace exactkrylov
