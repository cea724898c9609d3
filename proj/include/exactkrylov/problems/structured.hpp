// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/ops.hpp"
#include "exactkrylov/krylov/structures.hpp"
#include "exactkrylov/problems/jacobi.hpp"
#include "exactkrylov/problems/signed_permutation.hpp"

namespace exactkrylov {

/// A = P T P^T without arithmetic: entry (i, j) of T moves to
/// (target(i), target(j)) and is negated when the two signs differ.
/// Zero entries of T become +0 in A.
template <IeeeScalar S>
DenseMatrix<S> permute_similar(const DenseMatrix<S>& T, const SignedPermutation& P) {
    if (!T.square() || T.rows() != P.size()) throw DimensionMismatch("assemble: T and P sizes differ");
    const std::size_t n = T.rows();
    DenseMatrix<S> A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const S t = T(i, j);
            if (t == S(0)) continue;
            A(P.target(i), P.target(j)) = (P.sign(i) == P.sign(j)) ? t : -t;
        }
    return A;
}

/// The structured pair (A, v) = (P T P^T, beta1 P e_1) with its generating data.
template <IeeeScalar S, class Projected>
struct StructuredProblem {
    SignedPermutation perm;
    Projected projected;
    S beta1{};
    DenseMatrix<S> A;
    DenseVector<S> v;
    /// Dimension of the Krylov space reachable from v; n unless built by extend_deficient.
    std::size_t grade = 0;
};

template <IeeeScalar S, class Projected>
StructuredProblem<S, Projected> assemble(Projected T, SignedPermutation P, S beta1) {
    if (!(beta1 > S(0))) throw PreconditionViolation("assemble: beta1 must be positive");
    require_finite(beta1, "assemble beta1");
    if (T.size() != P.size()) throw DimensionMismatch("assemble: T and P sizes differ");
    StructuredProblem<S, Projected> prob;
    prob.A = permute_similar(DenseMatrix<S>(T.dense()), P);
    prob.v = P.template column<S>(0, beta1);
    prob.grade = T.size();
    prob.beta1 = beta1;
    prob.perm = std::move(P);
    prob.projected = std::move(T);
    return prob;
}

/// Structured pair for two-sided Lanczos: w = beta1_w P e_1 in addition to v.
template <IeeeScalar S>
struct NonsymStructuredProblem : StructuredProblem<S, NonsymTridiagonal<S>> {
    S beta1_w{};
    DenseVector<S> w;
};

template <IeeeScalar S>
NonsymStructuredProblem<S> assemble_nonsym(NonsymTridiagonal<S> T, SignedPermutation P, S gamma1, S beta1_w) {
    if (beta1_w == S(0)) throw PreconditionViolation("assemble_nonsym: beta1 for w must be nonzero");
    NonsymStructuredProblem<S> prob;
    static_cast<StructuredProblem<S, NonsymTridiagonal<S>>&>(prob) = assemble<S>(std::move(T), std::move(P), gamma1);
    prob.beta1_w = beta1_w;
    prob.w = prob.perm.template column<S>(0, beta1_w);
    return prob;
}

/// Structured block pair (A, U_1) = (P T P^T, P [I, 0, ..., 0]^T).
template <IeeeScalar S>
struct BlockStructuredProblem {
    SignedBlockPermutation perm;
    BlockTridiagonal<S> projected;
    DenseMatrix<S> A;
    DenseMatrix<S> U1;
};

template <IeeeScalar S>
BlockStructuredProblem<S> assemble_block(BlockTridiagonal<S> T, SignedBlockPermutation P) {
    if (T.size() != P.blocks() * P.block_size() || T.block_size() != P.block_size()) {
        throw DimensionMismatch("assemble_block: T and P block layouts differ");
    }
    const SignedPermutation flat = P.flatten();
    BlockStructuredProblem<S> prob;
    prob.A = permute_similar(T.dense(), flat);
    const std::size_t n = T.size(), p = T.block_size();
    prob.U1 = DenseMatrix<S>(n, p);
    for (std::size_t c = 0; c < p; ++c) prob.U1(flat.target(c), c) = flat.sign(c) < 0 ? S(-1) : S(1);
    prob.perm = std::move(P);
    prob.projected = std::move(T);
    return prob;
}

/// Result of recognizing a structured pair.
template <IeeeScalar S>
struct DetectedStructure {
    SignedPermutation perm;
    JacobiMatrix<S> jacobi;
    S beta1{};
};

/// Recognizes (A, v) = (P T P^T, beta1 P e_1) with T Jacobi and full grade.
///
/// v must have one nonzero entry j, and the off-diagonal nonzero pattern of A
/// must be a simple path through all n indices starting at j. Signs are
/// absorbed into P so that every off-diagonal of T is positive.
template <IeeeScalar S>
std::optional<DetectedStructure<S>> detect_structure(const DenseMatrix<S>& A, const DenseVector<S>& v) {
    if (!is_symmetric_bitwise(A)) throw PreconditionViolation("detect_structure: A is not symmetric");
    if (A.rows() != v.size()) throw DimensionMismatch("detect_structure: A and v sizes differ");
    const std::size_t n = v.size();
    std::optional<std::size_t> start;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == S(0)) continue;
        if (start) return std::nullopt;
        start = i;
    }
    if (!start) throw PreconditionViolation("detect_structure: v is zero");

    std::vector<std::size_t> targets;
    std::vector<int> signs;
    std::vector<S> alpha, beta;
    std::vector<bool> visited(n, false);
    targets.reserve(n);

    std::size_t row = *start;
    int sign = v[row] < S(0) ? -1 : 1;
    std::optional<std::size_t> previous;
    for (;;) {
        visited[row] = true;
        targets.push_back(row);
        signs.push_back(sign);
        alpha.push_back(A(row, row));

        std::optional<std::size_t> next;
        std::size_t neighbours = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == row || A(row, c) == S(0)) continue;
            ++neighbours;
            if (previous && c == *previous) continue;
            if (next) return std::nullopt;
            next = c;
        }
        if (neighbours > 2 || (previous && neighbours < 1)) return std::nullopt;
        if (!next) break;
        if (visited[*next]) return std::nullopt;
        const S a = A(row, *next);
        beta.push_back(std::fabs(a));
        sign = (a < S(0)) ? -sign : sign;
        previous = row;
        row = *next;
    }
    if (targets.size() != n) return std::nullopt;

    DetectedStructure<S> out;
    out.perm = SignedPermutation(std::move(targets), std::move(signs));
    out.jacobi = JacobiMatrix<S>(std::move(alpha), std::move(beta));
    out.beta1 = std::fabs(v[*start]);
    return out;
}

/// Builds a pair of grade d < n: P~ = diag(P, R1), T~ = diag(T, R2),
/// A = P~ T~ P~^T, v = beta1 P~ e_1. Lanczos must stop exactly at step d.
template <IeeeScalar S>
StructuredProblem<S, JacobiMatrix<S>> extend_deficient(const JacobiMatrix<S>& T, const SignedPermutation& P,
                                                       const DenseMatrix<S>& R1, const DenseMatrix<S>& R2,
                                                       S beta1) {
    const std::size_t d = T.size();
    if (P.size() != d) throw DimensionMismatch("extend_deficient: T and P sizes differ");
    if (!R1.square() || !R2.square() || R1.rows() != R2.rows()) {
        throw DimensionMismatch("extend_deficient: R1 and R2 must be square of equal size");
    }
    if (!(beta1 > S(0))) throw PreconditionViolation("extend_deficient: beta1 must be positive");
    const std::size_t n = d + R1.rows();
    const DenseMatrix<S> lead = permute_similar(T.dense(), P);
    DenseMatrix<S> trail = matmul(matmul(R1, R2), R1.transposed());
    if (is_symmetric_bitwise(R2)) {
        // R1 R2 R1^T is symmetric in exact arithmetic; mirror so A stays bitwise symmetric.
        for (std::size_t i = 0; i < trail.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j) trail(i, j) = trail(j, i);
    }
    StructuredProblem<S, JacobiMatrix<S>> prob;
    prob.A = DenseMatrix<S>(n, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) prob.A(i, j) = lead(i, j);
    for (std::size_t i = 0; i < trail.rows(); ++i)
        for (std::size_t j = 0; j < trail.rows(); ++j) prob.A(d + i, d + j) = trail(i, j);
    prob.v = DenseVector<S>(n);
    prob.v[P.target(0)] = P.sign(0) < 0 ? -beta1 : beta1;
    prob.perm = P;
    prob.projected = T;
    prob.beta1 = beta1;
    prob.grade = d;
    return prob;
}

}  // namespace exactkrylov
