// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "exactkrylov/core/bitwise.hpp"
#include "exactkrylov/core/dense.hpp"
#include "exactkrylov/problems/signed_permutation.hpp"

namespace exactkrylov {

/// Square upper Hessenberg matrix with positive subdiagonal.
template <IeeeScalar S>
class HessenbergMatrix {
public:
    HessenbergMatrix() = default;

    explicit HessenbergMatrix(DenseMatrix<S> h) : h_(std::move(h)) {
        if (!h_.square()) throw DimensionMismatch("HessenbergMatrix: must be square");
        for (std::size_t i = 0; i < h_.rows(); ++i) {
            for (std::size_t j = 0; j + 1 < i; ++j) {
                if (h_(i, j) != S(0)) throw PreconditionViolation("HessenbergMatrix: nonzero below the subdiagonal");
            }
            if (i > 0 && !(h_(i, i - 1) > S(0))) {
                throw PreconditionViolation("HessenbergMatrix: subdiagonal entry " + std::to_string(i) +
                                            " is not positive");
            }
        }
    }

    std::size_t size() const noexcept { return h_.rows(); }
    S operator()(std::size_t i, std::size_t j) const noexcept { return h_(i, j); }
    const DenseMatrix<S>& dense() const noexcept { return h_; }

    bool within_guard() const {
        for (std::size_t i = 1; i < size(); ++i)
            if (!within_exponent_guard(h_(i, i - 1))) return false;
        return true;
    }

private:
    DenseMatrix<S> h_;
};

/// Tridiagonal matrix with diagonal alpha, superdiagonal beta (nonzero)
/// and subdiagonal gamma (positive). beta[j], gamma[j] sit in rows/cols j, j+1.
template <IeeeScalar S>
class NonsymTridiagonal {
public:
    NonsymTridiagonal() = default;

    NonsymTridiagonal(std::vector<S> alpha, std::vector<S> beta, std::vector<S> gamma)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
        const std::size_t off = alpha_.empty() ? 0 : alpha_.size() - 1;
        if (beta_.size() != off || gamma_.size() != off) {
            throw DimensionMismatch("NonsymTridiagonal: need n diagonal and n-1 entries per off-diagonal");
        }
        for (S a : alpha_) require_finite(a, "NonsymTridiagonal diagonal");
        for (std::size_t j = 0; j < off; ++j) {
            require_finite(beta_[j], "NonsymTridiagonal superdiagonal");
            require_finite(gamma_[j], "NonsymTridiagonal subdiagonal");
            if (beta_[j] == S(0)) throw PreconditionViolation("NonsymTridiagonal: zero superdiagonal entry");
            if (!(gamma_[j] > S(0))) throw PreconditionViolation("NonsymTridiagonal: subdiagonal entry not positive");
        }
    }

    std::size_t size() const noexcept { return alpha_.size(); }
    const std::vector<S>& alpha() const noexcept { return alpha_; }
    const std::vector<S>& beta() const noexcept { return beta_; }
    const std::vector<S>& gamma() const noexcept { return gamma_; }

    bool within_guard() const {
        for (S g : gamma_)
            if (!within_exponent_guard(g)) return false;
        return true;
    }

    DenseMatrix<S> dense() const {
        const std::size_t n = size();
        DenseMatrix<S> m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = alpha_[i];
        for (std::size_t j = 0; j + 1 < n; ++j) {
            m(j, j + 1) = beta_[j];
            m(j + 1, j) = gamma_[j];
        }
        return m;
    }

private:
    std::vector<S> alpha_;
    std::vector<S> beta_;
    std::vector<S> gamma_;
};

/// Lower bidiagonal matrix, diagonal gamma and subdiagonal delta, all positive.
template <IeeeScalar S>
class LowerBidiagonal {
public:
    LowerBidiagonal() = default;

    LowerBidiagonal(std::vector<S> gamma, std::vector<S> delta) : gamma_(std::move(gamma)), delta_(std::move(delta)) {
        if (gamma_.empty() ? !delta_.empty() : delta_.size() + 1 != gamma_.size()) {
            throw DimensionMismatch("LowerBidiagonal: need n diagonal and n-1 subdiagonal entries");
        }
        for (S g : gamma_) {
            require_finite(g, "LowerBidiagonal diagonal");
            if (!(g > S(0))) throw PreconditionViolation("LowerBidiagonal: diagonal entry not positive");
        }
        for (S d : delta_) {
            require_finite(d, "LowerBidiagonal subdiagonal");
            if (!(d > S(0))) throw PreconditionViolation("LowerBidiagonal: subdiagonal entry not positive");
        }
    }

    std::size_t size() const noexcept { return gamma_.size(); }
    const std::vector<S>& gamma() const noexcept { return gamma_; }
    const std::vector<S>& delta() const noexcept { return delta_; }

    bool within_guard() const {
        for (S g : gamma_)
            if (!within_exponent_guard(g)) return false;
        for (S d : delta_)
            if (!within_exponent_guard(d)) return false;
        return true;
    }

    DenseMatrix<S> dense() const {
        const std::size_t n = size();
        DenseMatrix<S> m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = gamma_[i];
        for (std::size_t j = 0; j + 1 < n; ++j) m(j + 1, j) = delta_[j];
        return m;
    }

private:
    std::vector<S> gamma_;
    std::vector<S> delta_;
};

/// Symmetric block tridiagonal matrix with m diagonal blocks M (symmetric)
/// and m-1 subdiagonal blocks B (upper triangular, positive diagonal).
/// Block row i+1, column i holds B[i]; block row i, column i+1 holds B[i]^T.
template <IeeeScalar S>
class BlockTridiagonal {
public:
    BlockTridiagonal() = default;

    BlockTridiagonal(std::size_t p, std::vector<DenseMatrix<S>> diag, std::vector<DenseMatrix<S>> sub)
        : p_(p), diag_(std::move(diag)), sub_(std::move(sub)) {
        if (p_ == 0) throw PreconditionViolation("BlockTridiagonal: block size must be positive");
        if (diag_.empty() ? !sub_.empty() : sub_.size() + 1 != diag_.size()) {
            throw DimensionMismatch("BlockTridiagonal: need m diagonal and m-1 subdiagonal blocks");
        }
        for (const auto& M : diag_) {
            if (M.rows() != p_ || M.cols() != p_) throw DimensionMismatch("BlockTridiagonal: diagonal block shape");
            if (!is_symmetric_bitwise(M)) throw PreconditionViolation("BlockTridiagonal: diagonal block not symmetric");
        }
        for (const auto& B : sub_) {
            if (B.rows() != p_ || B.cols() != p_) throw DimensionMismatch("BlockTridiagonal: subdiagonal block shape");
            for (std::size_t r = 0; r < p_; ++r) {
                if (!(B(r, r) > S(0))) throw PreconditionViolation("BlockTridiagonal: B diagonal not positive");
                for (std::size_t c = 0; c < r; ++c)
                    if (B(r, c) != S(0)) throw PreconditionViolation("BlockTridiagonal: B not upper triangular");
            }
        }
    }

    std::size_t blocks() const noexcept { return diag_.size(); }
    std::size_t block_size() const noexcept { return p_; }
    std::size_t size() const noexcept { return p_ * diag_.size(); }
    const std::vector<DenseMatrix<S>>& diagonal_blocks() const noexcept { return diag_; }
    const std::vector<DenseMatrix<S>>& subdiagonal_blocks() const noexcept { return sub_; }

    bool within_guard() const {
        for (const auto& B : sub_)
            for (std::size_t r = 0; r < p_; ++r)
                if (!within_exponent_guard(B(r, r))) return false;
        return true;
    }

    DenseMatrix<S> dense() const {
        DenseMatrix<S> m(size(), size());
        for (std::size_t b = 0; b < diag_.size(); ++b)
            for (std::size_t r = 0; r < p_; ++r)
                for (std::size_t c = 0; c < p_; ++c) m(b * p_ + r, b * p_ + c) = diag_[b](r, c);
        for (std::size_t b = 0; b < sub_.size(); ++b)
            for (std::size_t r = 0; r < p_; ++r)
                for (std::size_t c = 0; c < p_; ++c) {
                    m((b + 1) * p_ + r, b * p_ + c) = sub_[b](r, c);
                    m(b * p_ + c, (b + 1) * p_ + r) = sub_[b](r, c);
                }
        return m;
    }

private:
    std::size_t p_ = 1;
    std::vector<DenseMatrix<S>> diag_;
    std::vector<DenseMatrix<S>> sub_;
};

/// Block matrix with exactly one nonzero p x p block per block row and
/// column; every nonzero block is a signed permutation.
class SignedBlockPermutation {
public:
    SignedBlockPermutation() = default;

    SignedBlockPermutation(std::vector<std::size_t> block_targets, std::vector<SignedPermutation> blocks)
        : block_targets_(std::move(block_targets)), blocks_(std::move(blocks)) {
        if (block_targets_.size() != blocks_.size() || blocks_.empty()) {
            throw DimensionMismatch("SignedBlockPermutation: block count mismatch");
        }
        p_ = blocks_.front().size();
        std::vector<bool> seen(block_targets_.size(), false);
        for (std::size_t j = 0; j < blocks_.size(); ++j) {
            if (blocks_[j].size() != p_) throw DimensionMismatch("SignedBlockPermutation: ragged blocks");
            if (block_targets_[j] >= block_targets_.size() || seen[block_targets_[j]]) {
                throw PreconditionViolation("SignedBlockPermutation: block targets are not a bijection");
            }
            seen[block_targets_[j]] = true;
        }
    }

    static SignedBlockPermutation random(std::size_t m, std::size_t p, std::uint64_t seed) {
        const SignedPermutation outer = SignedPermutation::random(m, seed);
        std::vector<SignedPermutation> blocks;
        blocks.reserve(m);
        for (std::size_t j = 0; j < m; ++j) blocks.push_back(SignedPermutation::random(p, seed ^ (0xB10C0000ULL + j)));
        return SignedBlockPermutation(outer.targets(), std::move(blocks));
    }

    std::size_t blocks() const noexcept { return blocks_.size(); }
    std::size_t block_size() const noexcept { return p_; }
    const std::vector<std::size_t>& block_targets() const noexcept { return block_targets_; }
    const SignedPermutation& block(std::size_t j) const noexcept { return blocks_[j]; }

    /// The same matrix viewed as an n x n signed permutation.
    SignedPermutation flatten() const {
        const std::size_t n = p_ * blocks_.size();
        std::vector<std::size_t> targets(n);
        std::vector<int> signs(n);
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (std::size_t c = 0; c < p_; ++c) {
                targets[b * p_ + c] = block_targets_[b] * p_ + blocks_[b].target(c);
                signs[b * p_ + c] = blocks_[b].sign(c);
            }
        return SignedPermutation(std::move(targets), std::move(signs));
    }

private:
    std::size_t p_ = 0;
    std::vector<std::size_t> block_targets_;
    std::vector<SignedPermutation> blocks_;
};

}  // namespace exactkrylov
