// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exactkrylov/core/dense.hpp"
#include "exactkrylov/core/rng.hpp"

namespace exactkrylov {

/// Permutation matrix whose nonzero entries are +1 or -1.
///
/// Column j has its single nonzero in row `target(j)` with value `sign(j)`,
/// so P e_j = sign(j) e_{target(j)}.
class SignedPermutation {
public:
    SignedPermutation() = default;

    SignedPermutation(std::vector<std::size_t> targets, std::vector<int> signs)
        : targets_(std::move(targets)), signs_(std::move(signs)) {
        if (targets_.size() != signs_.size()) throw DimensionMismatch("SignedPermutation: size mismatch");
        std::vector<bool> seen(targets_.size(), false);
        for (std::size_t j = 0; j < targets_.size(); ++j) {
            if (targets_[j] >= targets_.size() || seen[targets_[j]]) {
                throw PreconditionViolation("SignedPermutation: targets are not a bijection");
            }
            seen[targets_[j]] = true;
            if (signs_[j] != 1 && signs_[j] != -1) throw PreconditionViolation("SignedPermutation: sign must be +1 or -1");
        }
    }

    static SignedPermutation identity(std::size_t n) {
        std::vector<std::size_t> t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = j;
        return SignedPermutation(std::move(t), std::vector<int>(n, 1));
    }

    /// Fisher-Yates shuffle followed by independent fair signs.
    static SignedPermutation random(std::size_t n, std::uint64_t seed) {
        if (n == 0) throw PreconditionViolation("random_signed_permutation: n must be positive");
        SplitMix64 rng(seed);
        std::vector<std::size_t> t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = j;
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
            std::swap(t[i], t[j]);
        }
        std::vector<int> s(n);
        for (std::size_t j = 0; j < n; ++j) s[j] = rng.coin() ? -1 : 1;
        return SignedPermutation(std::move(t), std::move(s));
    }

    std::size_t size() const noexcept { return targets_.size(); }
    std::size_t target(std::size_t j) const noexcept { return targets_[j]; }
    int sign(std::size_t j) const noexcept { return signs_[j]; }
    const std::vector<std::size_t>& targets() const noexcept { return targets_; }
    const std::vector<int>& signs() const noexcept { return signs_; }

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

    /// P e_j scaled by alpha; the sign is applied by negation, not multiplication.
    template <IeeeScalar S>
    DenseVector<S> column(std::size_t j, S alpha = S(1)) const {
        return DenseVector<S>::unit(size(), targets_[j], signs_[j] < 0 ? -alpha : alpha);
    }

    template <IeeeScalar S>
    DenseMatrix<S> dense() const {
        DenseMatrix<S> m(size(), size());
        for (std::size_t j = 0; j < size(); ++j) m(targets_[j], j) = signs_[j] < 0 ? S(-1) : S(1);
        return m;
    }

private:
    std::vector<std::size_t> targets_;
    std::vector<int> signs_;
};

}  // namespace exactkrylov
