// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "exactkrylov/core/dense.hpp"

namespace exactkrylov {

/// Symmetric tridiagonal matrix with strictly positive off-diagonal.
///
/// `alpha()` holds the n diagonal entries, `beta()` the n-1 off-diagonal
/// entries; beta()[j] couples rows j and j+1 (0-based), i.e. it is the
/// coefficient usually written beta_{j+2}.
template <IeeeScalar S>
class JacobiMatrix {
public:
    JacobiMatrix() = default;

    JacobiMatrix(std::vector<S> alpha, std::vector<S> beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
        if (alpha_.empty() ? !beta_.empty() : beta_.size() + 1 != alpha_.size()) {
            throw DimensionMismatch("JacobiMatrix: need n diagonal and n-1 off-diagonal entries");
        }
        for (S a : alpha_) require_finite(a, "JacobiMatrix diagonal");
        for (std::size_t j = 0; j < beta_.size(); ++j) {
            require_finite(beta_[j], "JacobiMatrix off-diagonal");
            if (!(beta_[j] > S(0))) {
                throw PreconditionViolation("JacobiMatrix: off-diagonal entry " + std::to_string(j) +
                                            " is not positive");
            }
        }
    }

    std::size_t size() const noexcept { return alpha_.size(); }
    const std::vector<S>& alpha() const noexcept { return alpha_; }
    const std::vector<S>& beta() const noexcept { return beta_; }

    /// True when every off-diagonal lies inside the precision's exponent guard.
    bool within_guard() const {
        for (S b : beta_)
            if (!within_exponent_guard(b)) return false;
        return true;
    }

    /// Leading k x k principal submatrix.
    JacobiMatrix leading(std::size_t k) const {
        if (k > size()) throw DimensionMismatch("JacobiMatrix::leading: k exceeds n");
        return JacobiMatrix(std::vector<S>(alpha_.begin(), alpha_.begin() + k),
                            std::vector<S>(beta_.begin(), beta_.begin() + (k == 0 ? 0 : k - 1)));
    }

    DenseMatrix<S> dense() const {
        const std::size_t n = size();
        DenseMatrix<S> m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = alpha_[i];
        for (std::size_t j = 0; j + 1 < n; ++j) {
            m(j + 1, j) = beta_[j];
            m(j, j + 1) = beta_[j];
        }
        return m;
    }

private:
    std::vector<S> alpha_;
    std::vector<S> beta_;
};

}  // namespace exactkrylov
