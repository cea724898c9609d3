// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "exactkrylov/core/rational.hpp"

namespace exactkrylov {

/// Largest system the rational oracle accepts; entry sizes grow fast under
/// exact elimination.
inline constexpr std::size_t kRationalOracleMaxSize = 48;

/// Exact conjugate gradients from x_0 = 0. Indexing follows CGTrace.
struct RationalCGTrace {
    std::vector<RationalVector> x, r, p;
    std::vector<Rational> gamma, delta;
    /// ||r_k||^2
    std::vector<Rational> residual_norm2;
    /// ||x - x_k||_A^2 with x = A^{-1} b
    std::vector<Rational> energy_error2;
    RationalVector solution;

    std::size_t iterations() const noexcept { return x.empty() ? 0 : x.size() - 1; }
};

/// Runs at most kmax iterations and stops once r_k = 0 exactly.
/// Throws PreconditionViolation when n exceeds the size guard or A is not
/// symmetric positive definite over the rationals.
RationalCGTrace rational_cg_oracle(const RationalMatrix& A, const RationalVector& b, std::size_t kmax);

template <IeeeScalar S>
RationalCGTrace rational_cg_oracle(const DenseMatrix<S>& A, const DenseVector<S>& b, std::size_t kmax) {
    if (A.rows() > kRationalOracleMaxSize) {
        throw PreconditionViolation("rational_cg_oracle: n exceeds the size guard of 48");
    }
    return rational_cg_oracle(to_rational(A), to_rational(b), kmax);
}

/// ||x||^2 for a rational vector.
Rational squared_norm(const RationalVector& x);

}  // namespace exactkrylov
