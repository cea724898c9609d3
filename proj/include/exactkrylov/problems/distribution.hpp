// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "exactkrylov/core/ops.hpp"

namespace exactkrylov {

/// Step function with jumps `weights[i]` at the increasing `nodes[i]`.
template <IeeeScalar S>
class DistributionFunction {
public:
    DistributionFunction(std::vector<S> nodes, std::vector<S> weights)
        : nodes_(std::move(nodes)), weights_(std::move(weights)) {
        if (nodes_.size() != weights_.size()) throw DimensionMismatch("DistributionFunction: size mismatch");
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            if (!(nodes_[i] > nodes_[i - 1])) throw PreconditionViolation("DistributionFunction: nodes not increasing");
        }
        for (S w : weights_) {
            if (!(w >= S(0))) throw PreconditionViolation("DistributionFunction: negative weight");
        }
    }

    const std::vector<S>& nodes() const noexcept { return nodes_; }
    const std::vector<S>& weights() const noexcept { return weights_; }

    /// Sequential sum of all weights.
    S total() const noexcept {
        S acc = S(0);
        for (S w : weights_) acc = acc + w;
        return acc;
    }

    /// 0 below the first node, the partial weight sum between nodes, and
    /// exactly 1 at and above the last node.
    S operator()(S lambda) const noexcept {
        if (nodes_.empty() || lambda < nodes_.front()) return S(0);
        if (lambda >= nodes_.back()) return S(1);
        S acc = S(0);
        for (std::size_t i = 0; i < nodes_.size() && nodes_[i] <= lambda; ++i) acc = acc + weights_[i];
        return acc;
    }

private:
    std::vector<S> nodes_;
    std::vector<S> weights_;
};

/// Distribution function of (diag(lambda), v1): weights fl(v1_i^2).
template <IeeeScalar S>
DistributionFunction<S> distribution_function(std::span<const S> lambda, const DenseVector<S>& v1) {
    if (lambda.size() != v1.size()) throw DimensionMismatch("distribution_function: sizes differ");
    for (std::size_t i = 1; i < lambda.size(); ++i) {
        if (!(lambda[i] > lambda[i - 1])) {
            throw PreconditionViolation("distribution_function: eigenvalues must be distinct and increasing");
        }
    }
    const double tol = 4.0 * static_cast<double>(v1.size()) * unit_roundoff<S>();
    const S nrm = norm2(v1);
    if (std::fabs(static_cast<double>(nrm) - 1.0) > tol) {
        throw PreconditionViolation("distribution_function: v1 must have unit norm");
    }
    std::vector<S> weights(v1.size());
    for (std::size_t i = 0; i < v1.size(); ++i) weights[i] = v1[i] * v1[i];
    return DistributionFunction<S>(std::vector<S>(lambda.begin(), lambda.end()), std::move(weights));
}

}  // namespace exactkrylov
