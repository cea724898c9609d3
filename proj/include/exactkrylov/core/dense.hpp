// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exactkrylov/core/scalar.hpp"

namespace exactkrylov {

/// Finite vector of one working precision.
template <IeeeScalar S>
class DenseVector {
public:
    DenseVector() = default;

    /// Zero vector (+0 entries).
    explicit DenseVector(std::size_t n) : data_(n, S(0)) {}

    explicit DenseVector(std::vector<S> entries) : data_(std::move(entries)) {
        for (S x : data_) require_finite(x, "DenseVector");
    }

    DenseVector(std::initializer_list<S> entries) : DenseVector(std::vector<S>(entries)) {}

    /// alpha * e_j
    static DenseVector unit(std::size_t n, std::size_t j, S alpha = S(1)) {
        if (j >= n) throw DimensionMismatch("DenseVector::unit: index out of range");
        DenseVector v(n);
        v.data_[j] = alpha;
        return v;
    }

    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    S operator[](std::size_t i) const noexcept { return data_[i]; }
    S& operator[](std::size_t i) noexcept { return data_[i]; }

    std::span<const S> entries() const noexcept { return data_; }
    std::span<S> entries() noexcept { return data_; }
    const std::vector<S>& storage() const noexcept { return data_; }

    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

private:
    std::vector<S> data_;
};

/// Row-major dense matrix with finite entries.
template <IeeeScalar S>
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<S> row_major)
        : rows_(rows), cols_(cols), data_(std::move(row_major)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionMismatch("DenseMatrix: entry count " + std::to_string(data_.size()) +
                                    " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
        }
        for (S x : data_) require_finite(x, "DenseMatrix");
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    static DenseMatrix diagonal(std::span<const S> d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            require_finite(d[i], "DenseMatrix::diagonal");
            m(i, i) = d[i];
        }
        return m;
    }

    /// Matrix whose columns are the given vectors (all of equal length).
    static DenseMatrix from_columns(std::span<const DenseVector<S>> columns, std::size_t rows) {
        DenseMatrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows) throw DimensionMismatch("DenseMatrix::from_columns: ragged columns");
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    S operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    S& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const S> entries() const noexcept { return data_; }
    std::span<const S> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    DenseVector<S> column(std::size_t c) const {
        DenseVector<S> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

}  // namespace exactkrylov
