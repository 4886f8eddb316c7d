// Copyright 2026 The ubases Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ubases/errors.hpp"

namespace ubases {

/// Dense row-major complex matrix.
///
/// Composite indices of tensor products are row-major with the first factor
/// slowest: entry ((i,k),(j,l)) of A (x) B lives at row i*B.rows()+k and
/// column j*B.cols()+l. All indices run from 0.
template <typename T>
class BasicMatrix {
  public:
    using real_type = T;
    using value_type = std::complex<T>;

    BasicMatrix() = default;

    BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    BasicMatrix(std::size_t rows, std::size_t cols, std::vector<value_type> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionMismatch(
                "expected " + std::to_string(rows_ * cols_) + " entries, got " + std::to_string(data_.size()));
        }
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NonFiniteEntry("matrix entry is NaN or infinite");
            }
        }
    }

    BasicMatrix(std::initializer_list<std::initializer_list<value_type>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw DimensionMismatch("ragged initializer list");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; i++) {
            m(i, i) = 1;
        }
        return m;
    }

    /// The matrix unit |i><j|.
    static BasicMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        BasicMatrix m(n, n);
        m(i, j) = 1;
        return m;
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    value_type &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const value_type &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<const value_type> entries() const {
        return data_;
    }

    BasicMatrix adjoint() const {
        BasicMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; i++) {
            for (std::size_t j = 0; j < cols_; j++) {
                r(j, i) = std::conj((*this)(i, j));
            }
        }
        return r;
    }

    /// Plain transpose in the computational basis (no conjugation).
    BasicMatrix transpose() const {
        BasicMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; i++) {
            for (std::size_t j = 0; j < cols_; j++) {
                r(j, i) = (*this)(i, j);
            }
        }
        return r;
    }

    BasicMatrix conj() const {
        BasicMatrix r = *this;
        for (auto &z : r.data_) {
            z = std::conj(z);
        }
        return r;
    }

    value_type trace() const {
        require_square("trace");
        value_type t = 0;
        for (std::size_t i = 0; i < rows_; i++) {
            t += (*this)(i, i);
        }
        return t;
    }

    BasicMatrix &operator+=(const BasicMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); k++) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    BasicMatrix &operator-=(const BasicMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); k++) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    BasicMatrix &operator*=(value_type s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix &b) {
        return a += b;
    }
    friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix &b) {
        return a -= b;
    }
    friend BasicMatrix operator*(BasicMatrix a, value_type s) {
        return a *= s;
    }
    friend BasicMatrix operator*(value_type s, BasicMatrix a) {
        return a *= s;
    }

    friend BasicMatrix operator*(const BasicMatrix &a, const BasicMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw DimensionMismatch(
                "product of " + a.shape_string() + " and " + b.shape_string());
        }
        BasicMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; i++) {
            for (std::size_t k = 0; k < a.cols_; k++) {
                value_type aik = a(i, k);
                if (aik == value_type{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; j++) {
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }

    bool operator==(const BasicMatrix &o) const = default;

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    void require_square(const char *op) const {
        if (!is_square()) {
            throw DimensionMismatch(std::string(op) + " needs a square matrix, got " + shape_string());
        }
    }

    void require_same_shape(const BasicMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionMismatch("shape " + shape_string() + " vs " + o.shape_string());
        }
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

/// Dense complex vector.
template <typename T>
class BasicVector {
  public:
    using real_type = T;
    using value_type = std::complex<T>;

    BasicVector() = default;
    explicit BasicVector(std::size_t dim) : data_(dim) {
    }
    explicit BasicVector(std::vector<value_type> entries) : data_(std::move(entries)) {
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NonFiniteEntry("vector entry is NaN or infinite");
            }
        }
    }
    BasicVector(std::initializer_list<value_type> entries) : data_(entries) {
    }

    static BasicVector basis(std::size_t dim, std::size_t k) {
        BasicVector v(dim);
        v[k] = 1;
        return v;
    }

    std::size_t dim() const {
        return data_.size();
    }
    value_type &operator[](std::size_t k) {
        return data_[k];
    }
    const value_type &operator[](std::size_t k) const {
        return data_[k];
    }
    std::span<const value_type> entries() const {
        return data_;
    }

    T norm_squared() const {
        T s = 0;
        for (const auto &z : data_) {
            s += std::norm(z);
        }
        return s;
    }

    BasicVector &operator*=(value_type s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }
    friend BasicVector operator*(value_type s, BasicVector v) {
        return v *= s;
    }
    friend BasicVector operator+(BasicVector a, const BasicVector &b) {
        if (a.dim() != b.dim()) {
            throw DimensionMismatch("vector sum of dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
        }
        for (std::size_t k = 0; k < a.dim(); k++) {
            a[k] += b[k];
        }
        return a;
    }

    bool operator==(const BasicVector &o) const = default;

  private:
    std::vector<value_type> data_;
};

using Complex = std::complex<double>;
using ComplexMatrix = BasicMatrix<double>;
using StateVector = BasicVector<double>;

/// <a|b>, conjugate-linear in the first argument.
template <typename T>
std::complex<T> inner(const BasicVector<T> &a, const BasicVector<T> &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("inner product of dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    std::complex<T> s = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

/// |a><b|
template <typename T>
BasicMatrix<T> outer(const BasicVector<T> &a, const BasicVector<T> &b) {
    BasicMatrix<T> m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < b.dim(); j++) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

template <typename T>
BasicVector<T> operator*(const BasicMatrix<T> &m, const BasicVector<T> &v) {
    if (m.cols() != v.dim()) {
        throw DimensionMismatch("matrix " + m.shape_string() + " applied to vector of dim " + std::to_string(v.dim()));
    }
    BasicVector<T> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); i++) {
        std::complex<T> s = 0;
        for (std::size_t j = 0; j < m.cols(); j++) {
            s += m(i, j) * v[j];
        }
        r[i] = s;
    }
    return r;
}

/// Largest entrywise modulus of a - b.
template <typename T>
T max_abs_diff(const BasicMatrix<T> &a, const BasicMatrix<T> &b) {
    a.require_same_shape(b);
    T m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); k++) {
        m = std::max(m, std::abs(ea[k] - eb[k]));
    }
    return m;
}

template <typename T>
T max_abs_diff(const BasicVector<T> &a, const BasicVector<T> &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("vector dims differ");
    }
    T m = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

/// Kronecker product A (x) B.
template <typename T>
BasicMatrix<T> tensor_product(const BasicMatrix<T> &a, const BasicMatrix<T> &b) {
    BasicMatrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            auto aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

template <typename T>
BasicVector<T> tensor_product(const BasicVector<T> &a, const BasicVector<T> &b) {
    BasicVector<T> r(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t k = 0; k < b.dim(); k++) {
            r[i * b.dim() + k] = a[i] * b[k];
        }
    }
    return r;
}

/// Max-entry deviation of U*U from the identity.
template <typename T>
T unitarity_deviation(const BasicMatrix<T> &u) {
    u.require_square("unitarity check");
    return max_abs_diff(u.adjoint() * u, BasicMatrix<T>::identity(u.rows()));
}

}  // namespace ubases
