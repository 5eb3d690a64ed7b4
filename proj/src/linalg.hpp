// Copyright 2026 The hecke-structure authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#pragma once

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace hk {

// Dense row-major matrix over an exact field (Rational or Scalar).
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<T>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows[0].size()) : 0;
        Mat m(r, c);
        for (int i = 0; i < r; ++i) {
            require(static_cast<int>(rows[i].size()) == c, Errc::Dimension, "ragged matrix rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    const std::vector<T>& data() const { return a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!hk::is_zero(x)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        require(a.c_ == b.r_, Errc::Dimension, "matrix product shape mismatch");
        Mat out(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (hk::is_zero(x)) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!hk::is_zero(b(k, j))) out(i, j) += x * b(k, j);
            }
        return out;
    }
    friend Mat operator+(Mat a, const Mat& b) {
        require(a.r_ == b.r_ && a.c_ == b.c_, Errc::Dimension, "matrix sum shape mismatch");
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Mat operator-(Mat a, const Mat& b) {
        require(a.r_ == b.r_ && a.c_ == b.c_, Errc::Dimension, "matrix difference shape mismatch");
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Mat operator*(const T& s, Mat a) {
        for (auto& x : a.a_) x = s * x;
        return a;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    std::vector<T> apply(const std::vector<T>& v) const {
        require(static_cast<int>(v.size()) == c_, Errc::Dimension, "matrix-vector shape mismatch");
        std::vector<T> out(r_, T(0));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (!hk::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    T trace() const {
        T t(0);
        for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> piv;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int p = -1;
            for (int i = row; i < r_; ++i)
                if (!hk::is_zero((*this)(i, col))) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            if (p != row)
                for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
            T f = T(1) / (*this)(row, col);
            for (int j = col; j < c_; ++j) (*this)(row, j) = f * (*this)(row, j);
            for (int i = 0; i < r_; ++i) {
                if (i == row || hk::is_zero((*this)(i, col))) continue;
                T g = (*this)(i, col);
                for (int j = col; j < c_; ++j) (*this)(i, j) -= g * (*this)(row, j);
            }
            piv.push_back(col);
            ++row;
        }
        return piv;
    }

    int rank() const {
        Mat m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of {v : M v = 0}.
    std::vector<std::vector<T>> nullspace() const {
        Mat m = *this;
        std::vector<int> piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (int p : piv) is_piv[p] = true;
        std::vector<std::vector<T>> basis;
        for (int f = 0; f < c_; ++f) {
            if (is_piv[f]) continue;
            std::vector<T> v(c_, T(0));
            v[f] = T(1);
            for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(static_cast<int>(i), f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::optional<Mat> inverse() const {
        require(r_ == c_, Errc::Dimension, "inverse of a non-square matrix");
        if (r_ == 0) return Mat(0, 0);
        Mat aug(r_, 2 * r_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < r_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, r_ + i) = T(1);
        }
        std::vector<int> piv = aug.rref();
        if (static_cast<int>(piv.size()) < r_ || piv[r_ - 1] >= r_) return std::nullopt;
        Mat inv(r_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) inv(i, j) = aug(i, r_ + j);
        return inv;
    }

    T det() const {
        require(r_ == c_, Errc::Dimension, "determinant of a non-square matrix");
        Mat m = *this;
        T d(1);
        for (int col = 0; col < r_; ++col) {
            int p = -1;
            for (int i = col; i < r_; ++i)
                if (!hk::is_zero(m(i, col))) {
                    p = i;
                    break;
                }
            if (p < 0) return T(0);
            if (p != col) {
                for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(col, j));
                d = -d;
            }
            d *= m(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (hk::is_zero(m(i, col))) continue;
                T g = m(i, col) / m(col, col);
                for (int j = col; j < c_; ++j) m(i, j) -= g * m(col, j);
            }
        }
        return d;
    }

    // Some solution of M x = b, if any.
    std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
        require(static_cast<int>(b.size()) == r_, Errc::Dimension, "solve: rhs length mismatch");
        Mat aug(r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_) = b[i];
        }
        std::vector<int> piv = aug.rref();
        if (!piv.empty() && piv.back() == c_) return std::nullopt;
        std::vector<T> x(c_, T(0));
        for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(static_cast<int>(i), c_);
        return x;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using QMat = Mat<Rational>;
using SMat = Mat<Scalar>;
using QVec = std::vector<Rational>;
using SVec = std::vector<Scalar>;

inline Rational dot(const QVec& a, const QVec& b) {
    require(a.size() == b.size(), Errc::Dimension, "dot product length mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline SMat to_scalar(const QMat& m) {
    SMat s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s(i, j) = Scalar(m(i, j));
    return s;
}

// If a == c * b for a scalar c (b nonzero), return c.
std::optional<Scalar> scalar_ratio(const SMat& a, const SMat& b);

// Coefficients expressing target in the span of the given matrices, if possible.
std::optional<SVec> express_in_span(const std::vector<SMat>& basis, const SMat& target);

}  // namespace hk
