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

#include <string>

#include "geometry.hpp"

namespace hk {

// x -> A x + b.  Equality is by (A, b) only.
struct AffineIso {
    QMat A;
    QVec b;

    static AffineIso identity(int n) { return {QMat::identity(n), QVec(n, Rational(0))}; }
    int dim() const { return A.rows(); }

    Point operator()(const Point& x) const {
        Point y = A.apply(x);
        for (size_t i = 0; i < y.size(); ++i) y[i] += b[i];
        return y;
    }
    // (f * g)(x) = f(g(x))
    friend AffineIso operator*(const AffineIso& f, const AffineIso& g) {
        QVec t = f.A.apply(g.b);
        for (size_t i = 0; i < t.size(); ++i) t[i] += f.b[i];
        return {f.A * g.A, t};
    }
    AffineIso inverse() const {
        auto inv = A.inverse();
        require(inv.has_value(), Errc::Domain, "affine map is not invertible");
        QVec t = inv->apply(b);
        for (auto& q : t) q = -q;
        return {*inv, t};
    }
    bool is_identity() const { return A == QMat::identity(dim()) && b == QVec(dim(), Rational(0)); }
    bool is_isometry(const QMat& gram) const { return A.transpose() * gram * A == gram; }

    friend bool operator==(const AffineIso& f, const AffineIso& g) { return f.A == g.A && f.b == g.b; }
    friend bool operator!=(const AffineIso& f, const AffineIso& g) { return !(f == g); }
    friend bool operator<(const AffineIso& f, const AffineIso& g) {
        const auto& fa = f.A.data();
        const auto& ga = g.A.data();
        if (fa != ga) return std::lexicographical_compare(fa.begin(), fa.end(), ga.begin(), ga.end());
        return std::lexicographical_compare(f.b.begin(), f.b.end(), g.b.begin(), g.b.end());
    }

    // Image of the zero set of a: the form a o f^{-1}.
    AffineForm push_form(const AffineForm& a) const {
        AffineIso inv = inverse();
        AffineForm out;
        out.gradient = inv.A.transpose().apply(a.gradient);
        out.constant = dot(a.gradient, inv.b) + a.constant;
        return out;
    }

    std::string str() const {
        std::string s = "{A:[";
        for (int i = 0; i < A.rows(); ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < A.cols(); ++j) s += (j ? "," : "") + A(i, j).get_str();
            s += "]";
        }
        s += "],b:[";
        for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + b[i].get_str();
        return s + "]}";
    }
};

// Orthogonal reflection across the zero set of h for the given inner product.
inline AffineIso reflection(const AffineForm& h, const InnerProduct& ip) {
    int n = ip.dim();
    QVec a = ip.sharp(h.gradient);
    Rational norm = dot(h.gradient, a);
    AffineIso s = AffineIso::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) s.A(i, j) -= 2 * a[i] * h.gradient[j] / norm;
        s.b[i] = -2 * h.constant * a[i] / norm;
    }
    return s;
}

}  // namespace hk
