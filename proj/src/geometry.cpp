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

#include "geometry.hpp"

#include <algorithm>

namespace hk {

namespace {

mpz_class floor_div(const Rational& a) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return q;
}

mpz_class ceil_div(const Rational& a) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return q;
}

// Positive lambda with lambda * g primitive integral.
Rational primitive_scale(const QVec& g) {
    mpz_class l = 1, gc = 0;
    for (const auto& q : g) {
        mpz_class d = q.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (const auto& q : g) {
        mpz_class num = Rational(q * l).get_num();
        mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), num.get_mpz_t());
    }
    require(gc != 0, Errc::Domain, "zero gradient");
    return Rational(l, gc);
}

int leading_sign(const QVec& g) {
    for (const auto& q : g)
        if (sgn(q) != 0) return sgn(q);
    return 0;
}

void check_dim(const Arrangement& arr, const Point& x) {
    require(static_cast<int>(x.size()) == arr.dim(), Errc::Dimension,
            "point of dimension " + std::to_string(x.size()) + " in a " +
                std::to_string(arr.dim()) + "-dimensional arrangement");
}

}  // namespace

AffineForm AffineForm::normalized() const {
    Rational lam = primitive_scale(gradient);
    if (leading_sign(gradient) < 0) lam = -lam;
    AffineForm out;
    for (const auto& q : gradient) out.gradient.push_back(lam * q);
    out.constant = lam * constant;
    return out;
}

std::string AffineForm::str() const {
    std::string s = "<";
    for (size_t i = 0; i < gradient.size(); ++i) s += (i ? "," : "") + gradient[i].get_str();
    return s + ">x + " + constant.get_str();
}

HyperplaneFamily HyperplaneFamily::canonical() const {
    require(sgn(period) >= 0, Errc::Domain, "negative period");
    Rational lam = primitive_scale(gradient);
    if (leading_sign(gradient) < 0) lam = -lam;
    HyperplaneFamily out;
    for (const auto& q : gradient) out.gradient.push_back(lam * q);
    out.base = lam * base;
    out.period = abs(lam) * period;
    if (sgn(out.period) > 0) out.base -= Rational(floor_div(out.base / out.period)) * out.period;
    return out;
}

bool operator<(const HyperplaneFamily& a, const HyperplaneFamily& b) {
    if (a.gradient != b.gradient)
        return std::lexicographical_compare(a.gradient.begin(), a.gradient.end(),
                                            b.gradient.begin(), b.gradient.end());
    if (a.period != b.period) return a.period < b.period;
    return a.base < b.base;
}

std::vector<Rational> shifts_in_open_interval(const HyperplaneFamily& f, const Rational& lo,
                                              const Rational& hi) {
    std::vector<Rational> out;
    if (!(lo < hi)) return out;
    if (sgn(f.period) == 0) {
        if (lo < f.base && f.base < hi) out.push_back(f.base);
        return out;
    }
    mpz_class k0 = floor_div((lo - f.base) / f.period) + 1;
    mpz_class k1 = ceil_div((hi - f.base) / f.period) - 1;
    for (mpz_class k = k0; k <= k1; ++k) out.push_back(f.base + Rational(k) * f.period);
    return out;
}

Arrangement::Arrangement(int dim, Point basepoint, std::vector<HyperplaneFamily> families,
                         std::vector<bool> relevant)
    : dim_(dim), x0_(std::move(basepoint)), fams_(std::move(families)), rel_(std::move(relevant)) {
    require(dim_ >= 0, Errc::Dimension, "negative dimension");
    require(static_cast<int>(x0_.size()) == dim_, Errc::Dimension, "basepoint dimension mismatch");
    if (rel_.empty()) rel_.assign(fams_.size(), true);
    require(rel_.size() == fams_.size(), Errc::Dimension, "relevance flags do not match families");
    for (auto& f : fams_) {
        require(static_cast<int>(f.gradient.size()) == dim_, Errc::Dimension,
                "family gradient dimension mismatch");
        require(leading_sign(f.gradient) != 0, Errc::Domain, "family with zero gradient");
        require(sgn(f.period) >= 0, Errc::Domain, "negative period");
    }
    for (size_t i = 0; i < fams_.size(); ++i) {
        const auto& f = fams_[i];
        Rational v = dot(f.gradient, x0_) + f.base;
        bool hit = sgn(f.period) == 0 ? sgn(v) == 0
                                      : Rational(v / f.period).get_den() == 1;
        require(!hit, Errc::Domain,
                "basepoint " + point_str(x0_) + " lies on a hyperplane of family " +
                    std::to_string(i));
    }
}

std::vector<AffineForm> Arrangement::members_near(size_t i, const Point& x,
                                                  const Rational& radius) const {
    const auto& f = fams_.at(i);
    Rational v = dot(f.gradient, x);
    // constants c with |v + c| <= radius, i.e. c in [-v - radius, -v + radius]
    std::vector<AffineForm> out;
    Rational lo = -v - radius, hi = -v + radius;
    if (sgn(f.period) == 0) {
        if (lo <= f.base && f.base <= hi) out.push_back(f.member(0));
        return out;
    }
    mpz_class k0 = ceil_div((lo - f.base) / f.period);
    mpz_class k1 = floor_div((hi - f.base) / f.period);
    for (mpz_class k = k0; k <= k1; ++k) out.push_back({f.gradient, f.base + Rational(k) * f.period});
    return out;
}

InnerProduct::InnerProduct(QMat gram) : g_(std::move(gram)) {
    require(g_.rows() == g_.cols(), Errc::Dimension, "Gram matrix must be square");
    for (int i = 0; i < g_.rows(); ++i)
        for (int j = 0; j < i; ++j)
            require(g_(i, j) == g_(j, i), Errc::Domain, "Gram matrix is not symmetric");
    for (int k = 1; k <= g_.rows(); ++k) {
        QMat minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor(i, j) = g_(i, j);
        require(sgn(minor.det()) > 0, Errc::Domain, "Gram matrix is not positive definite");
    }
    ginv_ = g_.rows() ? *g_.inverse() : QMat();
}

Rational InnerProduct::operator()(const QVec& u, const QVec& v) const {
    return dot(u, g_.apply(v));
}

std::vector<AffineForm> separating(const Arrangement& arr, const Point& x, const Point& y,
                                   bool relevant_only) {
    check_dim(arr, x);
    check_dim(arr, y);
    std::vector<AffineForm> out;
    for (size_t i = 0; i < arr.families().size(); ++i) {
        if (relevant_only && !arr.relevant()[i]) continue;
        const auto& f = arr.families()[i];
        Rational vx = dot(f.gradient, x), vy = dot(f.gradient, y);
        // constant c separates iff -c lies strictly between vx and vy
        Rational lo = -std::max(vx, vy), hi = -std::min(vx, vy);
        auto shifts = shifts_in_open_interval(f, lo, hi);
        // list hyperplanes in increasing position -c along the family
        for (auto it = shifts.rbegin(); it != shifts.rend(); ++it) out.push_back({f.gradient, *it});
    }
    return out;
}

int distance(const Arrangement& arr, const Point& x, const Point& y, bool relevant_only) {
    return static_cast<int>(separating(arr, x, y, relevant_only).size());
}

TriangleResult triangle_mode(const Arrangement& arr, const Point& x, const Point& y,
                             const Point& z, bool relevant_only) {
    auto xy = separating(arr, x, y, relevant_only);
    auto yz = separating(arr, y, z, relevant_only);
    TriangleResult r;
    r.additive = xy.size() + yz.size() == separating(arr, x, z, relevant_only).size();
    if (r.additive) return r;
    for (const auto& h : xy)
        for (const auto& k : yz)
            if (h == k) {
                r.witness = h;
                return r;
            }
    return r;
}

bool is_generic(const Arrangement& arr, const Point& x, bool relevant_only) {
    check_dim(arr, x);
    for (size_t i = 0; i < arr.families().size(); ++i) {
        if (relevant_only && !arr.relevant()[i]) continue;
        const auto& f = arr.families()[i];
        Rational v = dot(f.gradient, x) + f.base;
        if (sgn(f.period) == 0) {
            if (sgn(v) == 0) return false;
        } else if (Rational(v / f.period).get_den() == 1) {
            return false;
        }
    }
    return true;
}

Point reflect(const AffineForm& h, const InnerProduct& ip, const Point& x) {
    require(static_cast<int>(x.size()) == ip.dim() &&
                static_cast<int>(h.gradient.size()) == ip.dim(),
            Errc::Dimension, "reflect: dimension mismatch");
    QVec a = ip.sharp(h.gradient);
    Rational norm = dot(h.gradient, a);
    Rational f = 2 * h(x) / norm;
    Point out = x;
    for (size_t i = 0; i < out.size(); ++i) out[i] -= f * a[i];
    return out;
}

Crossing wall_crossing_point(const AffineForm& h, const Point& x, const Point& y) {
    Rational ax = h(x), ay = h(y);
    require(sgn(ax) * sgn(ay) < 0, Errc::Domain, "hyperplane does not separate the points");
    Rational t = ax / (ax - ay);
    Point p = x;
    for (size_t i = 0; i < p.size(); ++i) p[i] += t * (y[i] - x[i]);
    return {p, t};
}

std::string point_str(const Point& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].get_str();
    return s + ")";
}

}  // namespace hk
