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
#include <string>
#include <vector>

#include "linalg.hpp"

namespace hk {

using Point = QVec;

// a(x) = <gradient, x> + constant
struct AffineForm {
    QVec gradient;
    Rational constant;

    Rational operator()(const Point& x) const { return dot(gradient, x) + constant; }
    // Same zero set, primitive integer gradient with positive leading entry.
    AffineForm normalized() const;
    std::string str() const;
    friend bool operator==(const AffineForm& a, const AffineForm& b) {
        return a.gradient == b.gradient && a.constant == b.constant;
    }
};

// {x : <gradient, x> + base + k * period = 0, k in Z}; period 0 is a single hyperplane.
struct HyperplaneFamily {
    QVec gradient;
    Rational base;
    Rational period;

    HyperplaneFamily canonical() const;
    AffineForm member(const Rational& shift) const { return {gradient, base + shift}; }
    friend bool operator==(const HyperplaneFamily& a, const HyperplaneFamily& b) {
        return a.gradient == b.gradient && a.base == b.base && a.period == b.period;
    }
    friend bool operator<(const HyperplaneFamily& a, const HyperplaneFamily& b);
};

// Constants base + kP (k in Z) lying strictly inside (lo, hi).
std::vector<Rational> shifts_in_open_interval(const HyperplaneFamily& f, const Rational& lo,
                                              const Rational& hi);

class Arrangement {
public:
    Arrangement() = default;
    Arrangement(int dim, Point basepoint, std::vector<HyperplaneFamily> families,
                std::vector<bool> relevant);

    int dim() const { return dim_; }
    const Point& basepoint() const { return x0_; }
    const std::vector<HyperplaneFamily>& families() const { return fams_; }
    const std::vector<bool>& relevant() const { return rel_; }

    // Hyperplanes of family i whose form value at x is in [-radius, radius].
    std::vector<AffineForm> members_near(size_t i, const Point& x, const Rational& radius) const;

private:
    int dim_ = 0;
    Point x0_;
    std::vector<HyperplaneFamily> fams_;
    std::vector<bool> rel_;
};

class InnerProduct {
public:
    explicit InnerProduct(QMat gram);
    static InnerProduct standard(int n) { return InnerProduct(QMat::identity(n)); }

    const QMat& gram() const { return g_; }
    const QMat& gram_inv() const { return ginv_; }
    int dim() const { return g_.rows(); }
    Rational operator()(const QVec& u, const QVec& v) const;
    // Vector dual to a covector: G^{-1} g.
    QVec sharp(const QVec& covector) const { return ginv_.apply(covector); }

private:
    QMat g_, ginv_;
};

std::vector<AffineForm> separating(const Arrangement& arr, const Point& x, const Point& y,
                                   bool relevant_only = false);
int distance(const Arrangement& arr, const Point& x, const Point& y, bool relevant_only = false);

struct TriangleResult {
    bool additive = true;
    std::optional<AffineForm> witness;
};
TriangleResult triangle_mode(const Arrangement& arr, const Point& x, const Point& y,
                             const Point& z, bool relevant_only = false);

bool is_generic(const Arrangement& arr, const Point& x, bool relevant_only = false);

Point reflect(const AffineForm& h, const InnerProduct& ip, const Point& x);

struct Crossing {
    Point h;
    Rational t;
};
Crossing wall_crossing_point(const AffineForm& h, const Point& x, const Point& y);

std::string point_str(const Point& x);

}  // namespace hk
