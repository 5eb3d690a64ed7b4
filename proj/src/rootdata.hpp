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

#include "geometry.hpp"
#include "reflections.hpp"
#include "report.hpp"

namespace hk {

// Points of the apartment are written in simple-root coordinates: x_i = alpha_i(x).
// A root sum_i c_i alpha_i is then the linear form c.x.
using RootVec = std::vector<long>;

class RootSystem {
public:
    // "A3", "B2", "C3", "D4", "G2".
    static RootSystem make(const std::string& label);

    const std::string& label() const { return label_; }
    char family() const { return family_; }
    int rank() const { return rank_; }
    const std::vector<QVec>& simple_ambient() const { return simple_; }
    const QMat& pairing() const { return B_; }  // (alpha_i, alpha_j)
    QMat cartan() const;                        // 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
    const std::vector<RootVec>& roots() const { return roots_; }  // positives first
    size_t num_positive() const { return npos_; }
    bool is_root(const RootVec& r) const;
    // Inner product on the apartment in these coordinates (inverse of the pairing).
    InnerProduct apartment_ip() const;

private:
    std::string label_;
    char family_ = 'A';
    int rank_ = 0;
    std::vector<QVec> simple_;
    QMat B_;
    std::vector<RootVec> roots_;
    size_t npos_ = 0;
};

// Known Cartan matrix for a type, used as the invariant check.
QMat expected_cartan(char family, int rank);
size_t expected_root_count(char family, int rank);

struct AffineRoot {
    RootVec root;
    long level = 0;

    Rational operator()(const Point& x) const;
    friend bool operator==(const AffineRoot& a, const AffineRoot& b) {
        return a.root == b.root && a.level == b.level;
    }
    friend bool operator<(const AffineRoot& a, const AffineRoot& b) {
        return a.root != b.root ? a.root < b.root : a.level < b.level;
    }
    std::string str() const;
};

std::vector<AffineRoot> affine_roots_in_slab(const RootSystem& rs, const Point& x, const Point& y);
std::vector<AffineRoot> vanishing_roots_at(const RootSystem& rs, const Point& x);

struct LeviSubset {
    std::vector<int> simple;  // indices of simple roots in the Levi

    bool contains_root(const RootVec& r) const;
};

// Columns span V_M = common kernel of the Levi simple roots, from the RREF nullspace.
QMat levi_direction_basis(const RootSystem& rs, const LeviSubset& levi);
std::vector<RootVec> levi_roots(const RootSystem& rs, const LeviSubset& levi);

struct DepthZero {
    Arrangement arrangement;  // intrinsic coordinates, origin = x0
    InnerProduct ip{QMat()};
    Point x0;
    QMat basis;  // columns: directions of V_M

    Point ambient(const Point& intrinsic) const;
};

// basis_override: alternative columns spanning V_M (used to test basis independence).
DepthZero depthzero_arrangement(const RootSystem& rs, const LeviSubset& levi, const Point& x0,
                                const std::optional<QMat>& basis_override = std::nullopt);

// Phi_aff,x contained in Phi_aff,y; x and y in intrinsic coordinates of dz.
bool vanishing_monotone_check(const RootSystem& rs, const DepthZero& dz, const Point& x, const Point& y);

struct QuotientSpace {
    QMat projection;                 // k x n, kernel = common kernel of relevant gradients
    Arrangement arrangement;         // relevant families only
    InnerProduct ip{QMat()};
    std::vector<int> family_map;     // original family -> projected family, -1 if not relevant

    int dim() const { return projection.rows(); }
    Point project(const Point& x) const { return projection.apply(x); }
};

QuotientSpace quotient_space(const Arrangement& arr, const InnerProduct& ip);

// Invariance under the group generators, properness (delegated), infinite parallel classes.
CheckReport verify_affine_root_conditions(const Arrangement& arr, const ReflectionGroupData& group,
                                          const std::vector<AffineIso>& extra_generators = {});

}  // namespace hk
