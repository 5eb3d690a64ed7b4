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

// Finite models of families of covers: points x with (K_x, K_x+, theta_x, rho_x) inside a finite
// ambient group, a Levi pair (K_M, rho_M), and a group N acting on the points.  Every compactly
// induced representation ind_{K_x}(rho_x) is stored in coordinates at right coset representatives,
// so intertwining operators are plain matrices.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fingroup.hpp"
#include "report.hpp"

namespace hk {

struct CoverPoint {
    std::string name;
    Subgroup K, Kplus;
    Rep rho;    // representation of K
    Rep theta;  // one-dimensional character of K_plus
};

struct UnipotentPair {
    Subgroup U, Ubar;
};

// Everything needed to build a family; validated by CoverFamily's constructor only for shape.
struct CoverSpec {
    std::shared_ptr<const FinGroup> H;
    int cyclotomic = 1;  // order of the roots of unity used by the representations
    int p = 0;           // 0: infer from the subgroup indices
    std::vector<CoverPoint> points;
    Subgroup KM;
    Rep rhoM;
    std::vector<UnipotentPair> unipotents;
    std::vector<std::vector<int>> distance;  // symmetric table on points
    std::vector<int> nheart_gens;            // elements of H
    std::vector<std::vector<int>> gen_action;  // per generator: image of every point
    int base = 0;
};

class CoverFamily {
public:
    explicit CoverFamily(CoverSpec spec);

    const FinGroup& H() const { return *H_; }
    const Ctx* ctx() const { return ctx_; }
    int p() const { return p_; }
    int size() const { return static_cast<int>(points_.size()); }
    int base() const { return base_; }
    int dim() const { return rhoM_.dim; }
    const CoverPoint& point(int x) const { return points_.at(x); }
    const HeckeSetting& setting(int x) const { return *settings_.at(x); }
    const Subgroup& KM() const { return KM_; }
    const Rep& rhoM() const { return rhoM_; }
    const std::vector<UnipotentPair>& unipotents() const { return unipotents_; }
    int distance(int x, int y) const { return dist_.at(x).at(y); }
    int find_point(const std::string& name) const;

    // N and its action.
    const Subgroup& N() const { return N_; }
    int act(int n, int x) const;  // n . x for n in N

    // W = N / (N cap K_M): classes with least-index lifts; class 0 is the identity.
    int w_size() const { return static_cast<int>(w_lift_.size()); }
    int w_class(int n) const { return w_of_.at(n); }
    int w_lift(int w) const { return w_lift_.at(w); }
    int w_mul(int a, int b) const { return w_class(H_->mul(w_lift_[a], w_lift_[b])); }
    int w_inv(int a) const { return w_class(H_->inv(w_lift_[a])); }
    std::string w_label(int w) const;
    int w_act(int w, int x) const { return act(w_lift_.at(w), x); }
    int w_act_inv(int w, int x) const { return act(H_->inv(w_lift_.at(w)), x); }

    // p-power helpers: |A / (A cap B)| as an exponent of p.
    long index_exponent(const Subgroup& A, const Subgroup& B) const;

private:
    std::shared_ptr<const FinGroup> H_;
    const Ctx* ctx_ = nullptr;
    int p_ = 0;
    std::vector<CoverPoint> points_;
    std::vector<std::shared_ptr<HeckeSetting>> settings_;
    Subgroup KM_;
    Rep rhoM_;
    std::vector<UnipotentPair> unipotents_;
    std::vector<std::vector<int>> dist_;
    Subgroup N_;
    std::vector<std::vector<int>> action_;  // per element of H (empty outside N)
    std::vector<int> w_of_, w_lift_;
    int base_ = 0;
};

// T_n for the lift of each W-class; other lifts follow T_{nk} = T_n rho_M(k).
struct TFamily {
    std::vector<SMat> at_lift;
};

TFamily default_T(const CoverFamily& fam);
SMat T_of(const CoverFamily& fam, const TFamily& T, int n);
CheckReport validate_T(const CoverFamily& fam, const TFamily& T);

CheckReport validate_family(const CoverFamily& fam);

// Matrices between coordinate spaces: rows indexed by the target point, columns by the source.
SMat theta_op(const CoverFamily& fam, int x, int y);    // Theta_{y|x}
SMat theta_norm(const CoverFamily& fam, int x, int y);  // Theta^norm_{y|x}
bool is_relevant(const CoverFamily& fam, int x, int y);
SMat c_op(const CoverFamily& fam, const TFamily& T, int x, int n);  // ind(x) -> ind(n x)
SMat phi_op(const CoverFamily& fam, const TFamily& T, int x, int w);
Scalar mu_from_T(const CoverFamily& fam, const TFamily& T, int m, int n);  // W-classes
// (Theta_{x|y} Theta_{y|x})(f_v)(1) as a dim x dim matrix acting on v.
SMat constant_term(const CoverFamily& fam, int x, int y);

// Relevant walls through the base point and the splitting W = W_rel x| Omega.
struct WallStructure {
    std::vector<int> simple;  // W-classes s with s^2 = 1 and a relevant step x0 -> s^-1 x0
    std::vector<int> waff;    // subgroup generated by simple
    std::vector<int> omega;   // classes whose image of x0 is reachable through non-relevant steps
    std::vector<int> rel_length;  // per W-class: word length of the W_rel part, -1 if not split
    std::vector<int> omega_part;  // per W-class: t with w = t u
    std::vector<int> waff_part;   // per W-class: u
    bool split = true;
    std::string why;
};
WallStructure wall_structure(const CoverFamily& fam);

struct NormalizedT {
    TFamily T;
    std::map<int, Scalar> d, q, a, b;  // per simple reflection class
};
NormalizedT normalize_T(const CoverFamily& fam, const TFamily& T, const CoeffPlusRule& rule = default_rule());

CheckReport relation_suite(const CoverFamily& fam, const TFamily& T);
CheckReport support_bijection_check(const CoverFamily& fam);

struct StarResult {
    CheckReport report;
    std::map<int, Scalar> c;  // per W-class
};
StarResult star_check(const CoverFamily& fam, const TFamily& T);

struct StructureResult {
    CheckReport report;
    WallStructure walls;
    NormalizedT normalized;
    std::vector<std::vector<Scalar>> mu_omega;  // on Omega, in the order of walls.omega
    int products_checked = 0;
    std::string target;
};
StructureResult structure_report(const CoverFamily& fam, const TFamily& T, const CoeffPlusRule& rule = default_rule());

}  // namespace hk
