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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "scalar.hpp"

namespace hk {

// Finite group as a multiplication table; element 0 is the identity.
class FinGroup {
public:
    enum class Kind { Table, Cyclic, Dihedral, Symmetric, GL2, SL2, Product };

    static FinGroup from_table(std::vector<std::vector<int>> table, std::string name = "table");
    static FinGroup cyclic(int n);
    static FinGroup dihedral(int n);  // order 2n
    static FinGroup symmetric(int n);
    static FinGroup gl2(int q);
    static FinGroup sl2(int q);
    static FinGroup product(const FinGroup& a, const FinGroup& b);

    int order() const { return static_cast<int>(mul_.size()); }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    const std::vector<std::vector<int>>& table() const { return mul_; }
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int field() const { return q_; }
    std::string label(int g) const;

    // Structured access.  Permutations are image lists on {0..n-1}; products act right-to-left.
    const std::vector<int>& perm(int g) const { return perms_.at(g); }
    const std::array<int, 4>& matrix(int g) const { return mats_.at(g); }  // a b c d, entries mod q
    int element_of_perm(const std::vector<int>& p) const;
    int element_of_matrix(std::array<int, 4> m) const;
    int perm_sign(int g) const;

private:
    void finish();
    Kind kind_ = Kind::Table;
    std::string name_;
    int q_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> perms_;
    std::vector<std::array<int, 4>> mats_;
};

struct Subgroup {
    std::vector<int> elems;  // sorted ambient indices, contains 0
    std::vector<int> pos;    // ambient index -> position in elems, or -1

    bool contains(int g) const { return pos[g] >= 0; }
    int order() const { return static_cast<int>(elems.size()); }
};

Subgroup subgroup_from_generators(const FinGroup& g, const std::vector<int>& gens);
Subgroup subgroup_from_elements(const FinGroup& g, std::vector<int> elems);  // validated
Subgroup whole_group(const FinGroup& g);
Subgroup intersect(const FinGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const FinGroup& g, const Subgroup& k, int x);  // x K x^-1

// borel, borel_lower, unipotent, unipotent_lower, torus, monomial (GL2/SL2);
// s{n-1}: stabiliser of the last point (symmetric); trivial; all.
Subgroup named_subgroup(const FinGroup& g, const std::string& name);

// Representation of a subgroup K of an ambient group, by matrices per element of K.
struct Rep {
    Subgroup K;
    int dim = 0;
    std::vector<SMat> mats;  // aligned with K.elems

    const SMat& operator()(int g) const;
};

Rep trivial_rep(const Subgroup& K);
Rep sign_rep(const FinGroup& g, const Subgroup& K);
// Matrices on generators, extended by closure; throws if not a homomorphism.
Rep rep_from_generators(const FinGroup& g, const Subgroup& K, const std::vector<int>& gens,
                        const std::vector<SMat>& mats);
// Character of the diagonal torus (or any subgroup of diagonal matrices):
// diag(a, d) -> w(a)^e1 w(d)^e2 with w : F_q^* -> roots of unity, w(generator) = zeta_{q-1}.
Rep torus_character(const FinGroup& g, const Subgroup& K, int e1, int e2, const Ctx* ctx);
// rho o conj: (x rho)(k) = rho(x^-1 k x), a representation of x K x^-1.
bool verify_rep(const FinGroup& g, const Rep& r, std::string* why = nullptr);

// Functions H -> End(V_rho) with the bi-equivariance property, stored densely.
class HeckeSetting;
struct HeckeFunc {
    const HeckeSetting* setting = nullptr;
    std::vector<SMat> values;  // per element of H

    bool is_zero() const;
    std::vector<int> support() const;
    friend bool operator==(const HeckeFunc& a, const HeckeFunc& b);
    HeckeFunc operator+(const HeckeFunc& o) const;
    HeckeFunc scaled(const Scalar& c) const;
};

// H, K, rho together with the coset bookkeeping used by induction and convolution.
class HeckeSetting {
public:
    HeckeSetting(const FinGroup& H, Subgroup K, Rep rho);

    const FinGroup& group() const { return H_; }
    const Subgroup& K() const { return K_; }
    const Rep& rho() const { return rho_; }
    int dim() const { return rho_.dim; }
    int index() const { return static_cast<int>(right_reps_.size()); }

    // Right cosets K r_i (r_0 = 1); every g = k r_i uniquely.
    const std::vector<int>& right_reps() const { return right_reps_; }
    int right_coset(int g) const { return rcoset_[g]; }
    int right_k(int g) const { return rk_[g]; }
    // Left cosets h K, one representative each (least index).
    const std::vector<int>& left_reps() const { return left_reps_; }

    // Double cosets K\H/K, least-index representatives.
    const std::vector<int>& double_cosets() const { return dcos_; }
    int double_coset_of(int g) const { return dcos_of_[g]; }

    // Induced representation: ind(h), block (i, j) = rho(k) where r_i h = k r_j.
    SMat induced(int h) const;
    SMat induced_embedding() const;  // v -> f_v as a (index*dim) x dim matrix

    std::vector<SMat> intertwiner_space(int g) const;
    // Function supported on KgK with value T at g.
    HeckeFunc basis_function(int g, const SMat& T) const;
    HeckeFunc unit() const;
    HeckeFunc zero() const;
    // All basis functions, grouped by double coset.
    std::vector<std::pair<int, HeckeFunc>> hecke_basis() const;

    HeckeFunc convolve(const HeckeFunc& a, const HeckeFunc& b) const;
    SMat transport(const HeckeFunc& f) const;
    HeckeFunc transport_inverse(const SMat& e) const;
    // Bi-equivariance and the intertwining condition; empty string when fine.
    std::string check(const HeckeFunc& f) const;

private:
    const FinGroup& H_;
    Subgroup K_;
    Rep rho_;
    std::vector<int> right_reps_, rcoset_, rk_, left_reps_, dcos_, dcos_of_;
};

Subgroup double_coset(const FinGroup& H, const Subgroup& K, const Subgroup& K2, int g);  // as element list
std::vector<int> double_cosets(const FinGroup& H, const Subgroup& K, const Subgroup& K2);

struct TwoDecomposition {
    SMat E;           // transport of the non-unit generator
    Scalar a, b;      // E^2 = a E + b
    Scalar lambda1, lambda2;
    SMat p1, p2;
    int dim1 = 0, dim2 = 0;
    int h = 0;        // representative of the non-unit double coset
};

TwoDecomposition decompose_two(const HeckeSetting& s);

// (dim chi / |H|) sum_h conj(chi(h)) ind(h); chi given per element of H.
SMat trace_formula_projector(const HeckeSetting& s, const std::vector<Scalar>& chi, int dim);

Scalar q_parameter(const HeckeSetting& s, int h, const CoeffPlusRule& rule = default_rule());

// Solve b d^2 - a d - 1 = 0 for the normalising factor, choosing the root with b d^2 in the plus half.
// Returns (d, q = b d^2).  a = 0 forces q = 1 and is rejected.
std::pair<Scalar, Scalar> solve_normalization(const Scalar& a, const Scalar& b,
                                              const CoeffPlusRule& rule = default_rule());

struct NormalizedGenerator {
    HeckeFunc phi;
    Scalar q, d, a, b;
};
NormalizedGenerator normalized_generator(const HeckeSetting& s, int h, const CoeffPlusRule& rule = default_rule());

}  // namespace hk
