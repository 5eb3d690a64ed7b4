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
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reflections.hpp"
#include "scalar.hpp"

namespace hk {

// mu : Omega x Omega -> units.  A table for finite Omega, or c^{ab} on (w^a, w^b) for infinite cyclic Omega.
class Cocycle {
public:
    static Cocycle trivial(const OmegaGroup& om);
    static Cocycle from_table(std::vector<std::vector<Scalar>> table);
    static Cocycle bicharacter(const Scalar& c);

    Scalar operator()(long a, long b) const;
    bool finite() const { return finite_; }
    const std::vector<std::vector<Scalar>>& table() const { return table_; }
    const Scalar& base() const { return c_; }

private:
    bool finite_ = true;
    std::vector<std::vector<Scalar>> table_;
    Scalar c_ = Scalar(1);
};

struct CocycleCheck {
    bool ok = true;
    std::string reason;           // "normalization" or "cocycle"
    std::array<long, 3> witness{};  // (v, w, u); for normalization (t, 0, 0)
};

// Exhaustive over triples for finite Omega; |a|,|b|,|c| <= window for infinite cyclic Omega.
CocycleCheck validate_cocycle(const Cocycle& mu, const OmegaGroup& om, long window = 4);

// beta with mu1(s,t) = mu2(s,t) beta(s) beta(t) / beta(st), beta(1) = 1, values in the pool.
std::optional<std::vector<Scalar>> coboundary_search(const Cocycle& mu1, const Cocycle& mu2,
                                                     const OmegaGroup& om, const std::vector<Scalar>& pool);

// Dimension of the centre of the twisted group algebra C[Omega, mu].
int twisted_center_dimension(const Cocycle& mu, const OmegaGroup& om);

// Homomorphism Omega -> units, by value table (finite) or by the value on the generator (infinite).
struct OmegaCharacter {
    std::vector<Scalar> values;
    std::optional<Scalar> generator_value;

    Scalar operator()(long t) const;
};

struct BasisKey {
    long omega = 0;
    AffineIso w;

    friend bool operator<(const BasisKey& a, const BasisKey& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        return a.w < b.w;
    }
    friend bool operator==(const BasisKey& a, const BasisKey& b) { return a.omega == b.omega && a.w == b.w; }
};

class HeckeAlgebra;

// Finitely supported combination of gamma_t T_w; zero coefficients are never stored.
class ProductAlgElem {
public:
    ProductAlgElem() = default;
    explicit ProductAlgElem(const HeckeAlgebra* owner) : owner_(owner) {}

    const HeckeAlgebra* owner() const { return owner_; }
    const std::map<BasisKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const BasisKey& k) const;

    void add(const BasisKey& k, const Scalar& c);
    ProductAlgElem& operator+=(const ProductAlgElem& o);
    friend ProductAlgElem operator+(ProductAlgElem a, const ProductAlgElem& b) { return a += b; }
    friend ProductAlgElem operator-(ProductAlgElem a, const ProductAlgElem& b) { return a += b.scaled(Scalar(-1)); }
    ProductAlgElem scaled(const Scalar& c) const;
    friend bool operator==(const ProductAlgElem& a, const ProductAlgElem& b);
    friend bool operator!=(const ProductAlgElem& a, const ProductAlgElem& b) { return !(a == b); }

private:
    const HeckeAlgebra* owner_ = nullptr;
    std::map<BasisKey, Scalar> terms_;
};

class HeckeAlgebra {
public:
    // q indexed by simple reflection.  Validates q against the coefficient rule and conjugacy classes.
    HeckeAlgebra(const ReflectionGroupData& d, const OmegaGroup& om, std::vector<Scalar> q, Cocycle mu,
                 const CoeffPlusRule& rule = default_rule());

    const ReflectionGroupData& group() const { return d_; }
    const OmegaGroup& omega() const { return om_; }
    const std::vector<Scalar>& q() const { return q_; }
    const Cocycle& mu() const { return mu_; }
    const std::vector<std::vector<int>>& classes() const { return classes_; }

    ProductAlgElem zero() const { return ProductAlgElem(this); }
    ProductAlgElem one() const { return basis(0, identity_iso()); }
    ProductAlgElem basis(long t, const AffineIso& w, const Scalar& c = Scalar(1)) const;
    ProductAlgElem T(const Word& word) const;  // product T_{s1} ... T_{sk}
    ProductAlgElem T_iso(const AffineIso& w) const { return basis(0, w); }
    ProductAlgElem gamma(long t) const { return basis(t, identity_iso()); }
    AffineIso identity_iso() const { return AffineIso::identity(d_.dim()); }

    ProductAlgElem mul(const ProductAlgElem& a, const ProductAlgElem& b) const;
    // Throws unless conj(mu(a,b)) = mu(b^-1, a^-1) on the checked range and q is real.
    ProductAlgElem star(const ProductAlgElem& x) const;
    void check_star_compatible(long window = 4) const;
    ProductAlgElem psi(const OmegaCharacter& chi, const ProductAlgElem& x) const;

    int length(const AffineIso& w) const;
    // Reduced word of w in W_aff (throws if w is not in W_aff).
    Word word_of(const AffineIso& w) const;
    AffineIso conj_by_omega_inv(long t, const AffineIso& w) const;  // t^{-1} w t

    std::string str(const ProductAlgElem& x) const;

private:
    using HeckeVec = std::map<AffineIso, Scalar>;
    HeckeVec hecke_mul(const AffineIso& v, const AffineIso& w) const;
    const HeckeVec& mul_s(int s, const AffineIso& u) const;

    const ReflectionGroupData& d_;
    const OmegaGroup& om_;
    std::vector<Scalar> q_;
    Cocycle mu_;
    std::vector<std::vector<int>> classes_;
    mutable std::mutex mu_memo_;
    mutable std::map<std::pair<int, AffineIso>, HeckeVec> memo_s_;
    mutable std::map<AffineIso, int> memo_len_;
    mutable WordCache words_;
};

// All homomorphisms Omega -> pool (finite Omega), optionally only those with |chi(t)| = 1,
// each verified multiplicative on random basis pairs.
std::vector<OmegaCharacter> enumerate_support_preserving_autos(const HeckeAlgebra& alg,
                                                               const std::vector<Scalar>& pool,
                                                               bool star_preserving = false,
                                                               unsigned seed = 1, int samples = 12);

// Every support-preserving rescaling T_s -> a_s T_s, gamma_t -> b_t gamma_t with values in the pool,
// checked against the defining relations.  Reports how many assignments are automorphisms and
// whether each of them has a_s = 1 and b a homomorphism.
struct RescalingScan {
    long tried = 0;
    long automorphisms = 0;
    bool all_are_psi_chi = true;
};
RescalingScan scan_support_preserving_rescalings(const HeckeAlgebra& alg, const std::vector<Scalar>& pool);

}  // namespace hk
