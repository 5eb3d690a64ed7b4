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

#include "hecke_algebra.hpp"

#include <functional>
#include <set>

#include "linalg.hpp"

namespace hk {

// ---------------------------------------------------------------- cocycles

Cocycle Cocycle::trivial(const OmegaGroup& om) {
    if (!om.finite()) return bicharacter(Scalar(1));
    size_t n = static_cast<size_t>(om.size());
    return from_table(std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(1))));
}

Cocycle Cocycle::from_table(std::vector<std::vector<Scalar>> table) {
    for (const auto& row : table) {
        require(row.size() == table.size(), Errc::Config, "cocycle table is not square");
        for (const auto& v : row) require(!v.is_zero(), Errc::Domain, "cocycle value is zero");
    }
    Cocycle c;
    c.table_ = std::move(table);
    return c;
}

Cocycle Cocycle::bicharacter(const Scalar& base) {
    require(!base.is_zero(), Errc::Domain, "bicharacter base is zero");
    Cocycle c;
    c.finite_ = false;
    c.c_ = base;
    return c;
}

Scalar Cocycle::operator()(long a, long b) const {
    if (finite_) return table_.at(a).at(b);
    return c_.pow(a * b);
}

CocycleCheck validate_cocycle(const Cocycle& mu, const OmegaGroup& om, long window) {
    require(mu.finite() == om.finite(), Errc::Config, "cocycle and Omega disagree on finiteness");
    std::vector<long> els;
    if (om.finite()) {
        require(static_cast<long>(mu.table().size()) == om.size(), Errc::Config,
                "cocycle table size does not match |Omega|");
        for (long t = 0; t < om.size(); ++t) els.push_back(t);
    } else {
        for (long t = -window; t <= window; ++t) els.push_back(t);
    }
    CocycleCheck res;
    for (long t : els)
        if (!mu(om.identity(), t).is_one() || !mu(t, om.identity()).is_one()) {
            res.ok = false;
            res.reason = "normalization";
            res.witness = {t, 0, 0};
            return res;
        }
    for (long v : els)
        for (long w : els)
            for (long u : els)
                if (mu(v, w) * mu(om.mul(v, w), u) != mu(w, u) * mu(v, om.mul(w, u))) {
                    res.ok = false;
                    res.reason = "cocycle";
                    res.witness = {v, w, u};
                    return res;
                }
    return res;
}

std::optional<std::vector<Scalar>> coboundary_search(const Cocycle& mu1, const Cocycle& mu2, const OmegaGroup& om,
                                                     const std::vector<Scalar>& pool) {
    require(om.finite() && mu1.finite() && mu2.finite(), Errc::Domain, "coboundary_search needs finite Omega");
    long n = om.size();
    std::vector<Scalar> beta(n, Scalar(1));
    std::vector<bool> set(n, false);
    set[0] = true;
    long nodes = 0;
    // Constraint (s,t) becomes checkable once s, t and st all carry values.
    auto consistent = [&](long upto) {
        for (long s = 0; s <= upto; ++s)
            for (long t = 0; t <= upto; ++t) {
                long st = om.mul(s, t);
                if (st > upto) continue;
                if (mu1(s, t) * beta[st] != mu2(s, t) * beta[s] * beta[t]) return false;
            }
        return true;
    };
    std::function<bool(long)> rec = [&](long k) -> bool {
        if (k == n) return true;
        for (const auto& v : pool) {
            require(++nodes < 5000000, Errc::Limit, "coboundary search exceeded its node budget");
            beta[k] = v;
            if (consistent(k) && rec(k + 1)) return true;
        }
        return false;
    };
    if (!consistent(0)) return std::nullopt;
    if (rec(1)) return beta;
    return std::nullopt;
}

int twisted_center_dimension(const Cocycle& mu, const OmegaGroup& om) {
    require(om.finite() && mu.finite(), Errc::Domain, "centre dimension needs finite Omega");
    long n = om.size();
    // unknowns x_g; equations: coefficient of gamma_k in x gamma_h - gamma_h x, for each h and k
    SMat m(static_cast<int>(n * n), static_cast<int>(n));
    for (long h = 0; h < n; ++h)
        for (long g = 0; g < n; ++g) {
            m(static_cast<int>(h * n + om.mul(g, h)), static_cast<int>(g)) += mu(g, h);
            m(static_cast<int>(h * n + om.mul(h, g)), static_cast<int>(g)) -= mu(h, g);
        }
    return static_cast<int>(n) - m.rank();
}

Scalar OmegaCharacter::operator()(long t) const {
    if (generator_value) return generator_value->pow(t);
    return values.at(t);
}

// ---------------------------------------------------------------- elements

Scalar ProductAlgElem::coeff(const BasisKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void ProductAlgElem::add(const BasisKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

ProductAlgElem& ProductAlgElem::operator+=(const ProductAlgElem& o) {
    if (!owner_) owner_ = o.owner_;
    require(!o.owner_ || o.owner_ == owner_, Errc::Context, "elements of different algebras");
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

ProductAlgElem ProductAlgElem::scaled(const Scalar& c) const {
    ProductAlgElem r(owner_);
    for (const auto& [k, v] : terms_) r.add(k, v * c);
    return r;
}

bool operator==(const ProductAlgElem& a, const ProductAlgElem& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
}

// ---------------------------------------------------------------- algebra

HeckeAlgebra::HeckeAlgebra(const ReflectionGroupData& d, const OmegaGroup& om, std::vector<Scalar> q, Cocycle mu,
                           const CoeffPlusRule& rule)
    : d_(d), om_(om), q_(std::move(q)), mu_(std::move(mu)) {
    require(q_.size() == d_.rank(), Errc::Config,
            "expected " + std::to_string(d_.rank()) + " parameters q_s, got " + std::to_string(q_.size()));
    for (size_t s = 0; s < q_.size(); ++s) {
        const Scalar& qs = q_[s];
        require(!qs.is_zero() && !qs.is_one(), Errc::Domain, "q_s must be invertible and different from 1");
        require(coeffplus_select(rule, qs) == qs, Errc::Domain,
                "q_s" + std::to_string(s) + " = " + qs.str() + " is not in the selected half (" + rule.name() + ")");
    }
    classes_ = simple_conjugacy_classes(d_, om_);
    for (const auto& cls : classes_)
        for (int s : cls)
            require(q_[s] == q_[cls[0]], Errc::Domain,
                    "q is not constant on the conjugacy class of s" + std::to_string(cls[0]));
    auto chk = validate_cocycle(mu_, om_);
    require(chk.ok, Errc::Domain,
            "mu fails the " + chk.reason + " identity at (" + std::to_string(chk.witness[0]) + "," +
                std::to_string(chk.witness[1]) + "," + std::to_string(chk.witness[2]) + ")");
}

ProductAlgElem HeckeAlgebra::basis(long t, const AffineIso& w, const Scalar& c) const {
    ProductAlgElem e(this);
    e.add({t, w}, c);
    return e;
}

ProductAlgElem HeckeAlgebra::T(const Word& word) const {
    ProductAlgElem r = one();
    for (int s : word) {
        require(s >= 0 && static_cast<size_t>(s) < d_.rank(), Errc::Config, "simple reflection index out of range");
        r = mul(r, T_iso(d_.s(s)));
    }
    return r;
}

int HeckeAlgebra::length(const AffineIso& w) const {
    {
        std::lock_guard<std::mutex> lk(mu_memo_);
        auto it = memo_len_.find(w);
        if (it != memo_len_.end()) return it->second;
    }
    int l = hk::length(d_, w);
    std::lock_guard<std::mutex> lk(mu_memo_);
    memo_len_.emplace(w, l);
    return l;
}

Word HeckeAlgebra::word_of(const AffineIso& w) const {
    const WalkResult& r = words_.get(d_, w);
    require(r.in_waff, Errc::Domain, "element " + w.str() + " is not in W_aff");
    return r.word;
}

AffineIso HeckeAlgebra::conj_by_omega_inv(long t, const AffineIso& w) const {
    if (t == om_.identity() || w.is_identity() || !om_.has_isos()) return w;
    return om_.iso(om_.inv(t)) * w * om_.iso(t);
}

const HeckeAlgebra::HeckeVec& HeckeAlgebra::mul_s(int s, const AffineIso& u) const {
    auto key = std::make_pair(s, u);
    {
        std::lock_guard<std::mutex> lk(mu_memo_);
        auto it = memo_s_.find(key);
        if (it != memo_s_.end()) return it->second;
    }
    AffineIso su = d_.s(s) * u;
    HeckeVec r;
    if (length(su) > length(u)) {
        r[su] = Scalar(1);
    } else {
        const Scalar& q = q_[s];
        r[u] = q - Scalar(1);
        r[su] = q;
    }
    std::lock_guard<std::mutex> lk(mu_memo_);
    return memo_s_.emplace(key, std::move(r)).first->second;
}

HeckeAlgebra::HeckeVec HeckeAlgebra::hecke_mul(const AffineIso& v, const AffineIso& w) const {
    Word word = word_of(v);
    HeckeVec cur{{w, Scalar(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        HeckeVec next;
        for (const auto& [u, c] : cur)
            for (const auto& [x, e] : mul_s(*it, u)) {
                Scalar& slot = next[x];
                slot += c * e;
            }
        cur.clear();
        for (auto& [x, c] : next)
            if (!c.is_zero()) cur.emplace(x, std::move(c));
    }
    return cur;
}

ProductAlgElem HeckeAlgebra::mul(const ProductAlgElem& a, const ProductAlgElem& b) const {
    require((!a.owner() || a.owner() == this) && (!b.owner() || b.owner() == this), Errc::Context,
            "hecke_mul: element from a different algebra");
    ProductAlgElem r(this);
    // (g_t T_w)(g_t' T_w') = mu(t,t') g_{tt'} T_{t'^-1 w t'} T_w'
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            Scalar c = ca * cb * mu_(ka.omega, kb.omega);
            long t = om_.mul(ka.omega, kb.omega);
            AffineIso v = conj_by_omega_inv(kb.omega, ka.w);
            for (const auto& [x, e] : hecke_mul(v, kb.w)) r.add({t, x}, c * e);
        }
    return r;
}

void HeckeAlgebra::check_star_compatible(long window) const {
    for (const auto& q : q_)
        require(q.conj() == q, Errc::Domain, "star needs real parameters q_s");
    std::vector<long> els;
    if (om_.finite())
        for (long t = 0; t < om_.size(); ++t) els.push_back(t);
    else
        for (long t = -window; t <= window; ++t) els.push_back(t);
    for (long a : els)
        for (long b : els)
            require(mu_(a, b).conj() == mu_(om_.inv(b), om_.inv(a)), Errc::Domain,
                    "mu is not star-compatible at (" + om_.label(a) + "," + om_.label(b) + ")");
}

ProductAlgElem HeckeAlgebra::star(const ProductAlgElem& x) const {
    check_star_compatible();
    ProductAlgElem r(this);
    // (g_t T_w)* = g_{t^-1} T_{t w^-1 t^-1}
    for (const auto& [k, c] : x.terms()) {
        long ti = om_.inv(k.omega);
        AffineIso v = conj_by_omega_inv(ti, k.w.inverse());
        r.add({ti, v}, c.conj());
    }
    return r;
}

ProductAlgElem HeckeAlgebra::psi(const OmegaCharacter& chi, const ProductAlgElem& x) const {
    require(chi(om_.identity()).is_one(), Errc::Domain, "chi(1) must be 1");
    ProductAlgElem r(this);
    for (const auto& [k, c] : x.terms()) r.add(k, c * chi(k.omega));
    return r;
}

std::string HeckeAlgebra::str(const ProductAlgElem& x) const {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        if (k.omega != om_.identity()) s += "*g[" + om_.label(k.omega) + "]";
        s += "*T[";
        Word w = word_of(k.w);
        for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
        s += "]";
    }
    return s;
}

// ---------------------------------------------------------------- automorphisms

namespace {

// Basis elements g_t T_w with l(w) <= maxlen, for finite Omega.
std::vector<ProductAlgElem> small_basis(const HeckeAlgebra& alg, int maxlen) {
    const auto& d = alg.group();
    std::set<AffineIso> ws{alg.identity_iso()};
    std::vector<AffineIso> frontier{alg.identity_iso()};
    for (int l = 1; l <= maxlen; ++l) {
        std::vector<AffineIso> next;
        for (const auto& w : frontier)
            for (size_t s = 0; s < d.rank(); ++s) {
                AffineIso x = d.s(s) * w;
                if (alg.length(x) == l && ws.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    std::vector<ProductAlgElem> out;
    for (long t = 0; t < alg.omega().size(); ++t)
        for (const auto& w : ws) out.push_back(alg.basis(t, w));
    return out;
}

std::vector<std::vector<Scalar>> homomorphisms(const OmegaGroup& om, const std::vector<Scalar>& pool) {
    long n = om.size();
    std::vector<std::vector<Scalar>> out;
    std::vector<Scalar> val(n, Scalar(1));
    std::vector<bool> known(n, false);
    known[0] = true;
    // Assign values on elements in order, propagating through products, backtrack on conflict.
    std::function<void(long)> rec = [&](long k) {
        while (k < n && known[k]) ++k;
        if (k == n) {
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b)
                    if (val[a] * val[b] != val[om.mul(a, b)]) return;
            out.push_back(val);
            return;
        }
        for (const auto& v : pool) {
            auto saved_val = val;
            auto saved_known = known;
            val[k] = v;
            known[k] = true;
            bool ok = true;
            for (bool changed = true; changed && ok;) {
                changed = false;
                for (long a = 0; a < n && ok; ++a)
                    for (long b = 0; b < n && ok; ++b) {
                        if (!known[a] || !known[b]) continue;
                        long ab = om.mul(a, b);
                        Scalar p = val[a] * val[b];
                        if (!known[ab]) {
                            val[ab] = p;
                            known[ab] = true;
                            changed = true;
                        } else if (val[ab] != p) {
                            ok = false;
                        }
                    }
            }
            if (ok) rec(k + 1);
            val = std::move(saved_val);
            known = std::move(saved_known);
        }
    };
    rec(1);
    return out;
}

}  // namespace

std::vector<OmegaCharacter> enumerate_support_preserving_autos(const HeckeAlgebra& alg,
                                                               const std::vector<Scalar>& pool, bool star_preserving,
                                                               unsigned seed, int samples) {
    const OmegaGroup& om = alg.omega();
    require(om.finite(), Errc::Domain, "automorphism enumeration needs a finite Omega");
    std::vector<OmegaCharacter> out;
    auto basis = small_basis(alg, 2);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    for (auto& vals : homomorphisms(om, pool)) {
        if (star_preserving) {
            bool unit = true;
            for (const auto& v : vals) unit = unit && v.abs2().is_one();
            if (!unit) continue;
        }
        OmegaCharacter chi{vals, std::nullopt};
        for (int k = 0; k < samples; ++k) {
            const auto& x = basis[pick(rng)];
            const auto& y = basis[pick(rng)];
            require(alg.psi(chi, alg.mul(x, y)) == alg.mul(alg.psi(chi, x), alg.psi(chi, y)), Errc::Check,
                    "Psi_chi failed to be multiplicative");
        }
        out.push_back(std::move(chi));
    }
    return out;
}

RescalingScan scan_support_preserving_rescalings(const HeckeAlgebra& alg, const std::vector<Scalar>& pool) {
    const OmegaGroup& om = alg.omega();
    require(om.finite(), Errc::Domain, "rescaling scan needs a finite Omega");
    const auto& d = alg.group();
    size_t ns = d.rank();
    long no = om.size();
    auto basis = small_basis(alg, 2);
    RescalingScan scan;
    std::vector<Scalar> a(ns, Scalar(1)), b(no, Scalar(1));
    auto image = [&](const ProductAlgElem& x) {
        ProductAlgElem r = alg.zero();
        for (const auto& [k, c] : x.terms()) {
            Scalar f = b[k.omega];
            for (int s : alg.word_of(k.w)) f *= a[s];
            r.add(k, c * f);
        }
        return r;
    };
    size_t slots = ns + static_cast<size_t>(no) - 1;
    std::vector<size_t> idx(slots, 0);
    for (;;) {
        for (size_t s = 0; s < ns; ++s) a[s] = pool[idx[s]];
        for (long t = 1; t < no; ++t) b[t] = pool[idx[ns + t - 1]];
        ++scan.tried;
        bool is_auto = true;
        for (size_t i = 0; i < basis.size() && is_auto; ++i)
            for (size_t j = 0; j < basis.size() && is_auto; ++j)
                is_auto = image(alg.mul(basis[i], basis[j])) == alg.mul(image(basis[i]), image(basis[j]));
        if (is_auto) {
            ++scan.automorphisms;
            bool psi = true;
            for (const auto& x : a) psi = psi && x.is_one();
            for (long s = 0; s < no; ++s)
                for (long t = 0; t < no; ++t) psi = psi && b[s] * b[t] == b[om.mul(s, t)];
            scan.all_are_psi_chi = scan.all_are_psi_chi && psi;
        }
        size_t k = 0;
        while (k < slots && ++idx[k] == pool.size()) idx[k++] = 0;
        if (k == slots) break;
        require(scan.tried < 200000, Errc::Limit, "rescaling scan exceeds its budget");
    }
    return scan;
}

}  // namespace hk
