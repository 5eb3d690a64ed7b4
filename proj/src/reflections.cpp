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

#include "reflections.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace hk {

namespace {

// Scale so the first nonzero coefficient has absolute value 1.
void normalize_row(LinIneq& r) {
    for (const auto& x : r.a) {
        if (sgn(x) == 0) continue;
        Rational s = abs(x);
        for (auto& y : r.a) y /= s;
        r.c /= s;
        return;
    }
}

bool constant_row_ok(const LinIneq& r) {
    int s = sgn(r.c);
    return r.strict ? s > 0 : s >= 0;
}

bool all_zero(const QVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

}  // namespace

bool fm_feasible(std::vector<LinIneq> rows, int nvars) {
    for (int v = nvars - 1; v >= -1; --v) {
        // Drop constant rows after checking them, dedupe the rest.
        std::map<std::pair<QVec, Rational>, bool> uniq;
        for (auto& r : rows) {
            if (all_zero(r.a)) {
                if (!constant_row_ok(r)) return false;
                continue;
            }
            normalize_row(r);
            auto key = std::make_pair(r.a, r.c);
            auto it = uniq.find(key);
            if (it == uniq.end())
                uniq.emplace(std::move(key), r.strict);
            else
                it->second = it->second || r.strict;
        }
        if (v < 0) return true;
        std::vector<LinIneq> pos, neg, next;
        for (auto& [key, strict] : uniq) {
            LinIneq r{key.first, key.second, strict};
            int s = sgn(r.a[v]);
            if (s > 0)
                pos.push_back(std::move(r));
            else if (s < 0)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Rational fp = 1 / p.a[v], fn = -1 / n.a[v];
                LinIneq r;
                r.a.resize(p.a.size());
                for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = fp * p.a[i] + fn * n.a[i];
                r.a[v] = 0;
                r.c = fp * p.c + fn * n.c;
                r.strict = p.strict || n.strict;
                next.push_back(std::move(r));
            }
        rows = std::move(next);
    }
    return true;
}

namespace {

struct Candidate {
    AffineForm form;
    AffineForm norm;
    size_t family;
};

std::vector<Candidate> slab_candidates(const Arrangement& arr, const Point& x, const Rational& radius) {
    std::vector<Candidate> out;
    std::set<std::pair<QVec, Rational>> seen;
    for (size_t i = 0; i < arr.families().size(); ++i) {
        const auto& f = arr.families()[i];
        std::vector<AffineForm> ms =
            sgn(f.period) == 0 ? std::vector<AffineForm>{f.member(0)} : arr.members_near(i, x, radius);
        for (auto& m : ms) {
            AffineForm n = m.normalized();
            if (!seen.insert({n.gradient, n.constant}).second) continue;
            out.push_back({m, n, i});
        }
    }
    return out;
}

// Is cand[h] a wall of the chamber containing x?
bool is_wall(const std::vector<Candidate>& cand, size_t h, const Point& x) {
    const AffineForm& H = cand[h].form;
    int n = static_cast<int>(x.size());
    int j = 0;
    while (sgn(H.gradient[j]) == 0) ++j;
    // x_j = -(c_H + sum_{i != j} g_i x_i) / g_j; remaining variables keep their index, x_j is dropped.
    std::vector<LinIneq> rows;
    for (size_t k = 0; k < cand.size(); ++k) {
        if (k == h) continue;
        const AffineForm& K = cand[k].form;
        int sigma = sgn(K(x));
        LinIneq r;
        r.a.assign(n - 1, Rational(0));
        Rational ratio = K.gradient[j] / H.gradient[j];
        int col = 0;
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            r.a[col++] = sigma * (K.gradient[i] - ratio * H.gradient[i]);
        }
        r.c = sigma * (K.constant - ratio * H.constant);
        rows.push_back(std::move(r));
    }
    return fm_feasible(std::move(rows), n - 1);
}

std::vector<Wall> walls_at_radius(const Arrangement& arr, const InnerProduct& ip, const Point& x,
                                  const Rational& radius) {
    auto cand = slab_candidates(arr, x, radius);
    std::vector<Wall> out;
    for (size_t h = 0; h < cand.size(); ++h)
        if (is_wall(cand, h, x)) out.push_back({cand[h].form, cand[h].family, reflection(cand[h].form, ip)});
    std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
        if (a.family != b.family) return a.family < b.family;
        return -a.form.constant < -b.form.constant;
    });
    return out;
}

bool same_walls(const std::vector<Wall>& a, const std::vector<Wall>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].family != b[i].family || !(a[i].form == b[i].form)) return false;
    return true;
}

}  // namespace

std::vector<Wall> chamber_walls(const Arrangement& arr, const InnerProduct& ip, const Point& x0bar,
                                Rational* radius_out) {
    require(static_cast<int>(x0bar.size()) == arr.dim() && ip.dim() == arr.dim(), Errc::Dimension,
            "chamber_walls: dimension mismatch");
    require(is_generic(arr, x0bar), Errc::Domain, "chamber_walls: base point " + point_str(x0bar) + " is not generic");
    Rational radius = 1;
    for (const auto& f : arr.families()) radius = std::max(radius, Rational(abs(f.period)));
    auto cur = walls_at_radius(arr, ip, x0bar, radius);
    for (int round = 0; round < 24; ++round) {
        auto next = walls_at_radius(arr, ip, x0bar, 2 * radius);
        if (same_walls(cur, next)) {
            if (radius_out) *radius_out = radius;
            return cur;
        }
        radius *= 2;
        cur = std::move(next);
    }
    fail(Errc::Limit, "chamber_walls: wall set did not stabilise");
}

ReflectionGroupData::ReflectionGroupData(const Arrangement& arr, const InnerProduct& ip, const Point& x0bar)
    : ip_(ip), x0_(x0bar) {
    std::vector<HyperplaneFamily> fams;
    for (size_t i = 0; i < arr.families().size(); ++i)
        if (arr.relevant()[i]) fams.push_back(arr.families()[i]);
    require(static_cast<int>(x0bar.size()) == arr.dim(), Errc::Dimension, "base point dimension mismatch");
    require(is_generic(arr, x0bar, true), Errc::Domain,
            "base point " + point_str(x0bar) + " is not generic for the relevant hyperplanes");
    arr_ = Arrangement(arr.dim(), x0bar, fams, std::vector<bool>(fams.size(), true));
    walls_ = chamber_walls(arr_, ip_, x0_, &radius_);
}

std::optional<int> ReflectionGroupData::simple_index(const AffineIso& g) const {
    for (size_t i = 0; i < walls_.size(); ++i)
        if (walls_[i].refl == g) return static_cast<int>(i);
    return std::nullopt;
}

AffineIso ReflectionGroupData::word_iso(const Word& w) const {
    AffineIso g = AffineIso::identity(dim());
    for (int i : w) g = g * s(static_cast<size_t>(i));
    return g;
}

std::optional<int> braid_order(const ReflectionGroupData& d, int i, int j, int cutoff) {
    require(i != j, Errc::Domain, "braid_order needs two distinct simple reflections");
    AffineIso g = d.s(i) * d.s(j);
    AffineIso p = g;
    for (int k = 1; k < cutoff; ++k) {
        if (p.is_identity()) return k;
        p = p * g;
    }
    return std::nullopt;
}

WalkResult reduced_word(const ReflectionGroupData& d, const AffineIso& g, std::mt19937* rng) {
    require(g.dim() == d.dim(), Errc::Dimension, "reduced_word: dimension mismatch");
    require(g.is_isometry(d.ip().gram()), Errc::Domain, "reduced_word: input is not an isometry");
    WalkResult res;
    AffineIso cur = g;
    const Point& x0 = d.base();
    Point y = cur(x0);
    for (size_t step = 0;; ++step) {
        require(step < d.step_bound, Errc::Limit, "reduced_word: step bound exceeded");
        std::vector<int> descents;
        for (size_t i = 0; i < d.rank(); ++i) {
            const AffineForm& h = d.walls()[i].form;
            int a = sgn(h(x0)), b = sgn(h(y));
            require(b != 0, Errc::Domain, "reduced_word: image of the base point lies on a wall");
            if (a != b) descents.push_back(static_cast<int>(i));
        }
        if (descents.empty()) break;
        int s = descents.front();
        if (rng && descents.size() > 1) {
            std::uniform_int_distribution<size_t> pick(0, descents.size() - 1);
            s = descents[pick(*rng)];
        }
        res.word.push_back(s);
        cur = d.s(s) * cur;
        y = d.s(s)(y);
    }
    res.in_waff = cur.is_identity();
    res.residual = std::move(cur);
    return res;
}

int length(const ReflectionGroupData& d, const AffineIso& g) {
    return distance(d.arrangement(), d.base(), g.inverse()(d.base()));
}

// ---------------------------------------------------------------- Omega

namespace {

std::vector<int> s_permutation(const ReflectionGroupData& d, const AffineIso& t) {
    AffineIso ti = t.inverse();
    std::vector<int> perm(d.rank());
    for (size_t i = 0; i < d.rank(); ++i) {
        auto j = d.simple_index(t * d.s(i) * ti);
        require(j.has_value(), Errc::Check,
                "Omega element " + t.str() + " does not permute the simple reflections");
        perm[i] = *j;
    }
    return perm;
}

void validate_chamber_fixing(const ReflectionGroupData& d, const AffineIso& t) {
    require(t.dim() == d.dim(), Errc::Dimension, "Omega generator dimension mismatch");
    require(t.is_isometry(d.ip().gram()), Errc::Check, "Omega generator " + t.str() + " is not an isometry");
    require(distance(d.arrangement(), d.base(), t(d.base())) == 0, Errc::Check,
            "Omega generator " + t.str() + " does not stabilise the base chamber");
}

}  // namespace

OmegaGroup OmegaGroup::trivial(const ReflectionGroupData& d) {
    return from_isos(d, {}, 1);
}

OmegaGroup OmegaGroup::from_isos(const ReflectionGroupData& d, const std::vector<AffineIso>& gens, long order) {
    for (const auto& g : gens) validate_chamber_fixing(d, g);
    OmegaGroup om;
    om.dim_ = d.dim();
    if (order < 0) {
        require(gens.size() == 1, Errc::Config, "infinite Omega must have exactly one generator");
        om.finite_ = false;
        om.gen_ = gens[0];
        om.gen_inv_ = gens[0].inverse();
        AffineIso p = om.gen_;
        for (int k = 1; k <= 64; ++k, p = p * om.gen_)
            require(!p.is_identity(), Errc::Check, "declared infinite Omega generator has finite order");
        om.gen_perm_ = s_permutation(d, om.gen_);
        om.gen_inv_perm_ = s_permutation(d, om.gen_inv_);
        om.gens_ = {1};
        return om;
    }
    std::map<AffineIso, int> index;
    om.isos_.push_back(AffineIso::identity(d.dim()));
    index[om.isos_[0]] = 0;
    for (const auto& g : gens)
        if (!index.count(g)) {
            index[g] = static_cast<int>(om.isos_.size());
            om.isos_.push_back(g);
        }
    for (size_t i = 0; i < om.isos_.size(); ++i) {
        require(om.isos_.size() <= 4096, Errc::Limit, "Omega closure exceeds 4096 elements");
        for (const auto& g : gens) {
            AffineIso h = om.isos_[i] * g;
            if (!index.count(h)) {
                index[h] = static_cast<int>(om.isos_.size());
                om.isos_.push_back(h);
            }
        }
    }
    size_t n = om.isos_.size();
    require(order == 0 || static_cast<long>(n) == order, Errc::Check,
            "Omega closure has " + std::to_string(n) + " elements, declared " + std::to_string(order));
    om.table_.assign(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) om.table_[a][b] = index.at(om.isos_[a] * om.isos_[b]);
    for (const auto& g : gens) om.gens_.push_back(index.at(g));
    for (const auto& t : om.isos_) om.sperm_.push_back(s_permutation(d, t));
    return om;
}

OmegaGroup OmegaGroup::from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels,
                                  int num_simple) {
    size_t n = table.size();
    require(n > 0, Errc::Config, "empty group table");
    for (size_t a = 0; a < n; ++a) {
        require(table[a].size() == n, Errc::Config, "group table is not square");
        std::vector<bool> seen(n, false);
        for (size_t b = 0; b < n; ++b) {
            int v = table[a][b];
            require(v >= 0 && static_cast<size_t>(v) < n && !seen[v], Errc::Config, "group table row is not a permutation");
            seen[v] = true;
        }
        require(table[0][a] == static_cast<int>(a) && table[a][0] == static_cast<int>(a), Errc::Config,
                "element 0 of the group table is not the identity");
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                require(table[table[a][b]][c] == table[a][table[b][c]], Errc::Config, "group table is not associative");
    require(labels.empty() || labels.size() == n, Errc::Config, "label count does not match group order");
    OmegaGroup om;
    om.table_ = std::move(table);
    om.labels_ = std::move(labels);
    for (size_t a = 1; a < n; ++a) om.gens_.push_back(static_cast<long>(a));
    if (num_simple > 0) {
        std::vector<int> id(num_simple);
        std::iota(id.begin(), id.end(), 0);
        om.sperm_.assign(n, id);
    }
    return om;
}

long OmegaGroup::mul(long a, long b) const {
    if (!finite_) return a + b;
    return table_.at(a).at(b);
}

long OmegaGroup::inv(long a) const {
    if (!finite_) return -a;
    for (size_t b = 0; b < table_.size(); ++b)
        if (table_[a][b] == 0) return static_cast<long>(b);
    fail(Errc::Domain, "element without inverse");
}

AffineIso OmegaGroup::iso(long a) const {
    if (!finite_) {
        AffineIso r = AffineIso::identity(dim_);
        const AffineIso& g = a >= 0 ? gen_ : gen_inv_;
        for (long k = 0; k < std::labs(a); ++k) r = r * g;
        return r;
    }
    require(!isos_.empty(), Errc::Domain, "abstract Omega element has no isometry");
    return isos_.at(a);
}

std::optional<long> OmegaGroup::find(const AffineIso& g) const {
    if (finite_) {
        for (size_t i = 0; i < isos_.size(); ++i)
            if (isos_[i] == g) return static_cast<long>(i);
        if (isos_.empty() && g.is_identity()) return 0;
        return std::nullopt;
    }
    AffineIso up = AffineIso::identity(dim_), down = up;
    for (long k = 0; k <= 512; ++k) {
        if (up == g) return k;
        if (down == g) return -k;
        up = up * gen_;
        down = down * gen_inv_;
    }
    return std::nullopt;
}

int OmegaGroup::conj_s(long t, int i) const {
    if (finite_) {
        if (sperm_.empty()) fail(Errc::Domain, "abstract Omega has no action on simple reflections");
        return sperm_.at(t).at(i);
    }
    const auto& p = t >= 0 ? gen_perm_ : gen_inv_perm_;
    for (long k = 0; k < std::labs(t); ++k) i = p.at(i);
    return i;
}

std::string OmegaGroup::label(long a) const {
    if (!finite_) return a == 0 ? "1" : "w^" + std::to_string(a);
    if (!labels_.empty()) return labels_.at(a);
    return a == 0 ? "1" : "t" + std::to_string(a);
}

ExtendedElement decompose(const ReflectionGroupData& d, const OmegaGroup& om, const AffineIso& g) {
    WalkResult w = reduced_word(d, g);
    auto t = om.find(w.residual);
    require(t.has_value(), Errc::Check, "decompose: residual " + w.residual.str() + " is not in Omega");
    ExtendedElement e;
    e.omega = *t;
    long tinv = om.inv(*t);
    for (int s : w.word) e.word.push_back(d.rank() ? om.conj_s(tinv, s) : s);
    return e;
}

AffineIso extended_iso(const ReflectionGroupData& d, const OmegaGroup& om, const ExtendedElement& e) {
    return om.iso(e.omega) * d.word_iso(e.word);
}

int conjugate_simple(const OmegaGroup& om, long t, int i) { return om.conj_s(t, i); }

std::vector<std::vector<int>> simple_conjugacy_classes(const ReflectionGroupData& d, const OmegaGroup& om,
                                                       int cutoff) {
    int n = static_cast<int>(d.rank());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
    auto join = [&](int a, int b) { parent[root(a)] = root(b); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto m = braid_order(d, i, j, cutoff);
            if (m && *m % 2 == 1) join(i, j);
        }
    if (n > 0)
        for (long t : om.generators())
            for (int i = 0; i < n; ++i) join(i, om.conj_s(t, i));
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[root(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [r, v] : groups) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

const WalkResult& WordCache::get(const ReflectionGroupData& d, const AffineIso& g) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
    }
    WalkResult r = reduced_word(d, g);
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.emplace(g, std::move(r)).first->second;
}

}  // namespace hk
