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

#include "rootdata.hpp"

#include <algorithm>
#include <set>

namespace hk {

namespace {

QVec unit(int n, int i, long v = 1) {
    QVec e(n, Rational(0));
    e[i] = v;
    return e;
}

QVec diff(int n, int i, int j) {
    QVec e(n, Rational(0));
    e[i] = 1;
    e[j] = -1;
    return e;
}

mpz_class floor_q(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational eval_root(const RootVec& r, const Point& x) {
    require(r.size() == x.size(), Errc::Dimension, "root and point dimensions differ");
    Rational s = 0;
    for (size_t i = 0; i < r.size(); ++i) s += r[i] * x[i];
    return s;
}

}  // namespace

QMat expected_cartan(char family, int n) {
    QMat c(n, n);
    for (int i = 0; i < n; ++i) {
        c(i, i) = 2;
        if (i + 1 < n) c(i, i + 1) = c(i + 1, i) = -1;
    }
    switch (family) {
        case 'A':
            break;
        case 'B':
            c(n - 1, n - 2) = -2;
            break;
        case 'C':
            c(n - 2, n - 1) = -2;
            break;
        case 'D':
            c(n - 1, n - 2) = c(n - 2, n - 1) = 0;
            c(n - 1, n - 3) = c(n - 3, n - 1) = -1;
            break;
        case 'G':
            c(0, 1) = -3;
            break;
        default:
            fail(Errc::Config, std::string("unsupported root system family ") + family);
    }
    return c;
}

size_t expected_root_count(char family, int n) {
    switch (family) {
        case 'A': return static_cast<size_t>(n) * (n + 1);
        case 'B':
        case 'C': return 2 * static_cast<size_t>(n) * n;
        case 'D': return 2 * static_cast<size_t>(n) * (n - 1);
        case 'G': return 12;
        default: fail(Errc::Config, std::string("unsupported root system family ") + family);
    }
}

RootSystem RootSystem::make(const std::string& label) {
    require(label.size() >= 2, Errc::Config, "root system label '" + label + "' is too short");
    RootSystem rs;
    rs.label_ = label;
    rs.family_ = label[0];
    int n = 0;
    try {
        n = std::stoi(label.substr(1));
    } catch (const std::exception&) {
        fail(Errc::Config, "root system label '" + label + "' has no rank");
    }
    rs.rank_ = n;
    switch (rs.family_) {
        case 'A':
            require(n >= 1, Errc::Config, "A_n needs n >= 1");
            for (int i = 0; i < n; ++i) rs.simple_.push_back(diff(n + 1, i, i + 1));
            break;
        case 'B':
        case 'C':
            require(n >= 2, Errc::Config, "B_n and C_n need n >= 2");
            for (int i = 0; i + 1 < n; ++i) rs.simple_.push_back(diff(n, i, i + 1));
            rs.simple_.push_back(unit(n, n - 1, rs.family_ == 'B' ? 1 : 2));
            break;
        case 'D':
            require(n >= 3, Errc::Config, "D_n needs n >= 3");
            for (int i = 0; i + 1 < n; ++i) rs.simple_.push_back(diff(n, i, i + 1));
            {
                QVec e(n, Rational(0));
                e[n - 2] = e[n - 1] = 1;
                rs.simple_.push_back(e);
            }
            break;
        case 'G':
            require(n == 2, Errc::Config, "only G2 is supported in family G");
            rs.simple_.push_back(diff(3, 0, 1));
            rs.simple_.push_back({Rational(-2), Rational(1), Rational(1)});
            break;
        default:
            fail(Errc::Config, "unsupported root system type '" + label + "'");
    }
    rs.B_ = QMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rs.B_(i, j) = dot(rs.simple_[i], rs.simple_[j]);
    QMat a = rs.cartan();
    require(a == expected_cartan(rs.family_, n), Errc::Check, "Cartan matrix does not match type " + label);

    // Closure of the simple roots under simple reflections:
    // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, <beta, alpha_i^vee> = sum_j c_j a(i, j).
    std::set<RootVec> seen;
    std::vector<RootVec> queue;
    for (int i = 0; i < n; ++i) {
        RootVec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    for (size_t k = 0; k < queue.size(); ++k) {
        for (int i = 0; i < n; ++i) {
            RootVec b = queue[k];
            Rational pair = 0;
            for (int j = 0; j < n; ++j) pair += b[j] * a(i, j);
            require(pair.get_den() == 1, Errc::Check, "non-integral Cartan pairing");
            b[i] -= pair.get_num().get_si();
            if (seen.insert(b).second) queue.push_back(b);
        }
    }
    std::vector<RootVec> pos, neg;
    for (const auto& r : seen) {
        bool positive = std::all_of(r.begin(), r.end(), [](long c) { return c >= 0; });
        bool negative = std::all_of(r.begin(), r.end(), [](long c) { return c <= 0; });
        require(positive != negative, Errc::Check, "root with mixed signs");
        (positive ? pos : neg).push_back(r);
    }
    auto height = [](const RootVec& r) {
        long h = 0;
        for (long c : r) h += c < 0 ? -c : c;
        return h;
    };
    auto by_height = [&](const RootVec& x, const RootVec& y) {
        long hx = height(x), hy = height(y);
        return hx != hy ? hx < hy : x > y;
    };
    std::sort(pos.begin(), pos.end(), by_height);
    std::sort(neg.begin(), neg.end(), by_height);
    rs.npos_ = pos.size();
    rs.roots_ = pos;
    rs.roots_.insert(rs.roots_.end(), neg.begin(), neg.end());
    require(rs.roots_.size() == expected_root_count(rs.family_, n), Errc::Check,
            "root count does not match type " + label);
    return rs;
}

QMat RootSystem::cartan() const {
    QMat a(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) a(i, j) = 2 * B_(i, j) / B_(i, i);
    return a;
}

bool RootSystem::is_root(const RootVec& r) const {
    return std::find(roots_.begin(), roots_.end(), r) != roots_.end();
}

InnerProduct RootSystem::apartment_ip() const {
    auto inv = B_.inverse();
    require(inv.has_value(), Errc::Domain, "degenerate root pairing");
    return InnerProduct(*inv);
}

Rational AffineRoot::operator()(const Point& x) const { return eval_root(root, x) + level; }

std::string AffineRoot::str() const {
    std::string s = "(";
    for (size_t i = 0; i < root.size(); ++i) s += (i ? "," : "") + std::to_string(root[i]);
    return s + ")" + (level >= 0 ? "+" : "") + std::to_string(level);
}

std::vector<AffineRoot> affine_roots_in_slab(const RootSystem& rs, const Point& x, const Point& y) {
    require(static_cast<int>(x.size()) == rs.rank() && static_cast<int>(y.size()) == rs.rank(),
            Errc::Dimension, "affine_roots_in_slab: point dimension does not match rank");
    std::vector<AffineRoot> out;
    for (const auto& r : rs.roots()) {
        Rational a = eval_root(r, x), b = eval_root(r, y);
        Rational lo = std::min(a, b), hi = std::max(a, b);
        // a(t) + k vanishes somewhere on [x, y] iff -k in [lo, hi]
        for (mpz_class k = ceil_q(-hi); k <= floor_q(-lo); ++k) out.push_back({r, k.get_si()});
    }
    return out;
}

std::vector<AffineRoot> vanishing_roots_at(const RootSystem& rs, const Point& x) {
    require(static_cast<int>(x.size()) == rs.rank(), Errc::Dimension,
            "vanishing_roots_at: point dimension does not match rank");
    std::vector<AffineRoot> out;
    for (const auto& r : rs.roots()) {
        Rational v = eval_root(r, x);
        if (v.get_den() == 1) out.push_back({r, -v.get_num().get_si()});
    }
    return out;
}

bool LeviSubset::contains_root(const RootVec& r) const {
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0 && std::find(simple.begin(), simple.end(), static_cast<int>(i)) == simple.end()) return false;
    return true;
}

namespace {

void check_levi(const RootSystem& rs, const LeviSubset& levi) {
    std::set<int> seen;
    for (int i : levi.simple) {
        require(i >= 0 && i < rs.rank(), Errc::Config, "Levi index " + std::to_string(i) + " out of range");
        require(seen.insert(i).second, Errc::Config, "repeated Levi index");
    }
}

}  // namespace

QMat levi_direction_basis(const RootSystem& rs, const LeviSubset& levi) {
    check_levi(rs, levi);
    int n = rs.rank();
    QMat rows(static_cast<int>(levi.simple.size()), n);
    for (size_t k = 0; k < levi.simple.size(); ++k) rows(static_cast<int>(k), levi.simple[k]) = 1;
    auto ns = rows.nullspace();
    QMat basis(n, static_cast<int>(ns.size()));
    for (size_t j = 0; j < ns.size(); ++j)
        for (int i = 0; i < n; ++i) basis(i, static_cast<int>(j)) = ns[j][i];
    return basis;
}

std::vector<RootVec> levi_roots(const RootSystem& rs, const LeviSubset& levi) {
    check_levi(rs, levi);
    std::vector<RootVec> out;
    for (const auto& r : rs.roots())
        if (levi.contains_root(r)) out.push_back(r);
    return out;
}

Point DepthZero::ambient(const Point& intrinsic) const {
    Point v = basis.apply(intrinsic);
    for (size_t i = 0; i < v.size(); ++i) v[i] += x0[i];
    return v;
}

DepthZero depthzero_arrangement(const RootSystem& rs, const LeviSubset& levi, const Point& x0,
                                const std::optional<QMat>& basis_override) {
    require(static_cast<int>(x0.size()) == rs.rank(), Errc::Dimension,
            "depthzero_arrangement: x0 dimension does not match rank");
    QMat basis = levi_direction_basis(rs, levi);
    if (basis_override) {
        const QMat& o = *basis_override;
        require(o.rows() == basis.rows() && o.cols() == basis.cols(), Errc::Dimension,
                "basis override has the wrong shape");
        require(o.rank() == o.cols(), Errc::Domain, "basis override is not independent");
        for (int i : levi.simple)
            for (int j = 0; j < o.cols(); ++j)
                require(sgn(o(i, j)) == 0, Errc::Domain, "basis override leaves V_M");
        basis = o;
    }
    int m = basis.cols();
    std::set<HyperplaneFamily> fams;
    for (size_t k = 0; k < rs.num_positive(); ++k) {
        const RootVec& r = rs.roots()[k];
        if (levi.contains_root(r)) continue;
        Rational v = eval_root(r, x0);
        require(v.get_den() != 1, Errc::Domain,
                "x0 lies on the hyperplane of affine root " + AffineRoot{r, -v.get_num().get_si()}.str());
        HyperplaneFamily f;
        f.gradient.assign(m, Rational(0));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < rs.rank(); ++i) f.gradient[j] += r[i] * basis(i, j);
        f.base = v;
        f.period = 1;
        fams.insert(f.canonical());
    }
    DepthZero dz;
    dz.x0 = x0;
    dz.basis = basis;
    std::vector<HyperplaneFamily> fv(fams.begin(), fams.end());
    dz.arrangement = Arrangement(m, Point(m, Rational(0)), fv, std::vector<bool>(fv.size(), true));
    dz.ip = InnerProduct(basis.transpose() * rs.apartment_ip().gram() * basis);
    return dz;
}

bool vanishing_monotone_check(const RootSystem& rs, const DepthZero& dz, const Point& x, const Point& y) {
    require(is_generic(dz.arrangement, x), Errc::Domain, "vanishing_monotone_check: x is not generic");
    auto vx = vanishing_roots_at(rs, dz.ambient(x));
    auto vy = vanishing_roots_at(rs, dz.ambient(y));
    std::set<AffineRoot> sy(vy.begin(), vy.end());
    for (const auto& a : vx)
        if (!sy.count(a)) return false;
    return true;
}

QuotientSpace quotient_space(const Arrangement& arr, const InnerProduct& ip) {
    int n = arr.dim();
    require(ip.dim() == n, Errc::Dimension, "quotient_space: inner product dimension mismatch");
    std::vector<QVec> chosen;
    for (size_t i = 0; i < arr.families().size(); ++i) {
        if (!arr.relevant()[i]) continue;
        auto trial = chosen;
        trial.push_back(arr.families()[i].gradient);
        if (QMat::from_rows(trial).rank() == static_cast<int>(trial.size())) chosen = std::move(trial);
    }
    int k = static_cast<int>(chosen.size());
    QMat R = k ? QMat::from_rows(chosen) : QMat(0, n);
    QMat Rt = R.transpose();
    QuotientSpace qs;
    qs.projection = R;
    qs.family_map.assign(arr.families().size(), -1);
    std::vector<HyperplaneFamily> fams;
    std::map<HyperplaneFamily, int> where;
    for (size_t i = 0; i < arr.families().size(); ++i) {
        if (!arr.relevant()[i]) continue;
        const auto& f = arr.families()[i];
        auto lam = Rt.solve(f.gradient);
        require(lam.has_value(), Errc::Check, "relevant gradient outside the chosen span");
        HyperplaneFamily g{*lam, f.base, f.period};
        g = g.canonical();
        auto it = where.find(g);
        if (it == where.end()) {
            it = where.emplace(g, static_cast<int>(fams.size())).first;
            fams.push_back(g);
        }
        qs.family_map[i] = it->second;
    }
    qs.arrangement = Arrangement(k, R.apply(arr.basepoint()), fams, std::vector<bool>(fams.size(), true));
    auto dual = R * ip.gram_inv() * Rt;
    auto g = dual.inverse();
    require(g.has_value(), Errc::Domain, "induced dual form is degenerate");
    qs.ip = InnerProduct(*g);
    return qs;
}

namespace {

// Is every hyperplane of a (canonical) contained in b (canonical)?
bool family_within(const HyperplaneFamily& a, const HyperplaneFamily& b) {
    if (a.gradient != b.gradient) return false;
    if (sgn(b.period) == 0) return sgn(a.period) == 0 && a.base == b.base;
    Rational shift = (a.base - b.base) / b.period;
    if (shift.get_den() != 1) return false;
    return sgn(a.period) == 0 || Rational(a.period / b.period).get_den() == 1;
}

HyperplaneFamily push_family(const AffineIso& g, const HyperplaneFamily& f) {
    AffineForm img = g.push_form(f.member(0));
    return HyperplaneFamily{img.gradient, img.constant, f.period}.canonical();
}

}  // namespace

CheckReport verify_affine_root_conditions(const Arrangement& arr, const ReflectionGroupData& group,
                                          const std::vector<AffineIso>& extra_generators) {
    require(arr.dim() == group.dim(), Errc::Dimension, "arrangement and group dimensions differ");
    CheckReport rep;
    std::vector<AffineIso> gens;
    std::vector<std::string> names;
    for (size_t i = 0; i < group.rank(); ++i) {
        gens.push_back(group.s(i));
        names.push_back("s" + std::to_string(i));
    }
    for (size_t i = 0; i < extra_generators.size(); ++i) {
        gens.push_back(extra_generators[i]);
        names.push_back("g" + std::to_string(i));
    }
    std::vector<HyperplaneFamily> rel;
    std::vector<size_t> rel_idx;
    for (size_t i = 0; i < arr.families().size(); ++i)
        if (arr.relevant()[i]) {
            rel.push_back(arr.families()[i].canonical());
            rel_idx.push_back(i);
        }

    std::string witness;
    for (size_t gi = 0; gi < gens.size() && witness.empty(); ++gi)
        for (size_t k = 0; k < rel.size() && witness.empty(); ++k) {
            HyperplaneFamily img = push_family(gens[gi], rel[k]);
            bool ok = std::any_of(rel.begin(), rel.end(), [&](const HyperplaneFamily& f) { return family_within(img, f); });
            if (!ok)
                witness = "H=" + rel[k].member(0).str() + " (family " + std::to_string(rel_idx[k]) + "), w=" +
                          names[gi] + " " + gens[gi].str() + " maps it to " + img.member(0).str();
        }
    rep.add("reflection_invariance", witness.empty(),
            witness.empty() ? std::to_string(gens.size()) + " generators x " + std::to_string(rel.size()) + " families"
                            : witness);
    rep.add("properness", true, "delegated: the group is generated by finitely many simple reflections");
    std::string nonper;
    for (size_t k = 0; k < rel.size(); ++k)
        if (sgn(rel[k].period) == 0) {
            nonper = "family " + std::to_string(rel_idx[k]) + " " + rel[k].member(0).str() + " has no parallel translates";
            break;
        }
    rep.add("parallel_classes_infinite", nonper.empty(), nonper.empty() ? "every relevant family is periodic" : nonper);
    return rep;
}

}  // namespace hk
