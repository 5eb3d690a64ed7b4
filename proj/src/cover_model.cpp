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

#include "cover_model.hpp"

#include <algorithm>
#include <set>

#include "hecke_algebra.hpp"
#include "reflections.hpp"

namespace hk {

namespace {

std::string str_of(long v) { return std::to_string(v); }

Rep promote(Rep r, const Ctx* ctx) {
    for (auto& m : r.mats)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).promoted(ctx);
    return r;
}

SMat conj_transpose(const SMat& a) {
    SMat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j).conj();
    return t;
}

// Matrices T with T A_i = B_i T for every pair.
std::vector<SMat> intertwiners(const std::vector<std::pair<const SMat*, const SMat*>>& pairs, int d) {
    SMat sys(static_cast<int>(pairs.size()) * d * d, d * d);
    int row = 0;
    for (const auto& [A, B] : pairs)
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c, ++row)
                for (int m = 0; m < d; ++m) {
                    sys(row, r * d + m) += (*A)(m, c);
                    sys(row, m * d + c) -= (*B)(r, m);
                }
    std::vector<SMat> out;
    for (const auto& v : sys.nullspace()) {
        SMat T(d, d);
        for (int r = 0; r < d; ++r)
            for (int m = 0; m < d; ++m) T(r, m) = v[r * d + m];
        out.push_back(std::move(T));
    }
    return out;
}

// dim Hom_{A cap B}(rho_a, rho_b), both defined on supersets of the intersection.
int hom_dim(const FinGroup& H, const Rep& a, const Rep& b) {
    Subgroup I = intersect(H, a.K, b.K);
    std::vector<std::pair<const SMat*, const SMat*>> pairs;
    for (int k : I.elems) pairs.push_back({&a(k), &b(k)});
    return static_cast<int>(intertwiners(pairs, a.dim).size());
}

bool subset(const Subgroup& a, const Subgroup& b) {
    for (int x : a.elems)
        if (!b.contains(x)) return false;
    return true;
}

std::vector<int> product_set(const FinGroup& H, const std::vector<const Subgroup*>& parts) {
    std::set<int> cur{0};
    for (const Subgroup* s : parts) {
        std::set<int> next;
        for (int a : cur)
            for (int b : s->elems) next.insert(H.mul(a, b));
        cur = std::move(next);
    }
    return {cur.begin(), cur.end()};
}

// Left coset representatives of the subgroup I inside A.
std::vector<int> left_coset_reps(const FinGroup& H, const Subgroup& A, const Subgroup& I) {
    std::vector<bool> seen(H.order(), false);
    std::vector<int> reps;
    for (int k : A.elems) {
        if (seen[k]) continue;
        reps.push_back(k);
        for (int i : I.elems) seen[H.mul(k, i)] = true;
    }
    return reps;
}

void put_block(SMat& out, int bi, int bj, const SMat& blk, bool add = true) {
    int d = blk.rows();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < blk.cols(); ++b) {
            if (add)
                out(bi * d + a, bj * blk.cols() + b) += blk(a, b);
            else
                out(bi * d + a, bj * blk.cols() + b) = blk(a, b);
        }
}

SMat flatten(const HeckeFunc& f) {
    int d = f.values.at(0).rows();
    SMat m(static_cast<int>(f.values.size()) * d, d);
    for (size_t i = 0; i < f.values.size(); ++i) put_block(m, static_cast<int>(i), 0, f.values[i], false);
    return m;
}

int prime_of_power(long m) {
    if (m <= 1) return 0;
    long p = 2;
    while (m % p) ++p;
    long r = m;
    while (r % p == 0) r /= p;
    return r == 1 ? static_cast<int>(p) : -1;
}

}  // namespace

// ---------------------------------------------------------------- family

CoverFamily::CoverFamily(CoverSpec spec) : H_(std::move(spec.H)) {
    require(H_ != nullptr, Errc::Config, "cover family without an ambient group");
    int n = static_cast<int>(spec.points.size());
    require(n >= 1, Errc::Config, "cover family without points");
    require(spec.base >= 0 && spec.base < n, Errc::Config, "base point out of range");
    base_ = spec.base;
    require(static_cast<int>(spec.distance.size()) == n, Errc::Config, "distance table has the wrong size");
    for (int x = 0; x < n; ++x) {
        require(static_cast<int>(spec.distance[x].size()) == n, Errc::Config, "distance table is not square");
        require(spec.distance[x][x] == 0, Errc::Config, "distance table has a nonzero diagonal");
        for (int y = 0; y < n; ++y)
            require(spec.distance[x][y] == spec.distance[y][x] && spec.distance[x][y] >= 0, Errc::Config,
                    "distance table is not symmetric and nonnegative");
    }
    dist_ = std::move(spec.distance);

    require(spec.rhoM.K.elems == spec.KM.elems, Errc::Config, "rho_M is not a representation of K_M");
    for (const auto& pt : spec.points) {
        require(pt.rho.K.elems == pt.K.elems, Errc::Config, "rho at " + pt.name + " is not defined on K");
        require(pt.theta.K.elems == pt.Kplus.elems && pt.theta.dim == 1, Errc::Config,
                "theta at " + pt.name + " is not a character of K_plus");
        require(pt.rho.dim == spec.rhoM.dim, Errc::Config, "rho at " + pt.name + " and rho_M differ in dimension");
    }

    // the prime: every index [K_y : K_x cap K_y] is a power of one prime
    int p = 0;
    for (const auto& a : spec.points)
        for (const auto& b : spec.points) {
            long m = b.K.order() / intersect(*H_, a.K, b.K).order();
            int q = prime_of_power(m);
            require(q >= 0, Errc::Config,
                    "index [K_" + b.name + " : K_" + a.name + " cap K_" + b.name + "] = " + str_of(m) +
                        " is not a prime power");
            if (q == 0) continue;
            require(p == 0 || p == q, Errc::Config, "subgroup indices mix the primes " + str_of(p) + " and " + str_of(q));
            p = q;
        }
    require(spec.p == 0 || p == 0 || spec.p == p, Errc::Config,
            "declared prime " + str_of(spec.p) + " differs from the index prime " + str_of(p));
    p_ = p ? p : spec.p;
    ctx_ = Ctx::get(spec.cyclotomic, p_);

    rhoM_ = promote(std::move(spec.rhoM), ctx_);
    KM_ = std::move(spec.KM);
    for (auto& pt : spec.points) {
        pt.rho = promote(std::move(pt.rho), ctx_);
        pt.theta = promote(std::move(pt.theta), ctx_);
        points_.push_back(std::move(pt));
    }
    for (const auto& pt : points_) settings_.push_back(std::make_shared<HeckeSetting>(*H_, pt.K, pt.rho));
    unipotents_ = std::move(spec.unipotents);

    // N and its action on the points
    require(spec.gen_action.size() == spec.nheart_gens.size(), Errc::Config, "one point permutation per N generator");
    for (const auto& perm : spec.gen_action) {
        require(static_cast<int>(perm.size()) == n, Errc::Config, "point permutation has the wrong size");
        std::vector<int> s(perm);
        std::sort(s.begin(), s.end());
        for (int i = 0; i < n; ++i) require(s[i] == i, Errc::Config, "point action is not a permutation");
    }
    N_ = subgroup_from_generators(*H_, spec.nheart_gens);
    action_.assign(H_->order(), {});
    std::vector<int> idp(n);
    for (int i = 0; i < n; ++i) idp[i] = i;
    action_[0] = idp;
    std::vector<int> queue{0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int a = queue[qi];
        for (size_t j = 0; j < spec.nheart_gens.size(); ++j) {
            int b = H_->mul(a, spec.nheart_gens[j]);
            std::vector<int> img(n);
            for (int x = 0; x < n; ++x) img[x] = action_[a][spec.gen_action[j][x]];
            if (action_[b].empty()) {
                action_[b] = img;
                queue.push_back(b);
            } else {
                require(action_[b] == img, Errc::Config, "point action does not respect relations in N");
            }
        }
    }

    // W = N / (N cap K_M)
    Subgroup NK = intersect(*H_, N_, KM_);
    w_of_.assign(H_->order(), -1);
    for (int h : N_.elems) {
        if (w_of_[h] >= 0) continue;
        int id = static_cast<int>(w_lift_.size());
        w_lift_.push_back(h);
        for (int k : NK.elems) w_of_[H_->mul(h, k)] = id;
    }
}

int CoverFamily::find_point(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (points_[i].name == name) return i;
    fail(Errc::Config, "unknown point '" + name + "'");
}

int CoverFamily::act(int n, int x) const {
    require(n >= 0 && n < H_->order() && !action_[n].empty(), Errc::Domain, "element " + H_->label(n) + " is not in N");
    return action_[n].at(x);
}

std::string CoverFamily::w_label(int w) const { return w == 0 ? "1" : H_->label(w_lift_.at(w)); }

long CoverFamily::index_exponent(const Subgroup& A, const Subgroup& B) const {
    long m = A.order() / intersect(*H_, A, B).order();
    if (m == 1) return 0;
    require(p_ > 1, Errc::Domain, "nontrivial index without a prime");
    long e = 0;
    while (m % p_ == 0) {
        m /= p_;
        ++e;
    }
    require(m == 1, Errc::Domain, "index is not a power of " + str_of(p_));
    return e;
}

// ---------------------------------------------------------------- T family

TFamily default_T(const CoverFamily& fam) {
    const FinGroup& H = fam.H();
    TFamily T;
    int d = fam.dim();
    for (int w = 0; w < fam.w_size(); ++w) {
        if (w == 0) {
            T.at_lift.push_back(SMat::identity(d));
            continue;
        }
        int n = fam.w_lift(w), ni = H.inv(n);
        std::vector<std::pair<const SMat*, const SMat*>> pairs;
        for (int k : fam.KM().elems) {
            int c = H.mul(H.mul(ni, k), n);
            require(fam.KM().contains(c), Errc::Config, "N element " + H.label(n) + " does not normalise K_M");
            pairs.push_back({&fam.rhoM()(c), &fam.rhoM()(k)});
        }
        auto sp = intertwiners(pairs, d);
        require(!sp.empty(), Errc::Config, "no nonzero T_n for n = " + H.label(n) + ": n does not fix rho_M");
        T.at_lift.push_back(sp[0]);
    }
    return T;
}

SMat T_of(const CoverFamily& fam, const TFamily& T, int n) {
    const FinGroup& H = fam.H();
    int w = fam.w_class(n);
    require(w >= 0, Errc::Domain, "element " + H.label(n) + " is not in N");
    int lift = fam.w_lift(w);
    if (lift == n) return T.at_lift.at(w);
    return T.at_lift.at(w) * fam.rhoM()(H.mul(H.inv(lift), n));
}

CheckReport validate_T(const CoverFamily& fam, const TFamily& T) {
    CheckReport r;
    const FinGroup& H = fam.H();
    int d = fam.dim();
    r.add("T_count", static_cast<int>(T.at_lift.size()) == fam.w_size(),
          str_of(T.at_lift.size()) + " matrices for " + str_of(fam.w_size()) + " classes");
    if (static_cast<int>(T.at_lift.size()) != fam.w_size()) return r;
    r.add("T_identity", T.at_lift[0] == SMat::identity(d), "T_1 = id");
    bool nz = true, inter = true;
    std::string wit;
    for (int w = 0; w < fam.w_size(); ++w) {
        const SMat& t = T.at_lift[w];
        if (t.rows() != d || t.cols() != d || t.is_zero()) {
            nz = false;
            wit = "class " + fam.w_label(w);
            continue;
        }
        int n = fam.w_lift(w), ni = H.inv(n);
        for (int k : fam.KM().elems) {
            int c = H.mul(H.mul(ni, k), n);
            if (!fam.KM().contains(c) || !(t * fam.rhoM()(c) == fam.rhoM()(k) * t)) {
                inter = false;
                wit = "n=" + H.label(n) + ", k=" + H.label(k);
                break;
            }
        }
    }
    r.add("T_nonzero", nz, nz ? "" : wit);
    r.add("T_intertwines", inter, inter ? "T_n in Hom_{K_M}(n rho_M, rho_M)" : wit);
    return r;
}

// ---------------------------------------------------------------- validation

CheckReport validate_family(const CoverFamily& fam) {
    CheckReport r;
    const FinGroup& H = fam.H();
    int n = fam.size();
    r.add("prime", true, fam.p() ? "indices are powers of " + str_of(fam.p()) : "all indices are 1");

    {
        std::string why;
        bool ok = verify_rep(H, fam.rhoM(), &why);
        for (int x = 0; x < n && ok; ++x) {
            ok = verify_rep(H, fam.point(x).rho, &why) && verify_rep(H, fam.point(x).theta, &why);
            if (!ok) why = fam.point(x).name + ": " + why;
        }
        r.add("representations", ok, why);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x) {
            const auto& P = fam.point(x);
            for (int k : P.K.elems)
                for (int u : P.Kplus.elems)
                    if (wit.empty() && !P.Kplus.contains(H.conj(k, u)))
                        wit = P.name + ": k=" + H.label(k) + ", u=" + H.label(u);
        }
        r.add("kplus_normal", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x) {
            const auto& P = fam.point(x);
            if (!subset(fam.KM(), P.K)) {
                wit = P.name + ": K_M is not inside K";
                break;
            }
            for (int k : fam.KM().elems)
                if (!(P.rho(k) == fam.rhoM()(k))) {
                    wit = P.name + ": rho(" + H.label(k) + ") != rho_M(" + H.label(k) + ")";
                    break;
                }
        }
        r.add("levi_restriction", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x) {
            const auto& P = fam.point(x);
            for (int k : P.Kplus.elems) {
                SMat want = P.theta(k)(0, 0) * SMat::identity(fam.dim());
                if (!(P.rho(k) == want)) {
                    wit = P.name + ": rho(" + H.label(k) + ") != theta(" + H.label(k) + ") id";
                    break;
                }
            }
        }
        r.add("theta_isotypic", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x) {
            const auto& P = fam.point(x);
            if (hom_dim(H, P.rho, P.rho) != 1) wit = P.name + ": End_K(rho) is not one-dimensional";
        }
        if (wit.empty() && hom_dim(H, fam.rhoM(), fam.rhoM()) != 1) wit = "End_{K_M}(rho_M) is not one-dimensional";
        r.add("irreducible", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int a : fam.N().elems) {
            for (int x = 0; x < n && wit.empty(); ++x) {
                int y = fam.act(a, x);
                const auto& P = fam.point(x);
                const auto& Q = fam.point(y);
                if (conjugate(H, P.K, a).elems != Q.K.elems)
                    wit = "K_{n" + P.name + "} != n K_" + P.name + " n^-1 for n=" + H.label(a);
                else if (conjugate(H, P.Kplus, a).elems != Q.Kplus.elems)
                    wit = "K_{n" + P.name + ",+} != n K_" + P.name + ",+ n^-1 for n=" + H.label(a);
            }
            if (!wit.empty()) break;
        }
        r.add("n_conjugation", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int a : fam.N().elems)
            for (int x = 0; x < n && wit.empty(); ++x)
                for (int y = 0; y < n && wit.empty(); ++y)
                    if (fam.distance(fam.act(a, x), fam.act(a, y)) != fam.distance(x, y))
                        wit = "n=" + H.label(a) + " moves d(" + fam.point(x).name + "," + fam.point(y).name + ")";
        r.add("n_preserves_distance", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int a : fam.N().elems) {
            if (conjugate(H, fam.KM(), a).elems != fam.KM().elems) {
                wit = "n=" + H.label(a) + " does not normalise K_M";
                break;
            }
            if (fam.KM().contains(a))
                for (int x = 0; x < n; ++x)
                    if (fam.act(a, x) != x) wit = "element " + H.label(a) + " of K_M moves " + fam.point(x).name;
        }
        if (wit.empty()) {
            try {
                default_T(fam);
            } catch (const Error& e) {
                wit = e.what();
            }
        }
        r.add("n_normalises_levi", wit.empty(), wit);
    }
    {
        std::string wit;
        Subgroup first = intersect(H, fam.point(0).Kplus, fam.KM());
        for (int x = 1; x < n && wit.empty(); ++x)
            if (intersect(H, fam.point(x).Kplus, fam.KM()).elems != first.elems)
                wit = "K_{x,+} cap K_M differs at " + fam.point(x).name;
        r.add("kplus_levi_constant", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x) {
            const auto& P = fam.point(x);
            if (product_set(H, {&fam.KM(), &P.Kplus}) != P.K.elems) wit = P.name + ": K != K_M K_plus";
        }
        r.add("K_is_KM_Kplus", wit.empty(), wit);
    }
    if (fam.unipotents().empty()) {
        r.add("iwahori_factorization", true, "skipped: no unipotent data");
        r.add("rho_trivial_on_unipotents", true, "skipped: no unipotent data");
        r.add("unipotent_nesting", true, "skipped: no unipotent data");
    } else {
        std::string wit, wit2;
        for (const auto& up : fam.unipotents())
            for (int x = 0; x < n; ++x) {
                const auto& P = fam.point(x);
                Subgroup KU = intersect(H, P.K, up.U), KB = intersect(H, P.K, up.Ubar);
                long prod = static_cast<long>(KU.order()) * fam.KM().order() * KB.order();
                if (wit.empty() && (prod != P.K.order() || product_set(H, {&KU, &fam.KM(), &KB}) != P.K.elems))
                    wit = P.name + ": K is not (K cap U) K_M (K cap Ubar) with unique factorisation";
                Subgroup PU = intersect(H, P.Kplus, up.U), PB = intersect(H, P.Kplus, up.Ubar),
                         PM = intersect(H, P.Kplus, fam.KM());
                if (wit.empty() && product_set(H, {&PU, &PM, &PB}) != P.Kplus.elems)
                    wit = P.name + ": K_plus does not factor";
                for (const Subgroup* S : {&KU, &KB})
                    for (int u : S->elems)
                        if (wit2.empty() && !(P.rho(u) == SMat::identity(fam.dim())))
                            wit2 = P.name + ": rho(" + H.label(u) + ") != id";
            }
        r.add("iwahori_factorization", wit.empty(), wit);
        r.add("rho_trivial_on_unipotents", wit2.empty(), wit2);
        std::string wit3;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    if (!wit3.empty() || fam.distance(x, y) + fam.distance(y, z) != fam.distance(x, z)) continue;
                    bool found = false;
                    for (const auto& up : fam.unipotents()) {
                        auto cu = [&](int a) { return intersect(H, fam.point(a).K, up.U); };
                        auto cb = [&](int a) { return intersect(H, fam.point(a).K, up.Ubar); };
                        if (subset(cu(x), cu(y)) && subset(cu(y), cu(z)) && subset(cb(z), cb(y)) &&
                            subset(cb(y), cb(x)))
                            found = true;
                    }
                    if (!found)
                        wit3 = "no unipotent pair nests along (" + fam.point(x).name + "," + fam.point(y).name + "," +
                               fam.point(z).name + ")";
                }
        r.add("unipotent_nesting", wit3.empty(), wit3);
    }
    {
        std::string wit;
        int want = hom_dim(H, fam.rhoM(), fam.rhoM());
        for (int x = 0; x < n && wit.empty(); ++x)
            for (int y = 0; y < n && wit.empty(); ++y) {
                int got = hom_dim(H, fam.point(x).rho, fam.point(y).rho);
                if (got != want)
                    wit = "dim Hom_{K_" + fam.point(x).name + " cap K_" + fam.point(y).name + "} = " + str_of(got) +
                          ", End_{K_M}(rho_M) has dimension " + str_of(want);
            }
        r.add("cover_intertwining", wit.empty(), wit);
    }
    return r;
}

// ---------------------------------------------------------------- operators

SMat theta_op(const CoverFamily& fam, int x, int y) {
    const FinGroup& H = fam.H();
    const auto& X = fam.point(x);
    const auto& Y = fam.point(y);
    const HeckeSetting& sx = fam.setting(x);
    const HeckeSetting& sy = fam.setting(y);
    int d = fam.dim();
    Subgroup I = intersect(H, Y.Kplus, X.Kplus);
    auto reps = left_coset_reps(H, Y.Kplus, I);
    SMat out(sy.index() * d, sx.index() * d);
    for (int k : reps) {
        int ki = H.inv(k);
        Scalar th = Y.theta(k)(0, 0);
        for (int j = 0; j < sy.index(); ++j) {
            int g = H.mul(ki, sy.right_reps()[j]);
            put_block(out, j, sx.right_coset(g), th * X.rho(sx.right_k(g)));
        }
    }
    return Scalar(Rational(1, static_cast<long>(reps.size()))) * out;
}

SMat theta_norm(const CoverFamily& fam, int x, int y) {
    long e = fam.index_exponent(fam.point(y).K, fam.point(x).K);
    SMat t = theta_op(fam, x, y);
    if (e == 0) return t;
    return half_power_of_p(fam.ctx(), e) * t;
}

SMat constant_term(const CoverFamily& fam, int x, int y) {
    SMat c = theta_op(fam, y, x) * theta_op(fam, x, y);
    int d = fam.dim();
    SMat out(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out(a, b) = c(a, b);
    return out;
}

bool is_relevant(const CoverFamily& fam, int x, int y) {
    require(fam.distance(x, y) == 1, Errc::Domain,
            "relevance is defined for points at distance 1, got " + str_of(fam.distance(x, y)));
    SMat c = theta_op(fam, y, x) * theta_op(fam, x, y);
    return !(c == c(0, 0) * SMat::identity(c.rows()));
}

SMat c_op(const CoverFamily& fam, const TFamily& T, int x, int n) {
    const FinGroup& H = fam.H();
    int y = fam.act(n, x);
    const HeckeSetting& sx = fam.setting(x);
    const HeckeSetting& sy = fam.setting(y);
    int d = fam.dim();
    SMat Tn = T_of(fam, T, n);
    int ni = H.inv(n);
    SMat out(sy.index() * d, sx.index() * d);
    for (int j = 0; j < sy.index(); ++j) {
        int g = H.mul(ni, sy.right_reps()[j]);
        put_block(out, j, sx.right_coset(g), Tn * fam.point(x).rho(sx.right_k(g)));
    }
    return out;
}

SMat phi_op(const CoverFamily& fam, const TFamily& T, int x, int w) {
    int n = fam.w_lift(w);
    int y = fam.act(fam.H().inv(n), x);
    return c_op(fam, T, y, n) * theta_norm(fam, x, y);
}

Scalar mu_from_T(const CoverFamily& fam, const TFamily& T, int m, int n) {
    int lm = fam.w_lift(m), ln = fam.w_lift(n);
    SMat lhs = T_of(fam, T, lm) * T_of(fam, T, ln);
    SMat rhs = T_of(fam, T, fam.H().mul(lm, ln));
    auto c = scalar_ratio(lhs, rhs);
    require(c.has_value() && !c->is_zero(), Errc::Check,
            "T_m T_n is not a multiple of T_mn for m=" + fam.w_label(m) + ", n=" + fam.w_label(n));
    return *c;
}

// ---------------------------------------------------------------- walls

WallStructure wall_structure(const CoverFamily& fam) {
    WallStructure ws;
    int n = fam.size(), W = fam.w_size(), x0 = fam.base();
    std::vector<std::vector<int>> rel(n, std::vector<int>(n, -1));
    auto relevant = [&](int x, int y) {
        if (rel[x][y] < 0) rel[x][y] = rel[y][x] = is_relevant(fam, x, y) ? 1 : 0;
        return rel[x][y] == 1;
    };
    std::vector<bool> comp(n, false);
    comp[x0] = true;
    std::vector<int> queue{x0};
    for (size_t i = 0; i < queue.size(); ++i)
        for (int y = 0; y < n; ++y)
            if (!comp[y] && fam.distance(queue[i], y) == 1 && !relevant(queue[i], y)) {
                comp[y] = true;
                queue.push_back(y);
            }
    for (int w = 0; w < W; ++w) {
        int y = fam.w_act_inv(w, x0);
        if (comp[y])
            ws.omega.push_back(w);
        else if (fam.distance(x0, y) == 1 && relevant(x0, y) && fam.w_mul(w, w) == 0)
            ws.simple.push_back(w);
    }
    // W_rel by breadth-first search, recording word lengths
    std::vector<int> len(W, -1);
    len[0] = 0;
    ws.waff.push_back(0);
    for (size_t i = 0; i < ws.waff.size(); ++i)
        for (int s : ws.simple) {
            int u = fam.w_mul(ws.waff[i], s);
            if (len[u] < 0) {
                len[u] = len[ws.waff[i]] + 1;
                ws.waff.push_back(u);
            }
        }
    std::sort(ws.waff.begin(), ws.waff.end());
    ws.rel_length.assign(W, -1);
    ws.omega_part.assign(W, -1);
    ws.waff_part.assign(W, -1);
    std::set<int> om(ws.omega.begin(), ws.omega.end());
    for (int a : ws.omega)
        for (int b : ws.omega)
            if (!om.count(fam.w_mul(a, b))) {
                ws.split = false;
                ws.why = "Omega is not closed under products";
            }
    for (int w = 0; w < W && ws.split; ++w) {
        int found = 0;
        for (int t : ws.omega)
            for (int u : ws.waff)
                if (fam.w_mul(t, u) == w) {
                    ++found;
                    ws.omega_part[w] = t;
                    ws.waff_part[w] = u;
                    ws.rel_length[w] = len[u];
                }
        if (found != 1) {
            ws.split = false;
            ws.why = "class " + fam.w_label(w) + " has " + str_of(found) + " factorisations t u";
        }
    }
    return ws;
}

namespace {

// The subgroup J of H as a group in its own right, with K and rho carried along.
struct Restricted {
    FinGroup G;
    Subgroup K;
    Rep rho;
};

Restricted restrict_to(const FinGroup& H, const Subgroup& J, const Subgroup& K, const Rep& rho) {
    std::vector<std::vector<int>> table(J.order(), std::vector<int>(J.order()));
    for (int a = 0; a < J.order(); ++a)
        for (int b = 0; b < J.order(); ++b) table[a][b] = J.pos[H.mul(J.elems[a], J.elems[b])];
    Restricted r{FinGroup::from_table(std::move(table), "wall group"), {}, {}};
    std::vector<int> kk;
    for (int k : K.elems) kk.push_back(J.pos[k]);
    r.K = subgroup_from_elements(r.G, kk);
    r.rho = rho;
    r.rho.K = r.K;
    return r;
}

// u = s_1 ... s_k as a list of simple classes.
std::vector<int> word_in_simple(const CoverFamily& fam, const WallStructure& ws, int u) {
    std::vector<int> word;
    while (u != 0) {
        bool step = false;
        for (int s : ws.simple) {
            int v = fam.w_mul(u, s);  // u s has length one less when s ends a reduced word
            if (ws.rel_length[v] == ws.rel_length[u] - 1) {
                word.push_back(s);
                u = v;
                step = true;
                break;
            }
        }
        require(step, Errc::Check, "no reduced word found in W_rel");
    }
    std::reverse(word.begin(), word.end());
    return word;
}

}  // namespace

NormalizedT normalize_T(const CoverFamily& fam, const TFamily& T, const CoeffPlusRule& rule) {
    const FinGroup& H = fam.H();
    WallStructure ws = wall_structure(fam);
    require(ws.split, Errc::Domain, "W does not split as W_rel x| Omega: " + ws.why);
    NormalizedT out;
    out.T = T;
    int x0 = fam.base();
    const auto& P = fam.point(x0);
    for (int s : ws.simple) {
        std::vector<int> gens(P.K.elems);
        gens.push_back(fam.w_lift(s));
        Subgroup J = subgroup_from_generators(H, gens);
        Restricted r = restrict_to(H, J, P.K, P.rho);
        HeckeSetting hs(r.G, r.K, r.rho);
        size_t dimEnd = hs.hecke_basis().size();
        require(dimEnd == 2, Errc::Domain,
                "End algebra at the wall of " + fam.w_label(s) + " has dimension " + str_of(dimEnd) + ", expected 2");
        SMat phi = phi_op(fam, out.T, x0, s);
        SMat id = SMat::identity(phi.rows());
        auto co = express_in_span({phi, id}, phi * phi);
        require(co.has_value(), Errc::Check, "Phi_s^2 is not in span{Phi_s, 1} for s = " + fam.w_label(s));
        auto [dv, qv] = solve_normalization((*co)[0], (*co)[1], rule);
        out.a[s] = (*co)[0];
        out.b[s] = (*co)[1];
        out.d[s] = dv;
        out.q[s] = qv;
        out.T.at_lift[s] = dv * out.T.at_lift[s];
    }
    // T along t s_1 ... s_k is the product of the factors
    for (int w = 0; w < fam.w_size(); ++w) {
        int t = ws.omega_part[w], u = ws.waff_part[w];
        if (u == 0 || (t == 0 && ws.rel_length[u] == 1)) continue;
        int prod = fam.w_lift(t);
        SMat Tp = out.T.at_lift[t];
        for (int s : word_in_simple(fam, ws, u)) {
            prod = H.mul(prod, fam.w_lift(s));
            Tp = Tp * out.T.at_lift[s];
        }
        int k = H.mul(H.inv(fam.w_lift(w)), prod);
        out.T.at_lift[w] = Tp * fam.rhoM()(H.inv(k));
    }
    return out;
}

// ---------------------------------------------------------------- relations

CheckReport support_bijection_check(const CoverFamily& fam) {
    CheckReport r;
    const FinGroup& H = fam.H();
    for (int x = 0; x < fam.size(); ++x) {
        const HeckeSetting& s = fam.setting(x);
        const std::string nm = fam.point(x).name + ".";
        std::vector<int> inter;
        bool one_dim = true;
        std::string wit;
        for (int g : s.double_cosets()) {
            size_t k = s.intertwiner_space(g).size();
            if (k > 0) inter.push_back(s.double_coset_of(g));
            if (k > 1) {
                one_dim = false;
                wit = "double coset of " + H.label(g) + " carries " + str_of(k) + " intertwiners";
            }
        }
        std::set<int> image;
        bool inj = true, inside = true;
        std::string wit2;
        for (int w = 0; w < fam.w_size(); ++w) {
            int dc = s.double_coset_of(fam.w_lift(w));
            if (!image.insert(dc).second) {
                inj = false;
                wit2 = "classes share the double coset of " + fam.w_label(w);
            }
            if (std::find(inter.begin(), inter.end(), dc) == inter.end()) {
                inside = false;
                wit2 = "double coset of " + fam.w_label(w) + " does not intertwine";
            }
        }
        bool onto = image.size() == inter.size() && inside;
        r.add(nm + "double_coset_injection", inj && inside, inj && inside ? "" : wit2);
        r.add(nm + "double_coset_bijection", inj && onto,
              str_of(inter.size()) + " intertwining double cosets, |W| = " + str_of(fam.w_size()));
        r.add(nm + "graded_pieces_one_dimensional", one_dim, wit);
    }
    return r;
}

CheckReport relation_suite(const CoverFamily& fam, const TFamily& T) {
    CheckReport r;
    const FinGroup& H = fam.H();
    int n = fam.size(), d = fam.dim(), x0 = fam.base();
    auto nm = [&](int x) { return fam.point(x).name; };
    r.merge(validate_T(fam, T));

    std::vector<std::vector<SMat>> th(n, std::vector<SMat>(n)), thn(n, std::vector<SMat>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            th[x][y] = theta_op(fam, x, y);
            thn[x][y] = theta_norm(fam, x, y);
        }

    {
        std::string wit, witn;
        int count = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    if (fam.distance(x, y) + fam.distance(y, z) != fam.distance(x, z)) continue;
                    ++count;
                    std::string tag = "(" + nm(x) + "," + nm(y) + "," + nm(z) + ")";
                    if (wit.empty() && !(th[y][z] * th[x][y] == th[x][z])) wit = tag;
                    if (witn.empty() && !(thn[y][z] * thn[x][y] == thn[x][z])) witn = tag;
                }
        r.add("theta_transitivity", wit.empty(), wit.empty() ? str_of(count) + " additive triples" : wit);
        r.add("theta_norm_transitivity", witn.empty(), witn.empty() ? str_of(count) + " additive triples" : witn);
    }
    {
        // Theta(f) must lie in ind(y): evaluate at every g, not only at coset representatives.
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x)
            for (int y = 0; y < n && wit.empty(); ++y) {
                const auto& X = fam.point(x);
                const auto& Y = fam.point(y);
                const HeckeSetting& sx = fam.setting(x);
                const HeckeSetting& sy = fam.setting(y);
                auto reps = left_coset_reps(H, Y.Kplus, intersect(H, Y.Kplus, X.Kplus));
                Scalar pref(Rational(1, static_cast<long>(reps.size())));
                auto value_at = [&](int g) {
                    SMat row(d, sx.index() * d);
                    for (int k : reps) {
                        int h = H.mul(H.inv(k), g);
                        SMat blk = (pref * Y.theta(k)(0, 0)) * X.rho(sx.right_k(h));
                        put_block(row, 0, sx.right_coset(h), blk);
                    }
                    return row;
                };
                std::vector<SMat> at_rep;
                for (int rj : sy.right_reps()) at_rep.push_back(value_at(rj));
                for (int g = 0; g < H.order() && wit.empty(); ++g)
                    if (!(value_at(g) == Y.rho(sy.right_k(g)) * at_rep[sy.right_coset(g)]))
                        wit = "Theta_{" + nm(y) + "|" + nm(x) + "} leaves ind at g=" + H.label(g);
            }
        r.add("theta_well_defined", wit.empty(), wit);
    }
    {
        std::string wit;
        for (int x = 0; x < n && wit.empty(); ++x)
            for (int y = 0; y < n && wit.empty(); ++y)
                for (int h = 0; h < H.order() && wit.empty(); ++h)
                    if (!(th[x][y] * fam.setting(x).induced(h) == fam.setting(y).induced(h) * th[x][y]))
                        wit = "Theta_{" + nm(y) + "|" + nm(x) + "}, h=" + H.label(h);
        r.add("theta_equivariant", wit.empty(), wit);
    }
    {
        std::string wit, witc, witk;
        for (int a : fam.N().elems)
            for (int x = 0; x < n; ++x) {
                int ax = fam.act(a, x);
                SMat Ta = T_of(fam, T, a);
                const auto& P = fam.point(x);
                for (int k : fam.point(ax).K.elems) {
                    int c = H.mul(H.mul(H.inv(a), k), a);
                    if (witk.empty() && !(Ta * P.rho(c) == fam.point(ax).rho(k) * Ta))
                        witk = "T_n does not intertwine at n=" + H.label(a) + ", x=" + nm(x);
                }
                if (witc.empty() && !(c_op(fam, T, x, a) == c_op(fam, T, x, fam.w_lift(fam.w_class(a)))))
                    witc = "c depends on the lift: n=" + H.label(a) + ", x=" + nm(x);
                for (int y = 0; y < n && wit.empty(); ++y) {
                    int ay = fam.act(a, y);
                    SMat cx = c_op(fam, T, x, a), cy = c_op(fam, T, y, a);
                    if (!(th[ax][ay] * cx == cy * th[x][y]) || !(thn[ax][ay] * cx == cy * thn[x][y]))
                        wit = "n=" + H.label(a) + ", x=" + nm(x) + ", y=" + nm(y);
                }
            }
        r.add("c_well_defined", witk.empty(), witk);
        r.add("c_class_invariant", witc.empty(), witc);
        r.add("theta_c_commute", wit.empty(), wit);
    }
    int W = fam.w_size();
    std::vector<std::vector<Scalar>> mu(W, std::vector<Scalar>(W));
    {
        std::string wit;
        for (int v = 0; v < W; ++v)
            for (int w = 0; w < W; ++w) {
                try {
                    mu[v][w] = mu_from_T(fam, T, v, w);
                } catch (const Error& e) {
                    if (wit.empty()) wit = e.what();
                }
            }
        r.add("mu_defined", wit.empty(), wit);
        if (!wit.empty()) return r;
    }
    {
        std::string wit;
        for (int v = 0; v < W && wit.empty(); ++v)
            for (int w = 0; w < W && wit.empty(); ++w)
                for (int x = 0; x < n && wit.empty(); ++x) {
                    int lv = fam.w_lift(v), lw = fam.w_lift(w);
                    int vx = fam.act(H.inv(lv), x);
                    int wvx = fam.act(H.inv(lw), vx);
                    SMat lhs = c_op(fam, T, vx, lv) * c_op(fam, T, wvx, lw);
                    SMat rhs = mu[v][w] * c_op(fam, T, wvx, fam.w_lift(fam.w_mul(v, w)));
                    if (!(lhs == rhs)) wit = "v=" + fam.w_label(v) + ", w=" + fam.w_label(w) + ", x=" + nm(x);
                }
        r.add("c_transitivity", wit.empty(), wit);
    }
    std::vector<SMat> phi;
    for (int w = 0; w < W; ++w) phi.push_back(phi_op(fam, T, x0, w));
    {
        auto len = [&](int w) { return fam.distance(x0, fam.w_act_inv(w, x0)); };
        std::string wit;
        int count = 0;
        for (int v = 0; v < W; ++v)
            for (int w = 0; w < W; ++w) {
                int vw = fam.w_mul(v, w);
                if (len(vw) != len(v) + len(w)) continue;
                ++count;
                if (wit.empty() && !(phi[v] * phi[w] == mu[v][w] * phi[vw]))
                    wit = "v=" + fam.w_label(v) + ", w=" + fam.w_label(w);
            }
        r.add("phi_length_additive", wit.empty(), wit.empty() ? str_of(count) + " length-additive pairs" : wit);
    }
    {
        std::string wit;
        auto ws = wall_structure(fam);
        for (int s : ws.simple) {
            int sx = fam.w_act(s, x0);
            if (!(phi[s] * phi[s] == mu[s][s] * (thn[sx][x0] * thn[x0][sx])))
                wit = "s=" + fam.w_label(s);
        }
        r.add("phi_square_vs_theta", wit.empty(), wit.empty() ? str_of(ws.simple.size()) + " relevant reflections" : wit);
    }
    {
        std::string wit, witn, witc;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (fam.distance(x, y) != 1) continue;
                long iy = fam.point(y).K.order() / intersect(H, fam.point(x).K, fam.point(y).K).order();
                if (witc.empty() && !(constant_term(fam, x, y) == Scalar(Rational(1, iy)) * SMat::identity(d)))
                    witc = "(" + nm(x) + "," + nm(y) + ")";
                if (is_relevant(fam, x, y)) continue;
                long ix = fam.point(x).K.order() / intersect(H, fam.point(x).K, fam.point(y).K).order();
                if (wit.empty() && ix != iy) wit = "(" + nm(x) + "," + nm(y) + "): " + str_of(ix) + " vs " + str_of(iy);
                if (witn.empty() && !(thn[y][x] * thn[x][y] == SMat::identity(thn[y][x].rows())))
                    witn = "(" + nm(x) + "," + nm(y) + ")";
            }
        r.add("constant_term", witc.empty(), witc);
        r.add("nonrelevant_index_symmetry", wit.empty(), wit);
        r.add("nonrelevant_theta_norm_identity", witn.empty(), witn);
    }
    {
        // support of phi_w and its value at the lift
        std::string wit;
        const HeckeSetting& s = fam.setting(x0);
        for (int w = 0; w < W && wit.empty(); ++w) {
            HeckeFunc f = s.transport_inverse(phi[w]);
            int lift = fam.w_lift(w);
            int dc = s.double_coset_of(lift);
            for (int g = 0; g < H.order() && wit.empty(); ++g)
                if (f.values[g].is_zero() == (s.double_coset_of(g) == dc))
                    wit = "support of phi_" + fam.w_label(w) + " differs from K w K at " + H.label(g);
            int wx = fam.w_act(w, x0);
            long e = fam.index_exponent(fam.point(x0).K, fam.point(wx).K);
            SMat want = e == 0 ? T_of(fam, T, lift) : half_power_of_p(fam.ctx(), -e) * T_of(fam, T, lift);
            if (wit.empty() && !(f.values[lift] == want)) wit = "phi_" + fam.w_label(w) + "(n) != |K/(K cap K_wx)|^-1/2 T_n";
        }
        r.add("phi_support_and_value", wit.empty(), wit);
    }
    r.merge(support_bijection_check(fam), "support.");
    return r;
}

// ---------------------------------------------------------------- star

StarResult star_check(const CoverFamily& fam, const TFamily& T) {
    StarResult out;
    const FinGroup& H = fam.H();
    int x0 = fam.base();
    const auto& P = fam.point(x0);
    const HeckeSetting& s = fam.setting(x0);
    int d = fam.dim();
    SMat M(d, d);
    for (int k : P.K.elems) M = M + conj_transpose(P.rho(k)) * P.rho(k);
    auto Minv = M.inverse();
    require(Minv.has_value(), Errc::Check, "averaged form is singular");
    auto star = [&](const HeckeFunc& f) {
        HeckeFunc r = f;
        for (int g = 0; g < H.order(); ++g) r.values[g] = *Minv * conj_transpose(f.values[H.inv(g)]) * M;
        return r;
    };
    auto ws = wall_structure(fam);
    std::string wit, wit_abs, wit_s;
    for (int w = 0; w < fam.w_size(); ++w) {
        HeckeFunc f = s.transport_inverse(phi_op(fam, T, x0, w));
        HeckeFunc g = s.transport_inverse(phi_op(fam, T, x0, fam.w_inv(w)));
        auto c = scalar_ratio(flatten(star(f)), flatten(g));
        if (!c) {
            if (wit.empty()) wit = "phi_" + fam.w_label(w) + "^* is not a multiple of phi_{w^-1}";
            continue;
        }
        out.c[w] = *c;
        if (w != 0 && fam.w_mul(w, w) == 0 && !(c->abs2() == Scalar(1)) && wit_abs.empty())
            wit_abs = "|c_" + fam.w_label(w) + "|^2 = " + c->abs2().str();
        if (std::find(ws.simple.begin(), ws.simple.end(), w) != ws.simple.end() && !(c->is_one()) && wit_s.empty())
            wit_s = "c_" + fam.w_label(w) + " = " + c->str();
    }
    out.report.add("star_scalar", wit.empty(), wit);
    out.report.add("unit_star", out.c.count(0) && out.c[0].is_one(), "c_1 = " + (out.c.count(0) ? out.c[0].str() : "?"));
    out.report.add("involution_abs", wit_abs.empty(), wit_abs);
    out.report.add("simple_star_one", wit_s.empty(), wit_s);
    return out;
}

// ---------------------------------------------------------------- structure

StructureResult structure_report(const CoverFamily& fam, const TFamily& T, const CoeffPlusRule& rule) {
    StructureResult out;
    CheckReport& r = out.report;
    out.walls = wall_structure(fam);
    const WallStructure& ws = out.walls;
    r.add("split", ws.split, ws.split ? "W = W_rel x| Omega" : ws.why);
    if (!ws.split) return out;
    try {
        out.normalized = normalize_T(fam, T, rule);
    } catch (const Error& e) {
        r.add("normalize", false, e.what());
        return out;
    }
    r.add("normalize", true, str_of(ws.simple.size()) + " relevant reflections rescaled");
    r.add("waff_infinite", true, "vacuous in a finite model (W_rel has " + str_of(ws.waff.size()) + " elements)");
    bool rank_ok = ws.simple.size() <= 1;
    r.add("supported_rank", rank_ok,
          rank_ok ? "" : str_of(ws.simple.size()) + " relevant reflections; the comparison supports at most one");
    if (!rank_ok) return out;
    std::string witc;
    for (int t : ws.omega)
        for (int s : ws.simple)
            if (fam.w_mul(t, s) != fam.w_mul(s, t)) witc = "t=" + fam.w_label(t) + " moves s=" + fam.w_label(s);
    r.add("omega_centralises_s", witc.empty(), witc);
    if (!witc.empty()) return out;

    const TFamily& Tn = out.normalized.T;
    int no = static_cast<int>(ws.omega.size());
    std::vector<int> opos(fam.w_size(), -1);
    for (int i = 0; i < no; ++i) opos[ws.omega[i]] = i;
    std::vector<std::vector<int>> table(no, std::vector<int>(no));
    std::vector<std::string> labels;
    out.mu_omega.assign(no, std::vector<Scalar>(no));
    for (int i = 0; i < no; ++i) {
        labels.push_back(fam.w_label(ws.omega[i]));
        for (int j = 0; j < no; ++j) {
            table[i][j] = opos[fam.w_mul(ws.omega[i], ws.omega[j])];
            out.mu_omega[i][j] = mu_from_T(fam, Tn, ws.omega[i], ws.omega[j]);
        }
    }

    Rational third(1, 3);
    Arrangement arr(1, {third}, {{{Rational(1)}, Rational(0), Rational(1)}}, {true});
    ReflectionGroupData data(arr, InnerProduct::standard(1), {third});
    OmegaGroup om = OmegaGroup::from_table(table, labels, static_cast<int>(data.rank()));
    Cocycle mu = Cocycle::from_table(out.mu_omega);
    CocycleCheck cc = validate_cocycle(mu, om);
    r.add("mu_omega_cocycle", cc.ok, cc.ok ? "" : cc.reason);
    if (!cc.ok) return out;
    Scalar q = ws.simple.empty() ? Scalar(2) : out.normalized.q.at(ws.simple[0]);
    std::vector<Scalar> qv(data.rank(), q);
    HeckeAlgebra alg(data, om, qv, mu, rule);
    out.target = "rank-1 affine Hecke algebra";
    if (!ws.simple.empty()) out.target += " with q = " + q.str();
    else out.target += " (only the gamma_t part is used)";
    out.target += ", twisted by Omega of order " + str_of(no);

    int x0 = fam.base();
    int W = fam.w_size();
    std::vector<SMat> phi;
    std::vector<ProductAlgElem> img;
    for (int w = 0; w < W; ++w) {
        phi.push_back(phi_op(fam, Tn, x0, w));
        AffineIso u = ws.waff_part[w] == 0 ? alg.identity_iso() : data.s(0);
        img.push_back(alg.basis(opos[ws.omega_part[w]], u));
    }
    std::string wit;
    for (int a = 0; a < W; ++a)
        for (int b = 0; b < W; ++b) {
            auto co = express_in_span(phi, phi[a] * phi[b]);
            if (!co) {
                if (wit.empty()) wit = "product " + fam.w_label(a) + " * " + fam.w_label(b) + " leaves the basis span";
                continue;
            }
            ProductAlgElem lhs = alg.zero();
            for (int c = 0; c < W; ++c) lhs += img[c].scaled((*co)[c]);
            ProductAlgElem rhs = alg.mul(img[a], img[b]);
            ++out.products_checked;
            if (lhs != rhs && wit.empty())
                wit = fam.w_label(a) + " * " + fam.w_label(b) + ": model " + alg.str(lhs) + ", algebra " + alg.str(rhs);
        }
    r.add("transported_products", wit.empty(), wit.empty() ? str_of(out.products_checked) + " basis products agree" : wit);
    return out;
}

}  // namespace hk
