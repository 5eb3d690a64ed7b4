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

#include "verify.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "config.hpp"

namespace hk {

namespace {

using Body = std::function<void(CheckReport&, int cutoff)>;

struct Criterion {
    int id;
    std::string title;
    double budget;
    Body body;
};

std::string scalar_detail(const Scalar& got, const Scalar& want) { return "got " + got.str() + ", expected " + want.str(); }

cfg::Model preset(const std::string& name) { return cfg::load_model(cfg::preset_text(name)); }

struct FiniteSetting {
    std::shared_ptr<FinGroup> H;
    Subgroup K;
    std::unique_ptr<HeckeSetting> s;
};

FiniteSetting setting(const std::string& group, const std::string& sub) {
    FiniteSetting f;
    f.H = cfg::group_from_name(group);
    f.K = named_subgroup(*f.H, sub);
    f.s = std::make_unique<HeckeSetting>(*f.H, f.K, trivial_rep(f.K));
    return f;
}

const std::vector<std::pair<std::string, std::string>>& finite_cases() {
    static const std::vector<std::pair<std::string, std::string>> c{{"gl2:2", "borel"}, {"s4", "s3"}, {"gl2:3", "borel"}};
    return c;
}

// Arrangement of the root hyperplanes of a finite root system, at a generic point.
struct FiniteWeyl {
    RootSystem rs;
    Arrangement arr;
    InnerProduct ip{QMat()};
    std::unique_ptr<ReflectionGroupData> d;
    std::unique_ptr<OmegaGroup> om;
    std::unique_ptr<HeckeAlgebra> alg;
};

std::unique_ptr<FiniteWeyl> finite_weyl(const std::string& type, const std::vector<Scalar>& q_by_class, int cutoff) {
    auto w = std::make_unique<FiniteWeyl>(FiniteWeyl{RootSystem::make(type), {}, InnerProduct(QMat()), nullptr, nullptr, nullptr});
    std::vector<HyperplaneFamily> fams;
    for (size_t i = 0; i < w->rs.num_positive(); ++i) {
        QVec g;
        for (long c : w->rs.roots()[i]) g.push_back(Rational(c));
        fams.push_back({g, Rational(0), Rational(0)});
    }
    Point base;
    for (int i = 0; i < w->rs.rank(); ++i) base.push_back(Rational(1, 7 + 4 * i));
    w->arr = Arrangement(w->rs.rank(), base, fams, std::vector<bool>(fams.size(), true));
    w->ip = w->rs.apartment_ip();
    w->d = std::make_unique<ReflectionGroupData>(w->arr, w->ip, base);
    w->om = std::make_unique<OmegaGroup>(OmegaGroup::trivial(*w->d));
    std::vector<Scalar> q(w->d->rank());
    auto classes = simple_conjugacy_classes(*w->d, *w->om, cutoff);
    for (size_t c = 0; c < classes.size(); ++c)
        for (int s : classes[c]) q[s] = q_by_class.at(std::min(c, q_by_class.size() - 1));
    w->alg = std::make_unique<HeckeAlgebra>(*w->d, *w->om, q, Cocycle::trivial(*w->om));
    return w;
}

std::vector<ProductAlgElem> basis_up_to(const HeckeAlgebra& alg, int maxlen) {
    const ReflectionGroupData& d = alg.group();
    std::set<AffineIso> seen{alg.identity_iso()};
    std::vector<AffineIso> layer{alg.identity_iso()}, all = layer;
    for (int l = 1; l <= maxlen; ++l) {
        std::vector<AffineIso> next;
        for (const auto& w : layer)
            for (size_t s = 0; s < d.rank(); ++s) {
                AffineIso u = w * d.s(s);
                if (alg.length(u) == l && seen.insert(u).second) next.push_back(u);
            }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<ProductAlgElem> out;
    long nt = alg.omega().finite() ? alg.omega().size() : 1;
    for (long t = 0; t < nt; ++t)
        for (const auto& w : all) out.push_back(alg.basis(t, w));
    return out;
}

void check_assoc(CheckReport& r, const std::string& name, const HeckeAlgebra& alg, int maxlen) {
    auto b = basis_up_to(alg, maxlen);
    std::string wit;
    for (size_t i = 0; i < b.size() && wit.empty(); ++i)
        for (size_t j = 0; j < b.size() && wit.empty(); ++j) {
            ProductAlgElem ij = alg.mul(b[i], b[j]);
            for (size_t k = 0; k < b.size() && wit.empty(); ++k)
                if (alg.mul(ij, b[k]) != alg.mul(b[i], alg.mul(b[j], b[k])))
                    wit = alg.str(b[i]) + ", " + alg.str(b[j]) + ", " + alg.str(b[k]);
        }
    size_t n = b.size();
    r.add(name, wit.empty(), wit.empty() ? std::to_string(n * n * n) + " triples" : wit);
}

// T_w computed from every reduced word of length <= maxlen agrees.
void check_braids(CheckReport& r, const std::string& name, const HeckeAlgebra& alg, int maxlen) {
    const ReflectionGroupData& d = alg.group();
    std::map<AffineIso, ProductAlgElem> first;
    std::map<AffineIso, int> words;
    std::string wit;
    std::vector<Word> layer{{}};
    for (int l = 1; l <= maxlen && wit.empty(); ++l) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int s = 0; s < static_cast<int>(d.rank()); ++s) {
                if (!w.empty() && w.back() == s) continue;
                Word u = w;
                u.push_back(s);
                AffineIso g = d.word_iso(u);
                if (alg.length(g) != l) continue;
                next.push_back(u);
                ProductAlgElem t = alg.T(u);
                auto it = first.find(g);
                if (it == first.end()) {
                    first.emplace(g, t);
                } else if (it->second != t && wit.empty()) {
                    std::string ws;
                    for (int x : u) ws += std::to_string(x);
                    wit = "word " + ws;
                }
                ++words[g];
            }
        layer = std::move(next);
    }
    long multi = 0;
    for (const auto& [g, c] : words) multi += c > 1;
    r.add(name, wit.empty(), wit.empty() ? std::to_string(multi) + " elements with several reduced words" : wit);
}

SMat scalar_matrix(const Scalar& s, int n) {
    SMat m = SMat::identity(n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

// ---------------------------------------------------------------- criteria

void crit_q(CheckReport& r, int) {
    const std::vector<long> want{2, 3, 3};
    for (size_t i = 0; i < finite_cases().size(); ++i) {
        auto [g, k] = finite_cases()[i];
        FiniteSetting f = setting(g, k);
        Scalar q = q_parameter(*f.s, decompose_two(*f.s).h);
        r.add("q." + g + "/" + k, q == Scalar(want[i]), scalar_detail(q, Scalar(want[i])));
    }
}

void crit_quadratic(CheckReport& r, int) {
    for (auto [g, k] : finite_cases()) {
        FiniteSetting f = setting(g, k);
        NormalizedGenerator ng = normalized_generator(*f.s, decompose_two(*f.s).h);
        HeckeFunc lhs = f.s->convolve(ng.phi, ng.phi);
        HeckeFunc rhs = ng.phi.scaled(ng.q - Scalar(1)) + f.s->unit().scaled(ng.q);
        r.add("quadratic." + g + "/" + k, lhs == rhs, "q = " + ng.q.str());
    }
}

void crit_constant_terms(CheckReport& r, int) {
    const std::vector<std::pair<std::string, Rational>> cases{{"gl2f2-cover", Rational(1, 2)}, {"gl2f3-cover", Rational(1, 3)}};
    for (const auto& [name, want] : cases) {
        cfg::Model m = preset(name);
        SMat c = constant_term(*m.cover, 0, 1);
        SMat w = scalar_matrix(Scalar(want), c.rows());
        r.add("constant_term." + name, c == w, "got " + c(0, 0).str());
        r.add("relevant." + name, is_relevant(*m.cover, 0, 1));
    }
}

void crit_normalization(CheckReport& r, int) {
    cfg::Model m = preset("gl2f2-cover");
    const CoverFamily& fam = *m.cover;
    WallStructure ws = wall_structure(fam);
    r.add("one_simple_reflection", ws.simple.size() == 1, std::to_string(ws.simple.size()));
    if (ws.simple.size() != 1) return;
    int s = ws.simple[0], x = fam.base();
    Scalar rt = Scalar::sqrt_p(fam.ctx());
    SMat phi = phi_op(fam, *m.T, x, s);
    SMat id = SMat::identity(phi.rows());
    r.add("raw_quadratic", phi * phi == rt.inv() * phi + id, "phi^2 = r^-1 phi + 1");
    NormalizedT nt = normalize_T(fam, *m.T);
    r.add("d", nt.d.at(s) == rt, scalar_detail(nt.d.at(s), rt));
    r.add("q", nt.q.at(s) == Scalar(2), scalar_detail(nt.q.at(s), Scalar(2)));
    SMat nphi = phi_op(fam, nt.T, x, s);
    r.add("normalized_quadratic", nphi * nphi == nphi + Scalar(2) * id, "phi^2 = phi + 2");
}

void crit_structure(CheckReport& r, int) {
    for (std::string name : {"gl2f2-cover", "gl2f3-cover"}) {
        cfg::Model m = preset(name);
        StructureResult sr = structure_report(*m.cover, *m.T);
        r.merge(sr.report, name + ".");
        r.add(name + ".products_checked", sr.products_checked > 0, std::to_string(sr.products_checked));
    }
}

void crit_assoc(CheckReport& r, int cutoff) {
    cfg::Model a1 = preset("affine-a1");
    check_assoc(r, "assoc.affine_a1", *a1.alg, 4);
    auto a2 = finite_weyl("A2", {Scalar(2)}, cutoff);
    check_assoc(r, "assoc.A2", *a2->alg, 3);
    auto b2 = finite_weyl("B2", {Scalar(2), Scalar(3)}, cutoff);
    check_assoc(r, "assoc.B2", *b2->alg, 3);
    r.add("B2.unequal_parameters", b2->alg->q()[0] != b2->alg->q()[1]);
    check_braids(r, "braid.affine_a1", *a1.alg, 6);
    check_braids(r, "braid.A2", *a2->alg, 6);
    check_braids(r, "braid.B2", *b2->alg, 6);
    auto g2 = finite_weyl("G2", {Scalar(2), Scalar(3)}, cutoff);
    check_braids(r, "braid.G2", *g2->alg, 6);
}

void crit_reflections(CheckReport& r, int) {
    cfg::Model m = preset("affine-a1");
    const ReflectionGroupData& d = *m.group;
    const Point zero{Rational(0)}, one{Rational(1)};
    bool walls = d.rank() == 2 && d.walls()[0].form(zero) == 0 && d.walls()[1].form(one) == 0;
    r.add("walls_x0_x1", walls, walls ? d.walls()[0].form.str() + ", " + d.walls()[1].form.str() : "unexpected walls");
    AffineIso plus2{QMat::identity(1), {Rational(2)}}, plus1{QMat::identity(1), {Rational(1)}};
    WalkResult w = reduced_word(d, plus2);
    r.add("reduced_word_x_plus_2", w.in_waff && w.word == Word{1, 0}, "length " + std::to_string(w.word.size()));
    r.add("length_x_plus_2", length(d, plus2) == 2);
    cfg::Model e = preset("affine-a1-extended");
    ExtendedElement x = decompose(*e.group, *e.omega, plus1);
    r.add("decompose_x_plus_1", x.omega == 1 && x.word == Word{0},
          "omega " + e.omega->label(x.omega) + ", word length " + std::to_string(x.word.size()));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 8), gen(0, 1);
    std::string wit;
    for (int it = 0; it < 200 && wit.empty(); ++it) {
        Word u;
        for (int l = len(rng); l > 0; --l) u.push_back(gen(rng));
        AffineIso g = d.word_iso(u);
        int dist = distance(d.arrangement(), d.base(), g(d.base()), true);
        if (length(d, g) != dist || static_cast<int>(reduced_word(d, g).word.size()) != dist)
            wit = "sample " + std::to_string(it) + ": " + g.str();
    }
    r.add("length_is_distance_200", wit.empty(), wit);
}

struct OmegaOnly {
    Arrangement arr{1, {Rational(0)}, {}, {}};
    InnerProduct ip = InnerProduct::standard(1);
    std::unique_ptr<ReflectionGroupData> d;
    std::unique_ptr<OmegaGroup> om;
    std::unique_ptr<HeckeAlgebra> alg;
};

std::unique_ptr<OmegaOnly> cyclic_omega(int n) {
    auto o = std::make_unique<OmegaOnly>();
    o->d = std::make_unique<ReflectionGroupData>(o->arr, o->ip, o->arr.basepoint());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    o->om = std::make_unique<OmegaGroup>(OmegaGroup::from_table(t));
    o->alg = std::make_unique<HeckeAlgebra>(*o->d, *o->om, std::vector<Scalar>{}, Cocycle::trivial(*o->om));
    return o;
}

void crit_cocycle(CheckReport& r, int) {
    cfg::Model m = preset("pauli-cocycle");
    CocycleCheck c = validate_cocycle(*m.mu, *m.omega);
    r.add("pauli_validates", c.ok, c.reason);
    int dmu = twisted_center_dimension(*m.mu, *m.omega);
    int d1 = twisted_center_dimension(Cocycle::trivial(*m.omega), *m.omega);
    r.add("twisted_center_dimension", dmu == 1 && d1 == 4,
          "twisted " + std::to_string(dmu) + ", untwisted " + std::to_string(d1));
    const std::vector<std::tuple<int, int, size_t>> cases{{2, 1, 2}, {4, 4, 4}};
    for (auto [n, cyc, want] : cases) {
        auto o = cyclic_omega(n);
        auto pool = roots_of_unity(Ctx::get(cyc, 0));
        auto autos = enumerate_support_preserving_autos(*o->alg, pool);
        std::string tag = "Z" + std::to_string(n) + "_over_Q" + (cyc > 1 ? "zeta" + std::to_string(cyc) : "");
        r.add("autos." + tag, autos.size() == want, std::to_string(autos.size()) + " characters");
        auto basis = basis_up_to(*o->alg, 0);
        bool mult = true, comp = true;
        for (const auto& chi : autos)
            for (const auto& a : basis)
                for (const auto& b : basis)
                    mult = mult && o->alg->psi(chi, o->alg->mul(a, b)) == o->alg->mul(o->alg->psi(chi, a), o->alg->psi(chi, b));
        for (const auto& x : autos)
            for (const auto& y : autos) {
                OmegaCharacter xy;
                for (size_t t = 0; t < x.values.size(); ++t) xy.values.push_back(x.values[t] * y.values[t]);
                for (const auto& a : basis) comp = comp && o->alg->psi(x, o->alg->psi(y, a)) == o->alg->psi(xy, a);
            }
        r.add("multiplicative." + tag, mult);
        r.add("psi_composition." + tag, comp);
    }
}

void crit_star(CheckReport& r, int) {
    cfg::Model m = preset("affine-a1-extended");
    const HeckeAlgebra& alg = *m.alg;
    alg.check_star_compatible();
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> len(0, 3), coef(-3, 3), simple(0, 1), om(0, 1);
    Scalar z = Scalar::zeta(m.ctx, 1);
    auto random_elem = [&]() {
        ProductAlgElem x = alg.zero();
        for (int k = 0; k < 3; ++k) {
            Word w;
            for (int l = len(rng); l > 0; --l) w.push_back(simple(rng));
            Scalar c = Scalar(m.ctx, coef(rng)) + z * Scalar(coef(rng));
            x += alg.mul(alg.gamma(om(rng)), alg.T(w)).scaled(c);
        }
        return x;
    };
    int bad_inv = 0, bad_anti = 0;
    for (int it = 0; it < 100; ++it) {
        ProductAlgElem a = random_elem(), b = random_elem();
        bad_inv += alg.star(alg.star(a)) != a;
        bad_anti += alg.star(alg.mul(a, b)) != alg.mul(alg.star(b), alg.star(a));
    }
    r.add("star_involutive_100", bad_inv == 0, std::to_string(bad_inv) + " failures");
    r.add("star_antimultiplicative_100", bad_anti == 0, std::to_string(bad_anti) + " failures");
    cfg::Model c = preset("gl2f2-cover");
    NormalizedT nt = normalize_T(*c.cover, *c.T);
    StarResult st = star_check(*c.cover, nt.T);
    r.merge(st.report, "gl2f2.");
    for (const auto& [s, v] : nt.d) r.add("gl2f2.c_s_is_one", st.c.at(s) == Scalar(1), st.c.at(s).str());
}

void crit_depth_zero(CheckReport& r, int) {
    cfg::Model m = preset("a2-levi");
    const RootSystem& rs = *m.roots->rs;
    const DepthZero& dz = *m.roots->dz;
    r.add("one_family", dz.arrangement.families().size() == 1, std::to_string(dz.arrangement.families().size()));
    int k = dz.basis.cols();
    QMat M = QMat::identity(k);
    for (int i = 0; i < k; ++i) M(i, i) = Rational(-3, 2);
    DepthZero other = depthzero_arrangement(rs, m.roots->levi, m.roots->x0, dz.basis * M);
    std::set<HyperplaneFamily> mapped, alt;
    for (const auto& f : dz.arrangement.families())
        mapped.insert(HyperplaneFamily{M.transpose().apply(f.gradient), f.base, f.period}.canonical());
    for (const auto& f : other.arrangement.families()) alt.insert(f.canonical());
    r.add("basis_independent", mapped == alt);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-40, 40);
    int done = 0, bad = 0;
    while (done < 100) {
        Point x{Rational(num(rng), 13)}, y{Rational(num(rng), 6)};
        if (!is_generic(dz.arrangement, x)) continue;
        ++done;
        bad += !vanishing_monotone_check(rs, dz, x, y);
    }
    r.add("vanishing_monotone_100", bad == 0, std::to_string(bad) + " failures");
}

void crit_relations(CheckReport& r, int) {
    for (std::string name : {"gl2f2-cover", "gl2f3-cover"}) {
        cfg::Model m = preset(name);
        r.merge(validate_family(*m.cover), name + ".family.");
        r.merge(relation_suite(*m.cover, *m.T), name + ".");
    }
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c{
        {1, "q parameter of finite Hecke algebras", 5, crit_q},
        {2, "quadratic relation of the normalized generator", 5, crit_quadratic},
        {3, "constant terms of the intertwining operators", 2, crit_constant_terms},
        {4, "normalization chain for GL2(F2)", 5, crit_normalization},
        {5, "algebra structure of the cover presets", 10, crit_structure},
        {6, "associativity and braid relations", 60, crit_assoc},
        {7, "reflection group facts", 10, crit_reflections},
        {8, "2-cocycles and twisting characters", 5, crit_cocycle},
        {9, "star involution", 10, crit_star},
        {10, "depth-zero arrangement", 5, crit_depth_zero},
        {11, "cover relation suite", 30, crit_relations},
    };
    return c;
}

CriterionResult run_one(const Criterion& c, int cutoff) {
    CriterionResult res;
    res.id = c.id;
    res.title = c.title;
    res.budget = c.budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.body(res.report, cutoff);
    } catch (const std::exception& e) {
        res.report.add("exception", false, e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.report.add("time_budget", res.seconds <= res.budget,
                   std::to_string(res.seconds) + " s of " + std::to_string(res.budget) + " s");
    return res;
}

}  // namespace

std::vector<CriterionResult> acceptance_suite(int threads, int cutoff) {
    const auto& cs = criteria();
    std::vector<CriterionResult> out(cs.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < cs.size(); i = next++) out[i] = run_one(cs[i], cutoff);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace hk
