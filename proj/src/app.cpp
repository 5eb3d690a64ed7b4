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

// Configuration loading, subcommands and report emission.  This is the only translation unit that
// includes the JSON library.

#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "config.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace hk {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- JSON readers

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    fail(Errc::Config, where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing key '") + key + "'");
    return j.at(key);
}

long get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer, got " + j.dump());
    return j.get<long>();
}

Rational get_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad(where, "expected a rational as a string or integer, got " + j.dump());
}

Scalar get_scalar(const Ctx* ctx, const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(ctx, Rational(j.get<long>()));
    if (j.is_string()) return Scalar::parse(ctx, j.get<std::string>());
    bad(where, "expected a scalar string, got " + j.dump());
}

const json& get_array(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array, got " + j.dump());
    return j;
}

QVec get_qvec(const json& j, const std::string& where) {
    QVec v;
    for (const auto& x : get_array(j, where)) v.push_back(get_rat(x, where));
    return v;
}

QMat get_qmat(const json& j, const std::string& where) {
    std::vector<QVec> rows;
    for (const auto& r : get_array(j, where)) rows.push_back(get_qvec(r, where));
    return QMat::from_rows(rows);
}

SMat get_smat(const Ctx* ctx, const json& j, const std::string& where) {
    std::vector<SVec> rows;
    for (const auto& r : get_array(j, where)) {
        SVec row;
        for (const auto& x : get_array(r, where)) row.push_back(get_scalar(ctx, x, where));
        rows.push_back(row);
    }
    return SMat::from_rows(rows);
}

AffineIso get_iso(const json& j, const std::string& where) {
    AffineIso g{get_qmat(member(j, "A", where), where), get_qvec(member(j, "b", where), where)};
    require(g.A.rows() == g.A.cols() && static_cast<int>(g.b.size()) == g.A.rows(), Errc::Config,
            where + ": isometry shape mismatch");
    return g;
}

Word get_word(const json& j, const std::string& where) {
    Word w;
    for (const auto& x : get_array(j, where)) w.push_back(static_cast<int>(get_int(x, where)));
    return w;
}

// Options arrive as strings; JSON-looking values are parsed, anything else is taken literally.
json option_json(const std::string& s) {
    json j = json::parse(s, nullptr, false);
    if (j.is_discarded()) return json(s);
    return j;
}

// "1/3,7/3" or ["1/3", "7/3"]
Point get_point_option(const std::string& s, const std::string& where) {
    json j = option_json(s);
    if (j.is_array()) return get_qvec(j, where);
    Point p;
    size_t start = 0;
    while (start <= s.size()) {
        size_t e = s.find(',', start);
        if (e == std::string::npos) e = s.size();
        p.push_back(parse_rational(s.substr(start, e - start)));
        start = e + 1;
    }
    return p;
}

// ---------------------------------------------------------------- JSON writers

json rat_json(const Rational& q) { return rational_str(q); }

json qvec_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

json qmat_json(const QMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(rat_json(m(i, k)));
        a.push_back(r);
    }
    return a;
}

json smat_json(const SMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k).str());
        a.push_back(r);
    }
    return a;
}

json iso_json(const AffineIso& g) { return {{"A", qmat_json(g.A)}, {"b", qvec_json(g.b)}}; }

json form_json(const AffineForm& f) {
    return {{"gradient", qvec_json(f.gradient)}, {"constant", rat_json(f.constant)}, {"text", f.str()}};
}

json arrangement_json(const Arrangement& arr) {
    json fams = json::array();
    for (size_t i = 0; i < arr.families().size(); ++i) {
        const auto& f = arr.families()[i];
        fams.push_back({{"gradient", qvec_json(f.gradient)},
                        {"base", rat_json(f.base)},
                        {"period", rat_json(f.period)},
                        {"relevant", i < arr.relevant().size() ? static_cast<bool>(arr.relevant()[i]) : true}});
    }
    return {{"dim", arr.dim()}, {"basepoint", qvec_json(arr.basepoint())}, {"families", fams}};
}

json report_json(const CheckReport& r) {
    json a = json::array();
    for (const auto& it : r.items) a.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
    return a;
}

json ctx_json(const Ctx* c) {
    return {{"cyclotomic", c->n}, {"p", c->p}, {"notation", "z = zeta_n, r = sqrt(p)"}};
}

// ---------------------------------------------------------------- model construction

int element_of(const FinGroup& g, const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        long e = j.get<long>();
        require(e >= 0 && e < g.order(), Errc::Config, where + ": element index " + std::to_string(e) + " out of range");
        return static_cast<int>(e);
    }
    if (j.is_object() && j.contains("matrix")) {
        std::vector<int> m;
        for (const auto& x : get_array(j.at("matrix"), where)) m.push_back(static_cast<int>(get_int(x, where)));
        require(m.size() == 4, Errc::Config, where + ": a matrix element needs four entries");
        return g.element_of_matrix({m[0], m[1], m[2], m[3]});
    }
    if (j.is_object() && j.contains("perm")) {
        std::vector<int> p;
        for (const auto& x : get_array(j.at("perm"), where)) p.push_back(static_cast<int>(get_int(x, where)));
        return g.element_of_perm(p);
    }
    bad(where, "element must be an index, {\"matrix\": [a,b,c,d]} or {\"perm\": [...]}, got " + j.dump());
}

std::shared_ptr<FinGroup> group_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return cfg::group_from_name(j.get<std::string>());
    if (j.contains("table")) {
        std::vector<std::vector<int>> t;
        for (const auto& r : get_array(j.at("table"), where)) {
            std::vector<int> row;
            for (const auto& x : get_array(r, where)) row.push_back(static_cast<int>(get_int(x, where)));
            t.push_back(row);
        }
        return std::make_shared<FinGroup>(FinGroup::from_table(std::move(t)));
    }
    std::string kind = member(j, "kind", where).get<std::string>();
    if (kind == "product") {
        const auto& f = get_array(member(j, "factors", where), where);
        require(f.size() == 2, Errc::Config, where + ": a product needs two factors");
        return std::make_shared<FinGroup>(FinGroup::product(*group_from_json(f[0], where), *group_from_json(f[1], where)));
    }
    int param = static_cast<int>(get_int(member(j, "param", where), where));
    if (kind == "symmetric") return std::make_shared<FinGroup>(FinGroup::symmetric(param));
    if (kind == "gl2") return std::make_shared<FinGroup>(FinGroup::gl2(param));
    if (kind == "sl2") return std::make_shared<FinGroup>(FinGroup::sl2(param));
    if (kind == "cyclic") return std::make_shared<FinGroup>(FinGroup::cyclic(param));
    if (kind == "dihedral") return std::make_shared<FinGroup>(FinGroup::dihedral(param));
    bad(where, "unknown group kind '" + kind + "'");
}

Subgroup subgroup_from_json(const FinGroup& g, const json& j, const std::string& where) {
    if (j.is_string()) return named_subgroup(g, j.get<std::string>());
    if (j.contains("named")) return named_subgroup(g, j.at("named").get<std::string>());
    if (j.contains("generators")) {
        std::vector<int> gens;
        for (const auto& e : get_array(j.at("generators"), where)) gens.push_back(element_of(g, e, where));
        return subgroup_from_generators(g, gens);
    }
    if (j.contains("elements")) {
        std::vector<int> el;
        for (const auto& e : get_array(j.at("elements"), where)) el.push_back(element_of(g, e, where));
        return subgroup_from_elements(g, el);
    }
    bad(where, "subgroup needs 'named', 'generators' or 'elements'");
}

Rep rep_from_json(const FinGroup& g, const Subgroup& K, const json& j, const Ctx* ctx, const std::string& where) {
    if (j.is_string()) return cfg::rep_from_name(g, K, j.get<std::string>(), ctx);
    std::string kind = member(j, "kind", where).get<std::string>();
    if (kind == "trivial") return trivial_rep(K);
    if (kind == "sign") return sign_rep(g, K);
    if (kind == "torus") {
        const auto& e = get_array(member(j, "exponents", where), where);
        require(e.size() == 2, Errc::Config, where + ": torus exponents need two entries");
        return torus_character(g, K, static_cast<int>(get_int(e[0], where)), static_cast<int>(get_int(e[1], where)), ctx);
    }
    if (kind == "generators") {
        std::vector<int> gens;
        std::vector<SMat> mats;
        for (const auto& e : get_array(member(j, "generators", where), where)) gens.push_back(element_of(g, e, where));
        for (const auto& m : get_array(member(j, "matrices", where), where)) mats.push_back(get_smat(ctx, m, where));
        require(gens.size() == mats.size(), Errc::Config, where + ": one matrix per generator");
        return rep_from_generators(g, K, gens, mats);
    }
    if (kind == "values") {
        // one-dimensional: listed values, extended by closure and then validated
        std::vector<int> gens;
        std::vector<SMat> mats;
        for (const auto& e : get_array(member(j, "values", where), where)) {
            gens.push_back(element_of(g, member(e, "element", where), where));
            mats.push_back(SMat::from_rows({{get_scalar(ctx, member(e, "value", where), where)}}));
        }
        return rep_from_generators(g, K, gens, mats);
    }
    bad(where, "unknown representation kind '" + kind + "'");
}

void load_cover(cfg::Model& m, const json& c, int cyclotomic, int p) {
    const std::string W = "cover";
    CoverSpec spec;
    auto H = group_from_json(member(c, "group", W), W + ".group");
    spec.H = H;
    spec.cyclotomic = cyclotomic;
    spec.p = p;
    const FinGroup& g = *H;
    std::map<std::string, Subgroup> subs;
    for (const auto& [name, sj] : member(c, "subgroups", W).items())
        subs.emplace(name, subgroup_from_json(g, sj, W + ".subgroups." + name));
    auto sub = [&](const json& j, const std::string& where) -> const Subgroup& {
        if (!j.is_string()) bad(where, "expected a subgroup name");
        auto it = subs.find(j.get<std::string>());
        if (it == subs.end()) bad(where, "unknown subgroup '" + j.get<std::string>() + "'");
        return it->second;
    };
    std::map<std::string, Rep> reps;
    for (const auto& [name, rj] : member(c, "reps", W).items()) {
        std::string where = W + ".reps." + name;
        const Subgroup& K = sub(member(rj, "subgroup", where), where);
        Rep r = rep_from_json(g, K, rj, m.ctx, where);
        std::string why;
        require(verify_rep(g, r, &why), Errc::Config, where + ": not a representation (" + why + ")");
        reps.emplace(name, std::move(r));
    }
    auto rep = [&](const json& j, const std::string& where) -> const Rep& {
        if (!j.is_string()) bad(where, "expected a representation name");
        auto it = reps.find(j.get<std::string>());
        if (it == reps.end()) bad(where, "unknown representation '" + j.get<std::string>() + "'");
        return it->second;
    };
    const json& levi = member(c, "levi", W);
    spec.KM = sub(member(levi, "K", W + ".levi"), W + ".levi.K");
    spec.rhoM = rep(member(levi, "rho", W + ".levi"), W + ".levi.rho");
    std::map<std::string, int> index;
    for (const auto& pj : get_array(member(c, "points", W), W + ".points")) {
        std::string where = W + ".points";
        CoverPoint pt;
        pt.name = member(pj, "name", where).get<std::string>();
        where += "." + pt.name;
        require(!index.count(pt.name), Errc::Config, where + ": duplicate point name");
        pt.K = sub(member(pj, "K", where), where + ".K");
        pt.Kplus = sub(member(pj, "K_plus", where), where + ".K_plus");
        pt.rho = rep(member(pj, "rho", where), where + ".rho");
        pt.theta = rep(member(pj, "theta", where), where + ".theta");
        index[pt.name] = static_cast<int>(spec.points.size());
        spec.points.push_back(std::move(pt));
    }
    auto point = [&](const json& j, const std::string& where) {
        if (!j.is_string() || !index.count(j.get<std::string>())) bad(where, "unknown point " + j.dump());
        return index.at(j.get<std::string>());
    };
    spec.base = c.contains("base_point") ? point(c.at("base_point"), W + ".base_point") : 0;
    for (const auto& row : get_array(member(c, "distance", W), W + ".distance")) {
        std::vector<int> r;
        for (const auto& x : get_array(row, W + ".distance")) r.push_back(static_cast<int>(get_int(x, W + ".distance")));
        spec.distance.push_back(r);
    }
    if (c.contains("unipotents"))
        for (const auto& uj : get_array(c.at("unipotents"), W + ".unipotents"))
            spec.unipotents.push_back({sub(member(uj, "U", W + ".unipotents"), W + ".unipotents.U"),
                                       sub(member(uj, "Ubar", W + ".unipotents"), W + ".unipotents.Ubar")});
    if (c.contains("n_heart")) {
        const json& nj = c.at("n_heart");
        std::string where = W + ".n_heart";
        for (const auto& e : get_array(member(nj, "generators", where), where)) spec.nheart_gens.push_back(element_of(g, e, where));
        for (const auto& row : get_array(member(nj, "action", where), where)) {
            std::vector<int> r;
            for (const auto& x : get_array(row, where)) r.push_back(point(x, where + ".action"));
            spec.gen_action.push_back(r);
        }
    }
    m.cover = std::make_unique<CoverFamily>(std::move(spec));
    TFamily T = default_T(*m.cover);
    if (c.contains("T")) {
        const CoverFamily& fam = *m.cover;
        for (const auto& tj : get_array(c.at("T"), W + ".T")) {
            int n = element_of(g, member(tj, "element", W + ".T"), W + ".T");
            int w = fam.w_class(n);
            require(w >= 0, Errc::Config, W + ".T: element " + g.label(n) + " is not in N");
            SMat Tn = get_smat(fam.ctx(), member(tj, "matrix", W + ".T"), W + ".T");
            require(Tn.rows() == fam.dim() && Tn.cols() == fam.dim(), Errc::Config, W + ".T: wrong matrix size");
            // T_lift = T_n rho_M(k)^-1 for n = lift k
            int k = g.mul(g.inv(fam.w_lift(w)), n);
            T.at_lift[w] = Tn * fam.rhoM()(g.inv(k));
        }
    }
    m.T = std::move(T);
}

void build_group(cfg::Model& m, const json* weyl) {
    require(m.arr != nullptr, Errc::Config, "this command needs an 'arrangement' or 'root_datum' section");
    if (m.group) return;
    Point base = m.arr->basepoint();
    if (weyl && weyl->contains("base")) base = get_qvec(weyl->at("base"), "weyl.base");
    m.group = std::make_unique<ReflectionGroupData>(*m.arr, *m.ip, base);
    m.omega = std::make_unique<OmegaGroup>(OmegaGroup::trivial(*m.group));
    if (weyl && weyl->contains("omega")) {
        const json& o = weyl->at("omega");
        if (o.contains("table")) {
            std::vector<std::vector<int>> t;
            for (const auto& r : get_array(o.at("table"), "weyl.omega.table")) {
                std::vector<int> row;
                for (const auto& x : get_array(r, "weyl.omega.table")) row.push_back(static_cast<int>(get_int(x, "weyl.omega")));
                t.push_back(row);
            }
            std::vector<std::string> labels;
            if (o.contains("labels"))
                for (const auto& l : get_array(o.at("labels"), "weyl.omega.labels")) labels.push_back(l.get<std::string>());
            *m.omega = OmegaGroup::from_table(std::move(t), labels, static_cast<int>(m.group->rank()));
        } else {
            std::vector<AffineIso> gens;
            for (const auto& gj : get_array(member(o, "generators", "weyl.omega"), "weyl.omega.generators"))
                gens.push_back(get_iso(gj, "weyl.omega.generators"));
            const json& ord = member(o, "order", "weyl.omega");
            long order = ord.is_string() && ord.get<std::string>() == "infinite" ? -1 : get_int(ord, "weyl.omega.order");
            *m.omega = OmegaGroup::from_isos(*m.group, gens, order);
        }
    }
}

void build_hecke(cfg::Model& m, const json& h) {
    size_t rank = m.group->rank();
    if (h.contains("q")) {
        const json& q = h.at("q");
        if (q.is_array()) {
            for (const auto& x : q) m.q.push_back(get_scalar(m.ctx, x, "hecke.q"));
        } else {
            m.q.assign(rank, get_scalar(m.ctx, q, "hecke.q"));
        }
    }
    require(m.q.size() == rank, Errc::Config,
            "hecke.q: " + std::to_string(m.q.size()) + " parameters for " + std::to_string(rank) + " simple reflections");
    Cocycle mu = Cocycle::trivial(*m.omega);
    if (h.contains("mu")) {
        const json& mj = h.at("mu");
        std::string kind = member(mj, "kind", "hecke.mu").get<std::string>();
        if (kind == "table") {
            std::vector<std::vector<Scalar>> t;
            for (const auto& r : get_array(member(mj, "table", "hecke.mu"), "hecke.mu.table")) {
                std::vector<Scalar> row;
                for (const auto& x : get_array(r, "hecke.mu.table")) row.push_back(get_scalar(m.ctx, x, "hecke.mu.table"));
                t.push_back(row);
            }
            mu = Cocycle::from_table(std::move(t));
        } else if (kind == "bicharacter") {
            mu = Cocycle::bicharacter(get_scalar(m.ctx, member(mj, "value", "hecke.mu"), "hecke.mu.value"));
        } else if (kind != "trivial") {
            bad("hecke.mu", "unknown cocycle kind '" + kind + "'");
        }
    }
    m.mu = std::make_unique<Cocycle>(mu);
    m.alg = std::make_unique<HeckeAlgebra>(*m.group, *m.omega, m.q, *m.mu);
}

// Keeps the parsed document so commands can read sections lazily.
struct Loaded {
    cfg::Model model;
    json doc;
};

Loaded load(const std::string& text) {
    Loaded L;
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Errc::Config, "configuration is not valid JSON");
    if (!j.is_object()) fail(Errc::Config, "configuration must be a JSON object");
    if (!j.contains("schema") || !j.at("schema").is_number_integer() || j.at("schema").get<int>() != 1)
        fail(Errc::Config, "configuration needs \"schema\": 1");
    static const std::set<std::string> known{"schema", "context", "arrangement", "inner_product", "root_datum",
                                             "weyl", "hecke", "finite_group", "cover", "comment"};
    for (const auto& [k, v] : j.items())
        require(known.count(k) > 0, Errc::Config, "unknown top-level key '" + k + "'");
    cfg::Model& m = L.model;
    int cyc = 1, p = 0;
    if (j.contains("context")) {
        const json& c = j.at("context");
        if (c.contains("cyclotomic")) cyc = static_cast<int>(get_int(c.at("cyclotomic"), "context.cyclotomic"));
        if (c.contains("p")) p = static_cast<int>(get_int(c.at("p"), "context.p"));
    }
    m.ctx = Ctx::get(cyc, p);
    if (j.contains("arrangement")) {
        const json& a = j.at("arrangement");
        int dim = static_cast<int>(get_int(member(a, "dim", "arrangement"), "arrangement.dim"));
        Point base = get_qvec(member(a, "basepoint", "arrangement"), "arrangement.basepoint");
        std::vector<HyperplaneFamily> fams;
        std::vector<bool> rel;
        for (const auto& f : get_array(member(a, "families", "arrangement"), "arrangement.families")) {
            fams.push_back({get_qvec(member(f, "gradient", "arrangement.families"), "arrangement.families"),
                            get_rat(member(f, "base", "arrangement.families"), "arrangement.families.base"),
                            get_rat(member(f, "period", "arrangement.families"), "arrangement.families.period")});
            rel.push_back(f.contains("relevant") ? f.at("relevant").get<bool>() : true);
        }
        m.arr = std::make_unique<Arrangement>(dim, base, fams, rel);
        m.ip = std::make_unique<InnerProduct>(j.contains("inner_product")
                                                  ? InnerProduct(get_qmat(j.at("inner_product"), "inner_product"))
                                                  : InnerProduct::standard(dim));
    }
    if (j.contains("root_datum")) {
        const json& r = j.at("root_datum");
        cfg::RootSpec rs;
        rs.type = member(r, "type", "root_datum").get<std::string>();
        rs.rs = std::make_unique<RootSystem>(RootSystem::make(rs.type));
        if (r.contains("levi"))
            for (const auto& i : get_array(r.at("levi"), "root_datum.levi"))
                rs.levi.simple.push_back(static_cast<int>(get_int(i, "root_datum.levi")));
        if (r.contains("x0")) {
            rs.x0 = get_qvec(r.at("x0"), "root_datum.x0");
            rs.dz = std::make_unique<DepthZero>(depthzero_arrangement(*rs.rs, rs.levi, rs.x0));
            if (!m.arr) {
                m.arr = std::make_unique<Arrangement>(rs.dz->arrangement);
                m.ip = std::make_unique<InnerProduct>(rs.dz->ip);
            }
        }
        m.roots = std::move(rs);
    }
    const json* weyl = j.contains("weyl") ? &j.at("weyl") : nullptr;
    if (weyl || j.contains("hecke")) build_group(m, weyl);
    if (j.contains("hecke")) build_hecke(m, j.at("hecke"));
    if (j.contains("finite_group")) {
        const json& f = j.at("finite_group");
        cfg::FinSpec fs;
        fs.group = group_from_json(member(f, "group", "finite_group"), "finite_group.group");
        if (f.contains("subgroup")) fs.sub = subgroup_from_json(*fs.group, f.at("subgroup"), "finite_group.subgroup");
        if (f.contains("rep")) {
            require(fs.sub.has_value(), Errc::Config, "finite_group.rep needs a subgroup");
            fs.rep = rep_from_json(*fs.group, *fs.sub, f.at("rep"), m.ctx, "finite_group.rep");
        }
        m.fin = std::move(fs);
    }
    if (j.contains("cover")) load_cover(m, j.at("cover"), cyc, p);
    L.doc = std::move(j);
    return L;
}

// ---------------------------------------------------------------- Hecke elements

json element_json(const HeckeAlgebra& alg, const ProductAlgElem& x) {
    json a = json::array();
    const OmegaGroup& om = alg.omega();
    for (const auto& [k, c] : x.terms()) {
        json omega = om.finite() ? json(k.omega) : json(om.label(k.omega));
        a.push_back({{"omega", omega}, {"word", alg.word_of(k.w)}, {"coeff", c.str()}});
    }
    return a;
}

ProductAlgElem element_from_json(const HeckeAlgebra& alg, const Ctx* ctx, const json& j, const std::string& where) {
    ProductAlgElem x = alg.zero();
    const OmegaGroup& om = alg.omega();
    auto term = [&](const json& t) {
        long omega = 0;
        if (t.contains("omega")) {
            const json& o = t.at("omega");
            if (o.is_number_integer()) {
                omega = o.get<long>();
            } else if (o.is_string()) {
                std::string s = o.get<std::string>();
                if (s == "1")
                    omega = 0;
                else if (s.rfind("w^", 0) == 0)
                    omega = std::stol(s.substr(2));
                else
                    bad(where, "omega must be a table index or 'w^k', got '" + s + "'");
            } else {
                bad(where, "bad omega " + o.dump());
            }
            require(!om.finite() || (omega >= 0 && omega < om.size()), Errc::Config, where + ": omega out of range");
        }
        Word w = t.contains("word") ? get_word(t.at("word"), where) : Word{};
        for (int s : w)
            require(s >= 0 && s < static_cast<int>(alg.group().rank()), Errc::Config, where + ": no simple reflection " + std::to_string(s));
        Scalar c = t.contains("coeff") ? get_scalar(ctx, t.at("coeff"), where) : Scalar(1);
        x += alg.mul(alg.gamma(omega), alg.T(w)).scaled(c);
    };
    if (j.is_array()) {
        for (const auto& t : j) term(t);
    } else {
        term(j);
    }
    return x;
}

// Basis elements gamma_t T_w with l(w) <= maxlen.
std::vector<ProductAlgElem> small_basis(const HeckeAlgebra& alg, int maxlen) {
    require(alg.omega().finite(), Errc::Domain, "enumeration needs a finite Omega");
    const ReflectionGroupData& d = alg.group();
    std::vector<AffineIso> layer{alg.identity_iso()}, all{alg.identity_iso()};
    std::set<AffineIso> seen{alg.identity_iso()};
    for (int l = 1; l <= maxlen; ++l) {
        std::vector<AffineIso> next;
        for (const auto& w : layer)
            for (size_t s = 0; s < d.rank(); ++s) {
                AffineIso u = w * d.s(s);
                if (seen.insert(u).second && alg.length(u) == l) next.push_back(u);
            }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::vector<ProductAlgElem> out;
    for (long t = 0; t < alg.omega().size(); ++t)
        for (const auto& w : all) out.push_back(alg.basis(t, w));
    return out;
}

// ---------------------------------------------------------------- commands

struct Out {
    json result = json::object();
    CheckReport checks;
    const Ctx* ctx = nullptr;
};

std::string opt(const app::Request& r, const std::string& key, const std::string& dflt = "") {
    auto it = r.options.find(key);
    return it == r.options.end() ? dflt : it->second;
}

bool opt_flag(const app::Request& r, const std::string& key, bool dflt) {
    auto it = r.options.find(key);
    if (it == r.options.end()) return dflt;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v.empty()) return true;
    if (v == "false" || v == "0") return false;
    fail(Errc::Config, "option --" + key + " expects true or false");
}

long opt_int(const app::Request& r, const std::string& key, long dflt) {
    auto it = r.options.find(key);
    if (it == r.options.end()) return dflt;
    try {
        size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    fail(Errc::Config, "option --" + key + " expects an integer");
}

void cmd_arr(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    require(m.arr != nullptr, Errc::Config, "arr commands need an 'arrangement' or 'root_datum' section");
    const Arrangement& arr = *m.arr;
    bool rel = opt_flag(req, "relevant", false);
    auto point = [&](const std::string& key) {
        Point p = req.options.count(key) ? get_point_option(opt(req, key), "--" + key) : arr.basepoint();
        require(static_cast<int>(p.size()) == arr.dim(), Errc::Config, "--" + key + " has the wrong dimension");
        return p;
    };
    if (req.action == "info") {
        out.result["arrangement"] = arrangement_json(arr);
        out.result["basepoint_generic"] = is_generic(arr, arr.basepoint(), false);
        out.result["basepoint_generic_relevant"] = is_generic(arr, arr.basepoint(), true);
        json canon = json::array();
        for (const auto& f : arr.families()) {
            HyperplaneFamily c = f.canonical();
            canon.push_back({{"gradient", qvec_json(c.gradient)}, {"base", rat_json(c.base)}, {"period", rat_json(c.period)}});
        }
        out.result["canonical_families"] = canon;
    } else if (req.action == "distance") {
        Point x = point("x"), y = point("y");
        out.result["x"] = point_str(x);
        out.result["y"] = point_str(y);
        out.result["relevant_only"] = rel;
        out.result["d"] = distance(arr, x, y, rel);
        json sep = json::array();
        for (const auto& f : separating(arr, x, y, rel)) sep.push_back(f.str());
        out.result["separating"] = sep;
        out.checks.add("symmetric", distance(arr, y, x, rel) == distance(arr, x, y, rel));
        if (req.options.count("z")) {
            Point z = point("z");
            TriangleResult t = triangle_mode(arr, x, y, z, rel);
            out.result["triangle_additive"] = t.additive;
            if (t.witness) out.result["triangle_witness"] = t.witness->str();
            out.checks.add("triangle_inequality",
                           distance(arr, x, z, rel) <= distance(arr, x, y, rel) + distance(arr, y, z, rel));
        }
    } else if (req.action == "generic") {
        Point x = point("x");
        out.result["x"] = point_str(x);
        out.result["generic"] = is_generic(arr, x, rel);
        out.result["relevant_only"] = rel;
    } else {
        fail(Errc::Config, "unknown action 'arr " + req.action + "' (info, distance, generic)");
    }
}

void cmd_roots(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    if (req.action == "build") {
        require(m.roots.has_value(), Errc::Config, "roots build needs a 'root_datum' section");
        const RootSystem& rs = *m.roots->rs;
        out.result["type"] = rs.label();
        out.result["rank"] = rs.rank();
        out.result["cartan"] = qmat_json(rs.cartan());
        out.result["num_roots"] = rs.roots().size();
        out.result["num_positive"] = rs.num_positive();
        json pos = json::array();
        for (size_t i = 0; i < rs.num_positive(); ++i) pos.push_back(rs.roots()[i]);
        out.result["positive_roots"] = pos;
        out.checks.add("cartan_matches_type", rs.cartan() == expected_cartan(rs.family(), rs.rank()));
        out.checks.add("root_count", rs.roots().size() == expected_root_count(rs.family(), rs.rank()),
                       std::to_string(rs.roots().size()) + " roots");
        if (m.roots->dz) {
            const DepthZero& dz = *m.roots->dz;
            out.result["levi"] = m.roots->levi.simple;
            out.result["x0"] = qvec_json(m.roots->x0);
            out.result["depth_zero_arrangement"] = arrangement_json(dz.arrangement);
            out.result["direction_basis"] = qmat_json(dz.basis);
            out.result["inner_product"] = qmat_json(dz.ip.gram());
            // the same arrangement from another basis of V_M: x = M x' turns gradients g into M^T g
            int k = dz.basis.cols();
            QMat M = QMat::identity(k);
            for (int i = 0; i < k; ++i) {
                M(i, i) = Rational(-2);
                if (i + 1 < k) M(i, i + 1) = Rational(1);
            }
            DepthZero other = depthzero_arrangement(rs, m.roots->levi, m.roots->x0, dz.basis * M);
            std::set<HyperplaneFamily> mapped, alt;
            for (const auto& f : dz.arrangement.families())
                mapped.insert(HyperplaneFamily{M.transpose().apply(f.gradient), f.base, f.period}.canonical());
            for (const auto& f : other.arrangement.families()) alt.insert(f.canonical());
            out.checks.add("basis_independent", mapped == alt,
                           std::to_string(dz.arrangement.families().size()) + " families");
        }
    } else if (req.action == "quotient") {
        require(m.arr != nullptr, Errc::Config, "roots quotient needs an 'arrangement' or 'root_datum' section");
        QuotientSpace qs = quotient_space(*m.arr, *m.ip);
        out.result["dim"] = qs.dim();
        out.result["projection"] = qmat_json(qs.projection);
        out.result["arrangement"] = arrangement_json(qs.arrangement);
        out.result["inner_product"] = qmat_json(qs.ip.gram());
        out.result["family_map"] = qs.family_map;
        if (qs.arrangement.families().empty()) {
            out.checks.add("affine_root_conditions", true, "no relevant hyperplanes");
        } else {
            ReflectionGroupData g(qs.arrangement, qs.ip, qs.arrangement.basepoint());
            out.checks.merge(verify_affine_root_conditions(qs.arrangement, g));
            out.result["rank"] = g.rank();
        }
    } else {
        fail(Errc::Config, "unknown action 'roots " + req.action + "' (build, quotient)");
    }
}

AffineIso iso_option(const app::Request& req, const ReflectionGroupData& d) {
    if (req.options.count("word")) {
        Word w = get_word(option_json(opt(req, "word")), "--word");
        for (int s : w)
            require(s >= 0 && s < static_cast<int>(d.rank()), Errc::Config, "--word: no simple reflection " + std::to_string(s));
        return d.word_iso(w);
    }
    require(req.options.count("g") > 0, Errc::Config, "give the element with --g '{\"A\":[[..]],\"b\":[..]}' or --word");
    AffineIso g = get_iso(option_json(opt(req, "g")), "--g");
    require(g.dim() == d.dim(), Errc::Config, "--g has the wrong dimension");
    return g;
}

void cmd_weyl(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    build_group(m, L.doc.contains("weyl") ? &L.doc.at("weyl") : nullptr);
    const ReflectionGroupData& d = *m.group;
    if (req.action == "walls") {
        json walls = json::array();
        for (size_t i = 0; i < d.rank(); ++i)
            walls.push_back({{"index", i}, {"form", form_json(d.walls()[i].form)}, {"reflection", iso_json(d.s(i))}});
        out.result["base"] = qvec_json(d.base());
        out.result["walls"] = walls;
        out.result["rank"] = d.rank();
        if (d.rank() > 0) out.checks.merge(verify_affine_root_conditions(d.arrangement(), d));
    } else if (req.action == "word") {
        AffineIso g = iso_option(req, d);
        WalkResult w = reduced_word(d, g);
        out.result["g"] = iso_json(g);
        out.result["in_waff"] = w.in_waff;
        out.result["word"] = w.word;
        out.result["residual"] = iso_json(w.residual);
        out.result["length"] = length(d, g);
        out.checks.add("word_reproduces_g", d.word_iso(w.word) * w.residual == g);
        int dist = distance(d.arrangement(), d.base(), g.inverse()(d.base()), true);
        out.checks.add("length_is_distance", static_cast<int>(w.word.size()) == dist,
                       "distance(x0, g^-1 x0) = " + std::to_string(dist));
    } else if (req.action == "decompose") {
        AffineIso g = iso_option(req, d);
        ExtendedElement e = decompose(d, *m.omega, g);
        out.result["g"] = iso_json(g);
        out.result["omega"] = m.omega->finite() ? json(e.omega) : json(m.omega->label(e.omega));
        out.result["omega_label"] = m.omega->label(e.omega);
        out.result["word"] = e.word;
        out.checks.add("recomposes", extended_iso(d, *m.omega, e) == g);
    } else if (req.action == "orders") {
        json orders = json::array();
        for (size_t i = 0; i < d.rank(); ++i) {
            json row = json::array();
            for (size_t k = 0; k < d.rank(); ++k) {
                if (i == k) {
                    row.push_back(1);
                    continue;
                }
                auto o = braid_order(d, static_cast<int>(i), static_cast<int>(k), req.cutoff);
                row.push_back(o ? json(*o) : json("infinite"));
            }
            orders.push_back(row);
        }
        out.result["orders"] = orders;
        out.result["cutoff"] = req.cutoff;
        out.result["conjugacy_classes"] = simple_conjugacy_classes(d, *m.omega, req.cutoff);
    } else {
        fail(Errc::Config, "unknown action 'weyl " + req.action + "' (walls, word, decompose, orders)");
    }
}

void cmd_hecke(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    require(m.alg != nullptr, Errc::Config, "hecke commands need a 'hecke' section");
    const HeckeAlgebra& alg = *m.alg;
    if (req.action == "mul") {
        require(req.options.count("a") && req.options.count("b"), Errc::Config, "hecke mul needs --a and --b");
        ProductAlgElem a = element_from_json(alg, m.ctx, option_json(opt(req, "a")), "--a");
        ProductAlgElem b = element_from_json(alg, m.ctx, option_json(opt(req, "b")), "--b");
        out.result["a"] = element_json(alg, a);
        out.result["b"] = element_json(alg, b);
        out.result["product"] = element_json(alg, alg.mul(a, b));
    } else if (req.action == "assoc" || req.action == "check-assoc") {
        int maxlen = static_cast<int>(opt_int(req, "maxlen", 3));
        require(maxlen >= 0 && maxlen <= 8, Errc::Config, "--maxlen must be between 0 and 8");
        auto basis = small_basis(alg, maxlen);
        size_t n = basis.size();
        std::atomic<long> bad_count{0};
        std::atomic<size_t> first_bad{n * n * n};
        auto work = [&](size_t from, size_t step) {
            for (size_t i = from; i < n; i += step)
                for (size_t j = 0; j < n; ++j) {
                    ProductAlgElem ab = alg.mul(basis[i], basis[j]);
                    for (size_t k = 0; k < n; ++k)
                        if (alg.mul(ab, basis[k]) != alg.mul(basis[i], alg.mul(basis[j], basis[k]))) {
                            ++bad_count;
                            size_t idx = (i * n + j) * n + k, cur = first_bad.load();
                            while (idx < cur && !first_bad.compare_exchange_weak(cur, idx)) {
                            }
                        }
                }
        };
        int th = std::max(1, req.threads);
        std::vector<std::thread> pool;
        for (int t = 1; t < th; ++t) pool.emplace_back(work, t, th);
        work(0, th);
        for (auto& t : pool) t.join();
        out.result["maxlen"] = maxlen;
        out.result["basis_elements"] = n;
        out.result["triples"] = n * n * n;
        std::string detail = std::to_string(n * n * n) + " triples";
        if (bad_count > 0) {
            size_t f = first_bad.load();
            detail = "(a b) c != a (b c) at basis triple (" + std::to_string(f / (n * n)) + "," +
                     std::to_string((f / n) % n) + "," + std::to_string(f % n) + ")";
        }
        out.checks.add("associative", bad_count == 0, detail);
    } else if (req.action == "autos") {
        auto pool = roots_of_unity(m.ctx);
        bool star = opt_flag(req, "star", false);
        auto autos = enumerate_support_preserving_autos(alg, pool, star);
        json list = json::array();
        for (const auto& chi : autos) {
            json vals = json::array();
            for (const auto& v : chi.values) vals.push_back(v.str());
            list.push_back(vals);
        }
        out.result["pool_size"] = pool.size();
        out.result["count"] = autos.size();
        out.result["characters"] = list;
        // each map is multiplicative on products of small basis elements
        auto basis = small_basis(alg, 2);
        std::string wit;
        for (size_t c = 0; c < autos.size() && wit.empty(); ++c)
            for (size_t i = 0; i < basis.size() && wit.empty(); ++i)
                for (size_t k = 0; k < basis.size() && wit.empty(); ++k)
                    if (alg.psi(autos[c], alg.mul(basis[i], basis[k])) !=
                        alg.mul(alg.psi(autos[c], basis[i]), alg.psi(autos[c], basis[k])))
                        wit = "character " + std::to_string(c) + " on basis pair (" + std::to_string(i) + "," +
                              std::to_string(k) + ")";
        out.checks.add("multiplicative", wit.empty(), wit);
        std::string wit2;
        for (size_t a = 0; a < autos.size() && wit2.empty(); ++a)
            for (size_t b = 0; b < autos.size() && wit2.empty(); ++b) {
                OmegaCharacter prod;
                for (size_t t = 0; t < autos[a].values.size(); ++t) prod.values.push_back(autos[a].values[t] * autos[b].values[t]);
                for (const auto& x : basis)
                    if (alg.psi(autos[a], alg.psi(autos[b], x)) != alg.psi(prod, x)) wit2 = "pair " + std::to_string(a) + "," + std::to_string(b);
            }
        out.checks.add("composition_is_product", wit2.empty(), wit2);
        if (opt_flag(req, "scan", false)) {
            RescalingScan s = scan_support_preserving_rescalings(alg, pool);
            out.result["scan"] = {{"tried", s.tried}, {"automorphisms", s.automorphisms}};
            out.checks.add("scan_all_psi_chi", s.all_are_psi_chi);
        }
    } else if (req.action == "star") {
        alg.check_star_compatible();
        int pairs = static_cast<int>(opt_int(req, "pairs", 100));
        std::mt19937 rng(static_cast<unsigned>(opt_int(req, "seed", 1)));
        std::uniform_int_distribution<int> len(0, 3), coef(-3, 3);
        std::uniform_int_distribution<long> om(0, alg.omega().finite() ? alg.omega().size() - 1 : 2);
        std::uniform_int_distribution<int> simple(0, std::max(0, static_cast<int>(alg.group().rank()) - 1));
        Scalar z = m.ctx->n > 1 ? Scalar::zeta(m.ctx, 1) : Scalar(0);
        auto random_elem = [&]() {
            ProductAlgElem x = alg.zero();
            for (int k = 0; k < 3; ++k) {
                Word w;
                if (alg.group().rank() > 0)
                    for (int l = len(rng); l > 0; --l) w.push_back(simple(rng));
                Scalar c = Scalar(m.ctx, coef(rng)) + z * Scalar(coef(rng));
                x += alg.mul(alg.gamma(om(rng)), alg.T(w)).scaled(c);
            }
            return x;
        };
        std::string w1, w2;
        for (int it = 0; it < pairs; ++it) {
            ProductAlgElem a = random_elem(), b = random_elem();
            if (w1.empty() && alg.star(alg.star(a)) != a) w1 = "pair " + std::to_string(it);
            if (w2.empty() && alg.star(alg.mul(a, b)) != alg.mul(alg.star(b), alg.star(a))) w2 = "pair " + std::to_string(it);
        }
        out.result["pairs"] = pairs;
        out.checks.add("star_involutive", w1.empty(), w1);
        out.checks.add("star_antimultiplicative", w2.empty(), w2);
    } else if (req.action == "cocycle") {
        require(alg.omega().finite(), Errc::Config, "hecke cocycle needs a finite Omega");
        CocycleCheck c = validate_cocycle(alg.mu(), alg.omega());
        out.checks.add("cocycle_identity", c.ok,
                       c.ok ? "" : c.reason + " at (" + std::to_string(c.witness[0]) + "," + std::to_string(c.witness[1]) + "," +
                                       std::to_string(c.witness[2]) + ")");
        if (c.ok) {
            int dmu = twisted_center_dimension(alg.mu(), alg.omega());
            int d1 = twisted_center_dimension(Cocycle::trivial(alg.omega()), alg.omega());
            out.result["twisted_center_dimension"] = dmu;
            out.result["untwisted_center_dimension"] = d1;
            out.result["coboundary"] = dmu == d1 ? "undecided by the center dimension" : "not a coboundary";
        }
    } else {
        fail(Errc::Config, "unknown action 'hecke " + req.action + "' (mul, assoc, autos, star, cocycle)");
    }
}

void cmd_fingrp(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    cfg::FinSpec fs;
    if (m.fin) fs = *m.fin;
    if (req.options.count("group")) {
        fs.group = cfg::group_from_name(opt(req, "group"));
        fs.sub.reset();
        fs.rep.reset();
    }
    require(fs.group != nullptr, Errc::Config, "fingrp needs --group or a 'finite_group' section");
    const FinGroup& g = *fs.group;
    if (req.options.count("sub")) {
        fs.sub = named_subgroup(g, opt(req, "sub"));
        fs.rep.reset();
    }
    require(fs.sub.has_value(), Errc::Config, "fingrp needs --sub or finite_group.subgroup");
    if (req.options.count("rep")) fs.rep = cfg::rep_from_name(g, *fs.sub, opt(req, "rep"), m.ctx);
    if (!fs.rep) fs.rep = trivial_rep(*fs.sub);
    std::string why;
    require(verify_rep(g, *fs.rep, &why), Errc::Config, "representation is not a homomorphism: " + why);
    HeckeSetting s(g, *fs.sub, *fs.rep);
    out.result["group"] = g.name();
    out.result["group_order"] = g.order();
    out.result["subgroup_order"] = fs.sub->order();
    out.result["rep_dim"] = s.dim();
    if (req.action == "cosets") {
        json dc = json::array();
        for (int r : s.double_cosets())
            dc.push_back({{"representative", g.label(r)}, {"size", double_coset(g, *fs.sub, *fs.sub, r).order()}});
        out.result["index"] = s.index();
        out.result["double_cosets"] = dc;
        long total = 0;
        for (int r : s.double_cosets()) total += double_coset(g, *fs.sub, *fs.sub, r).order();
        out.checks.add("double_cosets_partition", total == g.order(), std::to_string(total) + " elements");
    } else if (req.action == "induce") {
        auto basis = s.hecke_basis();
        json per = json::array();
        std::map<int, int> count;
        for (const auto& [r, f] : basis) ++count[r];
        for (const auto& [r, c] : count) per.push_back({{"representative", g.label(r)}, {"dimension", c}});
        out.result["induced_dim"] = s.index() * s.dim();
        out.result["hecke_dim"] = basis.size();
        out.result["support"] = per;
        std::string bad_f;
        for (const auto& [r, f] : basis)
            if (bad_f.empty() && !s.check(f).empty()) bad_f = g.label(r) + ": " + s.check(f);
        out.checks.add("basis_functions_bi_equivariant", bad_f.empty(), bad_f);
        std::string bad_t;
        for (const auto& [r, f] : basis)
            for (int h = 0; h < g.order() && bad_t.empty(); ++h)
                if (s.transport(f) * s.induced(h) != s.induced(h) * s.transport(f)) bad_t = g.label(r);
        out.checks.add("transport_intertwines", bad_t.empty(), bad_t);
    } else if (req.action == "q" || req.action == "generator") {
        TwoDecomposition dec = decompose_two(s);
        out.result["dims"] = {dec.dim1, dec.dim2};
        out.result["eigenvalues"] = {dec.lambda1.str(), dec.lambda2.str()};
        if (req.action == "q") {
            Scalar q = q_parameter(s, dec.h);
            out.result["q"] = q.str();
            out.ctx = q.ctx();
        } else {
            NormalizedGenerator ng = normalized_generator(s, dec.h);
            out.result["q"] = ng.q.str();
            out.result["d"] = ng.d.str();
            out.result["a"] = ng.a.str();
            out.result["b"] = ng.b.str();
            out.result["support"] = g.label(dec.h);
            HeckeFunc lhs = s.convolve(ng.phi, ng.phi);
            HeckeFunc rhs = ng.phi.scaled(ng.q - Scalar(1)) + s.unit().scaled(ng.q);
            out.checks.add("quadratic_relation", lhs == rhs, "phi * phi = (q - 1) phi + q");
            out.ctx = ng.q.ctx();
        }
    } else {
        fail(Errc::Config, "unknown action 'fingrp " + req.action + "' (cosets, induce, q, generator)");
    }
}

json scalar_map_json(const std::map<int, Scalar>& m, const CoverFamily& fam) {
    json o = json::object();
    for (const auto& [w, s] : m) o[fam.w_label(w)] = s.str();
    return o;
}

void cmd_cover(const app::Request& req, Loaded& L, Out& out) {
    cfg::Model& m = L.model;
    require(m.cover != nullptr, Errc::Config, "cover commands need a 'cover' section");
    const CoverFamily& fam = *m.cover;
    const TFamily& T = *m.T;
    out.ctx = fam.ctx();
    json pts = json::array();
    for (int x = 0; x < fam.size(); ++x) pts.push_back(fam.point(x).name);
    out.result["points"] = pts;
    out.result["p"] = fam.p();
    json wl = json::array();
    for (int w = 0; w < fam.w_size(); ++w) wl.push_back(fam.w_label(w));
    out.result["W"] = wl;
    if (req.action == "validate") {
        out.checks.merge(validate_family(fam));
        out.checks.merge(validate_T(fam, T));
        json rel = json::array();
        for (int x = 0; x < fam.size(); ++x)
            for (int y = x + 1; y < fam.size(); ++y)
                if (fam.distance(x, y) == 1)
                    rel.push_back({{"pair", {fam.point(x).name, fam.point(y).name}},
                                   {"relevant", is_relevant(fam, x, y)},
                                   {"constant_term", smat_json(constant_term(fam, x, y))}});
        out.result["adjacent_pairs"] = rel;
    } else if (req.action == "relations") {
        out.checks.merge(relation_suite(fam, T));
    } else if (req.action == "report") {
        StructureResult sr = structure_report(fam, T);
        out.checks.merge(sr.report, "structure.");
        json simple = json::array(), omega = json::array();
        for (int s : sr.walls.simple) simple.push_back(fam.w_label(s));
        for (int t : sr.walls.omega) omega.push_back(fam.w_label(t));
        out.result["simple"] = simple;
        out.result["omega"] = omega;
        out.result["d"] = scalar_map_json(sr.normalized.d, fam);
        out.result["q"] = scalar_map_json(sr.normalized.q, fam);
        out.result["a"] = scalar_map_json(sr.normalized.a, fam);
        out.result["b"] = scalar_map_json(sr.normalized.b, fam);
        json mu = json::array();
        for (const auto& row : sr.mu_omega) {
            json r = json::array();
            for (const auto& v : row) r.push_back(v.str());
            mu.push_back(r);
        }
        out.result["mu_omega"] = mu;
        out.result["target"] = sr.target;
        out.result["products_checked"] = sr.products_checked;
        if (sr.report.find("normalize") && sr.report.find("normalize")->passed) {
            StarResult st = star_check(fam, sr.normalized.T);
            out.checks.merge(st.report, "star.");
            out.result["star_constants"] = scalar_map_json(st.c, fam);
        }
    } else {
        fail(Errc::Config, "unknown action 'cover " + req.action + "' (validate, relations, report)");
    }
}

void cmd_verify(const app::Request& req, Out& out) {
    require(req.action == "all", Errc::Config, "unknown action 'verify " + req.action + "' (all)");
    auto results = acceptance_suite(req.threads, req.cutoff);
    json crit = json::array();
    for (const auto& r : results) {
        crit.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"checks", report_json(r.report)},
                        {"budget_seconds", r.budget}});
        out.checks.add("criterion_" + std::to_string(r.id), r.passed(), r.title);
    }
    out.result["criteria"] = crit;
}

}  // namespace

// ---------------------------------------------------------------- public API of this file

namespace cfg {

std::shared_ptr<FinGroup> group_from_name(const std::string& name) {
    auto num = [&](const std::string& s) {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        fail(Errc::Config, "bad group name '" + name + "'");
    };
    size_t colon = name.find(':');
    if (colon != std::string::npos) {
        std::string kind = name.substr(0, colon);
        int param = num(name.substr(colon + 1));
        if (kind == "gl2") return std::make_shared<FinGroup>(FinGroup::gl2(param));
        if (kind == "sl2") return std::make_shared<FinGroup>(FinGroup::sl2(param));
        if (kind == "symmetric") return std::make_shared<FinGroup>(FinGroup::symmetric(param));
        if (kind == "dihedral") return std::make_shared<FinGroup>(FinGroup::dihedral(param));
        if (kind == "cyclic") return std::make_shared<FinGroup>(FinGroup::cyclic(param));
        fail(Errc::Config, "unknown group kind '" + kind + "'");
    }
    if (name.size() >= 2 && name[0] == 's') return std::make_shared<FinGroup>(FinGroup::symmetric(num(name.substr(1))));
    if (name.size() >= 2 && name[0] == 'd') return std::make_shared<FinGroup>(FinGroup::dihedral(num(name.substr(1))));
    if (name.size() >= 2 && name[0] == 'c') return std::make_shared<FinGroup>(FinGroup::cyclic(num(name.substr(1))));
    if (name.rfind("gl2f", 0) == 0) return std::make_shared<FinGroup>(FinGroup::gl2(num(name.substr(4))));
    if (name.rfind("sl2f", 0) == 0) return std::make_shared<FinGroup>(FinGroup::sl2(num(name.substr(4))));
    fail(Errc::Config, "unknown group '" + name + "'");
}

Rep rep_from_name(const FinGroup& g, const Subgroup& K, const std::string& name, const Ctx* ctx) {
    if (name == "trivial") return trivial_rep(K);
    if (name == "sign") return sign_rep(g, K);
    if (name.rfind("torus:", 0) == 0) {
        std::string rest = name.substr(6);
        size_t comma = rest.find(',');
        require(comma != std::string::npos, Errc::Config, "torus representation needs 'torus:e1,e2'");
        return torus_character(g, K, std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)), ctx);
    }
    fail(Errc::Config, "unknown representation '" + name + "' (trivial, sign, torus:e1,e2)");
}

Model load_model(const std::string& json_text) { return load(json_text).model; }

}  // namespace cfg

namespace app {

Response run(const Request& req) {
    Response resp;
    json doc;
    doc["schema"] = 1;
    doc["command"] = req.command;
    doc["action"] = req.action;
    if (!req.preset.empty()) doc["preset"] = req.preset;
    Out out;
    try {
        static const std::set<std::string> commands{"arr", "roots", "weyl", "hecke", "fingrp", "cover", "verify"};
        require(commands.count(req.command) > 0, Errc::Config, "unknown subcommand '" + req.command + "'");
        require(req.threads >= 1, Errc::Config, "--threads must be at least 1");
        require(req.cutoff >= 2, Errc::Config, "--cutoff must be at least 2");
        if (req.command == "verify") {
            out.ctx = Ctx::base();
            cmd_verify(req, out);
        } else {
            std::string text = req.config_text;
            if (!req.preset.empty()) {
                require(text.empty(), Errc::Config, "give either --config or --preset, not both");
                text = cfg::preset_text(req.preset);
            }
            if (text.empty()) text = R"({"schema": 1})";
            Loaded L = load(text);
            out.ctx = L.model.ctx;
            if (req.command == "arr") cmd_arr(req, L, out);
            if (req.command == "roots") cmd_roots(req, L, out);
            if (req.command == "weyl") cmd_weyl(req, L, out);
            if (req.command == "hecke") cmd_hecke(req, L, out);
            if (req.command == "fingrp") cmd_fingrp(req, L, out);
            if (req.command == "cover") cmd_cover(req, L, out);
        }
        doc["context"] = ctx_json(out.ctx);
        doc["result"] = out.result;
        doc["checks"] = report_json(out.checks);
        doc["status"] = out.checks.ok() ? "pass" : "fail";
        resp.exit_code = out.checks.ok() ? kPass : kCheckFailed;
    } catch (const Error& e) {
        bool config = e.code() == Errc::Config || e.code() == Errc::Context || e.code() == Errc::Dimension;
        resp.exit_code = config ? kConfigError : kCheckFailed;
        resp.error = e.what();
        doc["status"] = config ? "config_error" : "error";
        doc["error"] = {{"code", static_cast<int>(e.code())}, {"message", e.what()}};
    } catch (const json::exception& e) {
        resp.exit_code = kConfigError;
        resp.error = std::string("configuration schema: ") + e.what();
        doc["status"] = "config_error";
        doc["error"] = {{"code", static_cast<int>(Errc::Config)}, {"message", resp.error}};
    } catch (const std::exception& e) {
        resp.exit_code = kCheckFailed;
        resp.error = std::string("internal error: ") + e.what();
        doc["status"] = "error";
        doc["error"] = {{"code", 0}, {"message", resp.error}};
    }
    resp.report = doc.dump(2) + "\n";
    return resp;
}

}  // namespace app

}  // namespace hk
