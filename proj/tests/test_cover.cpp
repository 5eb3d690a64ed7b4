#include <memory>

#include "cover_model.hpp"
#include "hecke_algebra.hpp"
#include "test_util.hpp"

using namespace hk;

namespace {

SMat one_by_one(const Scalar& s) { return SMat::from_rows({{s}}); }

// GL2(F_q): x with the upper Borel, y with the lower one, swapped by w = [[0,1],[1,0]].
CoverSpec gl2_spec(int q, int cyclotomic = 1) {
    auto H = std::make_shared<FinGroup>(FinGroup::gl2(q));
    CoverSpec s;
    s.H = H;
    s.cyclotomic = cyclotomic;
    Subgroup B = named_subgroup(*H, "borel"), Bl = named_subgroup(*H, "borel_lower");
    Subgroup U = named_subgroup(*H, "unipotent"), Ul = named_subgroup(*H, "unipotent_lower");
    s.points.push_back({"x", B, U, trivial_rep(B), trivial_rep(U)});
    s.points.push_back({"y", Bl, Ul, trivial_rep(Bl), trivial_rep(Ul)});
    s.KM = named_subgroup(*H, "torus");
    s.rhoM = trivial_rep(s.KM);
    s.unipotents = {{U, Ul}, {Ul, U}};
    s.distance = {{0, 1}, {1, 0}};
    int w = H->element_of_matrix({0, 1, 1, 0});
    s.nheart_gens = {w};
    s.gen_action = {{1, 0}};
    for (int t : s.KM.elems) {
        if (t == 0) continue;
        s.nheart_gens.push_back(t);
        s.gen_action.push_back({0, 1});
    }
    return s;
}

// The cocycle oracle: mu(a, b) = rho_M(k)^-1 where lift(a) lift(b) = lift(ab) k.
Scalar mu_oracle(const CoverFamily& fam, int a, int b) {
    const FinGroup& H = fam.H();
    int prod = H.mul(fam.w_lift(a), fam.w_lift(b));
    int k = H.mul(H.inv(fam.w_lift(fam.w_mul(a, b))), prod);
    return fam.rhoM()(k)(0, 0).inv();
}

CoverSpec d4_spec() {
    auto H = std::make_shared<FinGroup>(FinGroup::dihedral(4));
    CoverSpec s;
    s.H = H;
    Subgroup Z = subgroup_from_generators(*H, {2});
    Rep rho = rep_from_generators(*H, Z, {2}, {one_by_one(Scalar(-1))});
    Subgroup one = subgroup_from_elements(*H, {0});
    s.points.push_back({"x", Z, one, rho, trivial_rep(one)});
    s.KM = Z;
    s.rhoM = rho;
    s.distance = {{0}};
    s.nheart_gens = {1, 4};
    s.gen_action = {{0}, {0}};
    return s;
}

}  // namespace

TEST_CASE("cover model: GL2(F2) two-point family") {
    CoverFamily fam(gl2_spec(2));
    CHECK(fam.p() == 2);
    CHECK(fam.w_size() == 2);
    CheckReport v = validate_family(fam);
    CAPTURE(v.items.size());
    for (const auto& it : v.items) {
        CAPTURE(it.name);
        CAPTURE(it.detail);
        CHECK(it.passed);
    }
    int x = 0, y = 1;
    CHECK(is_relevant(fam, x, y));
    // (Theta_{x|y} Theta_{y|x})(f_v)(1) = |K_y/(K_x cap K_y)|^-1 v
    CHECK(constant_term(fam, x, y) == SMat::from_rows({{Scalar(Rational(1, 2))}}));

    TFamily T = default_T(fam);
    CheckReport rel = relation_suite(fam, T);
    for (const auto& it : rel.items) {
        CAPTURE(it.name);
        CAPTURE(it.detail);
        CHECK(it.passed);
    }

    // Phi_s^2 = (1/sqrt 2) Phi_s + 1 before normalisation
    SMat phi = phi_op(fam, T, x, 1);
    Scalar r2 = Scalar::sqrt_p(fam.ctx());
    CHECK(phi * phi == r2.inv() * phi + SMat::identity(phi.rows()));

    NormalizedT nt = normalize_T(fam, T);
    CHECK(nt.d.at(1) == r2);
    CHECK(nt.q.at(1) == Scalar(2));
    SMat nphi = phi_op(fam, nt.T, x, 1);
    CHECK(nphi * nphi == Scalar(1) * nphi + Scalar(2) * SMat::identity(nphi.rows()));
    // the classical Iwahori-Hecke algebra of GL2(F2) gives the same q
    HeckeSetting hs(fam.H(), fam.point(x).K, fam.point(x).rho);
    CHECK(q_parameter(hs, decompose_two(hs).h) == nt.q.at(1));

    StarResult st = star_check(fam, T);
    CHECK(st.report.ok());
    CHECK(st.c.at(1) == Scalar(1));

    StructureResult sr = structure_report(fam, T);
    for (const auto& it : sr.report.items) {
        CAPTURE(it.name);
        CAPTURE(it.detail);
        CHECK(it.passed);
    }
    CHECK(sr.walls.simple == std::vector<int>{1});
    CHECK(sr.walls.omega == std::vector<int>{0});
    CHECK(sr.products_checked == 4);
}

TEST_CASE("cover model: a unit-modulus rescaling of T changes the star constant") {
    CoverFamily fam(gl2_spec(2, 4));
    TFamily T = default_T(fam);
    Scalar i = Scalar::zeta(fam.ctx(), 1);
    T.at_lift[1] = i * T.at_lift[1];
    CHECK(validate_T(fam, T).ok());
    StarResult st = star_check(fam, T);
    CHECK(st.c.at(1) == Scalar(-1));
    CHECK(st.report.find("involution_abs")->passed);
    CHECK_FALSE(st.report.find("simple_star_one")->passed);
}

TEST_CASE("cover model: GL2(F3) with the torus as Levi") {
    CoverFamily fam(gl2_spec(3));
    CHECK(fam.p() == 3);
    CHECK(fam.w_size() == 2);
    CHECK(validate_family(fam).ok());
    CHECK(constant_term(fam, 0, 1) == SMat::from_rows({{Scalar(Rational(1, 3))}}));
    TFamily T = default_T(fam);
    CheckReport rel = relation_suite(fam, T);
    for (const auto& it : rel.items) {
        CAPTURE(it.name);
        CAPTURE(it.detail);
        CHECK(it.passed);
    }
    NormalizedT nt = normalize_T(fam, T);
    CHECK(nt.q.at(1) == Scalar(3));
    HeckeSetting hs(fam.H(), fam.point(0).K, fam.point(0).rho);
    CHECK(q_parameter(hs, decompose_two(hs).h) == Scalar(3));
    StructureResult sr = structure_report(fam, T);
    CHECK(sr.report.ok());
    CHECK(star_check(fam, T).report.ok());
}

TEST_CASE("cover model: a generic character gives a non-relevant step") {
    auto H = std::make_shared<FinGroup>(FinGroup::gl2(3));
    Subgroup B = named_subgroup(*H, "borel"), Bl = named_subgroup(*H, "borel_lower");
    Subgroup U = named_subgroup(*H, "unipotent"), Ul = named_subgroup(*H, "unipotent_lower");
    Subgroup Tor = named_subgroup(*H, "torus");
    int t1 = H->element_of_matrix({2, 0, 0, 1}), t2 = H->element_of_matrix({1, 0, 0, 2});
    int u = H->element_of_matrix({1, 1, 0, 1}), ul = H->element_of_matrix({1, 0, 1, 1});
    std::vector<SMat> vals{one_by_one(Scalar(-1)), one_by_one(Scalar(1)), one_by_one(Scalar(1))};
    CoverSpec s;
    s.H = H;
    s.points.push_back({"x", B, U, rep_from_generators(*H, B, {t1, t2, u}, vals), trivial_rep(U)});
    s.points.push_back({"y", Bl, Ul, rep_from_generators(*H, Bl, {t1, t2, ul}, vals), trivial_rep(Ul)});
    s.KM = Tor;
    s.rhoM = torus_character(*H, Tor, 1, 0, nullptr);
    s.unipotents = {{U, Ul}, {Ul, U}};
    s.distance = {{0, 1}, {1, 0}};
    s.nheart_gens = {t1, t2};
    s.gen_action = {{0, 1}, {0, 1}};
    CoverFamily fam(s);
    CHECK(validate_family(fam).ok());
    CHECK_FALSE(is_relevant(fam, 0, 1));
    SMat round = theta_norm(fam, 1, 0) * theta_norm(fam, 0, 1);
    CHECK(round == SMat::identity(round.rows()));
    CHECK(relation_suite(fam, default_T(fam)).ok());
    WallStructure ws = wall_structure(fam);
    CHECK(ws.simple.empty());
    CHECK(ws.split);
}

TEST_CASE("cover model: the cocycle of T on an extended Omega") {
    CoverFamily fam(d4_spec());
    CHECK(fam.w_size() == 4);
    CHECK(validate_family(fam).ok());
    TFamily T = default_T(fam);
    bool nontrivial = false;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Scalar m = mu_from_T(fam, T, a, b);
            CHECK(m == mu_oracle(fam, a, b));
            nontrivial = nontrivial || !m.is_one();
        }
    CHECK(nontrivial);
    CHECK(relation_suite(fam, T).ok());
    StructureResult sr = structure_report(fam, T);
    for (const auto& it : sr.report.items) {
        CAPTURE(it.name);
        CAPTURE(it.detail);
        CHECK(it.passed);
    }
    REQUIRE(sr.mu_omega.size() == 4);
    // a non-split central extension of (Z/2)^2 by Z/2: the twisted centre is one-dimensional
    OmegaGroup om = OmegaGroup::from_table([&] {
        std::vector<std::vector<int>> t(4, std::vector<int>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t[a][b] = fam.w_mul(sr.walls.omega[a], sr.walls.omega[b]);
        return t;
    }());
    Cocycle mu = Cocycle::from_table(sr.mu_omega);
    CHECK(validate_cocycle(mu, om).ok);
    CHECK(twisted_center_dimension(mu, om) == 1);
    CHECK(sr.products_checked == 16);
}

TEST_CASE("cover model: single point in the trivial group") {
    CoverSpec s;
    auto H = std::make_shared<FinGroup>(FinGroup::from_table({{0}}));
    s.H = H;
    Subgroup one = whole_group(*H);
    s.points.push_back({"x", one, one, trivial_rep(one), trivial_rep(one)});
    s.KM = one;
    s.rhoM = trivial_rep(one);
    s.distance = {{0}};
    CoverFamily fam(s);
    CHECK(fam.w_size() == 1);
    CHECK(fam.p() == 0);
    CHECK(validate_family(fam).ok());
    TFamily T = default_T(fam);
    CHECK(relation_suite(fam, T).ok());
    CHECK(structure_report(fam, T).report.ok());
}

TEST_CASE("cover model: fault injection") {
    SUBCASE("rho not theta-isotypic on K_plus") {
        CoverSpec s = gl2_spec(2);
        const FinGroup& H = *s.H;
        s.KM = subgroup_from_elements(H, {0});
        s.rhoM = trivial_rep(s.KM);
        s.nheart_gens = {s.nheart_gens[0]};
        s.gen_action = {s.gen_action[0]};
        int u = H.element_of_matrix({1, 1, 0, 1});
        s.points[0].rho = rep_from_generators(H, s.points[0].K, {u}, {one_by_one(Scalar(-1))});
        CoverFamily fam(s);
        CheckReport v = validate_family(fam);
        CHECK_FALSE(v.find("theta_isotypic")->passed);
        CHECK_FALSE(v.ok());
    }
    SUBCASE("N element that does not conjugate K_x to K_nx") {
        CoverSpec s = gl2_spec(2);
        s.gen_action[0] = {0, 1};
        CoverFamily fam(s);
        CHECK_FALSE(validate_family(fam).find("n_conjugation")->passed);
    }
    SUBCASE("inconsistent point action") {
        CoverSpec s = gl2_spec(3);
        s.gen_action[1] = {1, 0};  // a torus element moving the points
        CHECK_THROWS_AS(CoverFamily{s}, Error);
    }
    SUBCASE("asymmetric distance") {
        CoverSpec s = gl2_spec(2);
        s.distance = {{0, 1}, {2, 0}};
        CHECK_THROWS_AS(CoverFamily{s}, Error);
    }
    SUBCASE("T that is not an intertwiner") {
        CoverFamily fam(gl2_spec(2));
        TFamily T = default_T(fam);
        T.at_lift[1] = SMat(1, 1);
        CHECK_FALSE(validate_T(fam, T).ok());
    }
}
