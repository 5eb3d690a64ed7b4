#include <random>
#include <set>

#include "fingroup.hpp"
#include "test_util.hpp"

using namespace hk;

namespace {

// End_H(ind rho) computed directly as the commutant of the induced matrices.
int commutant_dimension(const HeckeSetting& s) {
    int N = s.index() * s.dim();
    std::vector<SMat> mats;
    for (int h = 0; h < s.group().order(); ++h) mats.push_back(s.induced(h));
    SMat sys(static_cast<int>(mats.size()) * N * N, N * N);
    int row = 0;
    for (const auto& A : mats)
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c, ++row)
                for (int m = 0; m < N; ++m) {
                    sys(row, r * N + m) += A(m, c);  // (E A)_{rc}
                    sys(row, m * N + c) -= A(r, m);  // (A E)_{rc}
                }
    return N * N - sys.rank();
}

HeckeFunc random_combo(const HeckeSetting& s, std::mt19937& rng) {
    std::uniform_int_distribution<int> u(-3, 3);
    HeckeFunc f = s.zero();
    for (const auto& [g, b] : s.hecke_basis()) f = f + b.scaled(Scalar(u(rng)));
    return f;
}

int fixed_points(const std::vector<int>& p) {
    int c = 0;
    for (size_t i = 0; i < p.size(); ++i) c += p[i] == static_cast<int>(i);
    return c;
}

}  // namespace

TEST_CASE("finite groups: constructions and labels") {
    FinGroup s4 = FinGroup::symmetric(4);
    CHECK(s4.order() == 24);
    CHECK(s4.label(0) == "()");
    int t = s4.element_of_perm({1, 0, 2, 3});
    CHECK(s4.label(t) == "(0 1)");
    CHECK(s4.perm_sign(t) == -1);
    CHECK(s4.mul(t, t) == 0);

    FinGroup gl = FinGroup::gl2(3);
    CHECK(gl.order() == 48);
    CHECK(FinGroup::sl2(3).order() == 24);
    CHECK(FinGroup::gl2(2).order() == 6);
    CHECK(gl.label(0) == "[[1,0],[0,1]]");
    int x = gl.element_of_matrix({1, 1, 0, 1});
    CHECK(gl.mul(gl.mul(x, x), x) == 0);

    FinGroup d4 = FinGroup::dihedral(4);
    CHECK(d4.order() == 8);
    int r = 1, s = 4;
    CHECK(d4.mul(d4.mul(s, r), s) == d4.inv(r));
    FinGroup p = FinGroup::product(FinGroup::cyclic(2), FinGroup::cyclic(3));
    CHECK(p.order() == 6);
    CHECK(subgroup_from_generators(p, {4}).order() == 6);  // (1,1) generates C6

    CHECK_THROWS_AS(FinGroup::from_table({{0, 1}, {1, 1}}), Error);
    CHECK(named_subgroup(s4, "s3").order() == 6);
    CHECK(named_subgroup(gl, "borel").order() == 12);
    CHECK(named_subgroup(gl, "torus").order() == 4);
    CHECK(named_subgroup(gl, "monomial").order() == 8);
    CHECK_THROWS_AS(named_subgroup(gl, "parahoric"), Error);
    CHECK_THROWS_AS(subgroup_from_elements(s4, {0, t, s4.element_of_perm({0, 2, 1, 3})}), Error);
}

TEST_CASE("finite groups: double cosets match orbit counts") {
    // K\H/K for K = point stabiliser is in bijection with K-orbits on points.
    FinGroup s4 = FinGroup::symmetric(4);
    Subgroup K = named_subgroup(s4, "s3");
    CHECK(double_cosets(s4, K, K).size() == 2);
    Subgroup K2 = named_subgroup(s4, "s2");  // fixes 2 and 3
    CHECK(double_cosets(s4, K2, K2).size() == 7);  // orbits of S2 on ordered pairs of distinct points
    FinGroup gl = FinGroup::gl2(2);
    Subgroup B = named_subgroup(gl, "borel");
    CHECK(double_cosets(gl, B, B).size() == 2);
    FinGroup gl3 = FinGroup::gl2(3);
    Subgroup B3 = named_subgroup(gl3, "borel");
    auto reps = double_cosets(gl3, B3, B3);
    REQUIRE(reps.size() == 2);
    CHECK(double_coset(gl3, B3, B3, reps[0]).order() == 12);
    CHECK(double_coset(gl3, B3, B3, reps[1]).order() == 36);
}

TEST_CASE("finite groups: induced representation and transport") {
    std::mt19937 rng(3);
    FinGroup s4 = FinGroup::symmetric(4);
    Subgroup K = named_subgroup(s4, "s3");
    for (int which = 0; which < 2; ++which) {
        Rep rho = which == 0 ? trivial_rep(K) : sign_rep(s4, K);
        HeckeSetting s(s4, K, rho);
        CAPTURE(which);
        CHECK(s.index() == 4);
        for (int a = 0; a < 24; ++a)
            for (int b = 0; b < 24; b += 5) CHECK(s.induced(s4.mul(a, b)) == s.induced(a) * s.induced(b));

        auto basis = s.hecke_basis();
        CHECK(static_cast<int>(basis.size()) == commutant_dimension(s));
        CHECK(basis.size() == 2);
        for (const auto& [g, f] : basis) CHECK(s.check(f).empty());

        HeckeFunc one = s.unit();
        CHECK(s.transport(one) == SMat::identity(4));
        for (int it = 0; it < 4; ++it) {
            HeckeFunc a = random_combo(s, rng), b = random_combo(s, rng), c = random_combo(s, rng);
            CHECK(s.convolve(one, a) == a);
            CHECK(s.convolve(a, one) == a);
            CHECK(s.convolve(s.convolve(a, b), c) == s.convolve(a, s.convolve(b, c)));
            SMat E = s.transport(a);
            for (int h = 0; h < 24; ++h) CHECK(E * s.induced(h) == s.induced(h) * E);
            CHECK(s.transport(s.convolve(a, b)) == E * s.transport(b));
            CHECK(s.transport_inverse(E) == a);
            // phi(g) v = Phi(f_v)(g): read off at coset representatives
            SMat fv = E * s.induced_embedding();
            for (int i = 0; i < s.index(); ++i)
                CHECK(fv(i, 0) == a.values[s.right_reps()[i]](0, 0));
        }
    }
}

TEST_CASE("finite groups: two-piece decompositions and q") {
    struct Case {
        std::string name;
        int dim1, dim2;
        long q;
    };
    FinGroup s4 = FinGroup::symmetric(4);
    FinGroup gl2 = FinGroup::gl2(2);
    FinGroup gl3 = FinGroup::gl2(3);
    Subgroup K4 = named_subgroup(s4, "s3");
    Subgroup B2 = named_subgroup(gl2, "borel");
    Subgroup B3 = named_subgroup(gl3, "borel");
    std::vector<std::pair<HeckeSetting, Case>> cases;
    cases.push_back({HeckeSetting(s4, K4, trivial_rep(K4)), {"S4/S3", 1, 3, 3}});
    cases.push_back({HeckeSetting(s4, K4, sign_rep(s4, K4)), {"S4/S3 sign", 1, 3, 3}});
    cases.push_back({HeckeSetting(gl2, B2, trivial_rep(B2)), {"GL2(F2)/B", 1, 2, 2}});
    cases.push_back({HeckeSetting(gl3, B3, trivial_rep(B3)), {"GL2(F3)/B", 1, 3, 3}});
    for (auto& [s, c] : cases) {
        CAPTURE(c.name);
        TwoDecomposition dec = decompose_two(s);
        CHECK(dec.dim1 == c.dim1);
        CHECK(dec.dim2 == c.dim2);
        int N = s.index() * s.dim();
        CHECK(dec.p1 * dec.p1 == dec.p1);
        CHECK(dec.p1 * dec.p2 == SMat(N, N));
        CHECK(dec.p1 + dec.p2 == SMat::identity(N));
        CHECK(dec.E * dec.E == dec.a * dec.E + dec.b * SMat::identity(N));
        Scalar q = q_parameter(s, dec.h);
        CHECK(q == Scalar(c.q));
        CHECK_THROWS_AS(q_parameter(s, 0), Error);

        NormalizedGenerator ng = normalized_generator(s, dec.h);
        CHECK(ng.q == Scalar(c.q));
        HeckeFunc lhs = s.convolve(ng.phi, ng.phi);
        HeckeFunc rhs = ng.phi.scaled(ng.q - Scalar(1)) + s.unit().scaled(ng.q);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("finite groups: trace formula agrees with the spectral projector") {
    FinGroup s4 = FinGroup::symmetric(4);
    Subgroup K = named_subgroup(s4, "s3");
    HeckeSetting s(s4, K, trivial_rep(K));
    TwoDecomposition dec = decompose_two(s);
    std::vector<Scalar> chi_std, chi_triv;
    for (int g = 0; g < 24; ++g) {
        chi_std.push_back(Scalar(fixed_points(s4.perm(g)) - 1));
        chi_triv.push_back(Scalar(1));
    }
    CHECK(trace_formula_projector(s, chi_std, 3) == dec.p2);
    CHECK(trace_formula_projector(s, chi_triv, 1) == dec.p1);
}

TEST_CASE("finite groups: torus characters and commutant dimensions") {
    FinGroup gl3 = FinGroup::gl2(3);
    Subgroup T = named_subgroup(gl3, "torus");
    Rep chi = torus_character(gl3, T, 1, 0, nullptr);
    std::string why;
    CHECK(verify_rep(gl3, chi, &why));
    int w = gl3.element_of_matrix({0, 1, 1, 0});
    HeckeSetting s(gl3, T, chi);
    CHECK(static_cast<int>(s.hecke_basis().size()) == commutant_dimension(s));
    // w normalises T and swaps the two diagonal entries, so chi and its conjugate differ on T
    CHECK(s.intertwiner_space(w).empty());
    CHECK_THROWS_AS(s.basis_function(w, SMat::identity(1)), Error);
    CHECK(s.intertwiner_space(0).size() == 1);

    FinGroup gl5 = FinGroup::gl2(5);
    Subgroup T5 = named_subgroup(gl5, "torus");
    CHECK_THROWS_AS(torus_character(gl5, T5, 1, 0, nullptr), Error);
    Rep c5 = torus_character(gl5, T5, 1, 2, Ctx::get(4, 0));
    CHECK(verify_rep(gl5, c5));
}

TEST_CASE("finite groups: normalisation quadratic") {
    auto [d, q] = solve_normalization(Scalar(2), Scalar(3));
    CHECK(d == Scalar(1));
    CHECK(q == Scalar(3));
    auto [d2, q2] = solve_normalization(Scalar(2), Scalar(-1));  // a^2 + 4b = 0
    CHECK(d2 == Scalar(-1));
    CHECK(q2 == Scalar(-1));
    CHECK_THROWS_AS(solve_normalization(Scalar(0), Scalar(1)), Error);
    CHECK_THROWS_AS(solve_normalization(Scalar(1), Scalar(0)), Error);
    // the quadratic b d^2 - a d - 1 = 0 and q - 1 = a d both hold
    const Ctx* c2 = Ctx::get(1, 2);
    Scalar a = Scalar::sqrt_p(c2).inv(), b(1);
    auto [d3, q3] = solve_normalization(a, b);
    CHECK(b * d3 * d3 - a * d3 - Scalar(1) == Scalar(0));
    CHECK(q3 - Scalar(1) == a * d3);
    CHECK(q3 == Scalar(2));
}
