#include <random>
#include <set>

#include "hecke_algebra.hpp"
#include "rootdata.hpp"
#include "test_util.hpp"

using namespace hk;

namespace {

Rational R(long a, long b = 1) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

AffineIso iso1(long a, long b) { return {QMat::from_rows({{R(a)}}), {R(b)}}; }

struct A1Fixture {
    Arrangement arr{1, {R(1, 3)}, {{{R(1)}, R(0), R(1)}}, {true}};
    ReflectionGroupData g{arr, InnerProduct::standard(1), {R(1, 3)}};
    OmegaGroup triv = OmegaGroup::trivial(g);
    OmegaGroup ext = OmegaGroup::from_isos(g, {iso1(-1, 1)}, 2);
};

// Independent oracle for the Hecke algebra of the infinite dihedral group:
// elements are alternating words, stored as strings over {0,1}.
using WordVec = std::map<std::string, Scalar>;

WordVec oracle_mul_s(char s, const WordVec& x, const Scalar& q0, const Scalar& q1) {
    Scalar q = s == '0' ? q0 : q1;
    WordVec out;
    auto add = [&](const std::string& w, const Scalar& c) {
        out[w] += c;
        if (out[w].is_zero()) out.erase(w);
    };
    for (const auto& [w, c] : x) {
        if (!w.empty() && w[0] == s) {
            add(w, c * (q - Scalar(1)));
            add(w.substr(1), c * q);
        } else {
            add(std::string(1, s) + w, c);
        }
    }
    return out;
}

WordVec oracle_mul(const std::string& u, const std::string& w, const Scalar& q0, const Scalar& q1) {
    WordVec x{{w, Scalar(1)}};
    for (auto it = u.rbegin(); it != u.rend(); ++it) x = oracle_mul_s(*it, x, q0, q1);
    return x;
}

std::vector<std::string> alternating_words(int maxlen) {
    std::vector<std::string> out{""};
    for (int l = 1; l <= maxlen; ++l)
        for (char start : {'0', '1'}) {
            char other = start == '0' ? '1' : '0';
            std::string w;
            for (int k = 0; k < l; ++k) w += k % 2 == 0 ? start : other;
            out.push_back(w);
        }
    return out;
}

Word to_word(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(c - '0');
    return w;
}

}  // namespace

TEST_CASE("quadratic relation and the defining products") {
    A1Fixture f;
    Scalar q0(3), q1(5);
    HeckeAlgebra h(f.g, f.triv, {q0, q1}, Cocycle::trivial(f.triv));
    for (int s = 0; s < 2; ++s) {
        Scalar q = s == 0 ? q0 : q1;
        auto Ts = h.T({s});
        auto lhs = h.mul(Ts, Ts);
        auto rhs = Ts.scaled(q - Scalar(1)) + h.one().scaled(q);
        CHECK(lhs == rhs);
    }
    auto x = h.T({0, 1, 0}).scaled(Scalar(R(2, 7))) + h.T({1});
    CHECK(h.mul(h.one(), x) == x);
    CHECK(h.mul(x, h.one()) == x);
    auto prod = h.mul(h.T({0}), h.T_iso(f.g.word_iso({0, 1})));
    auto want = h.T_iso(f.g.word_iso({0, 1})).scaled(q0 - Scalar(1)) + h.T_iso(f.g.s(1)).scaled(q0);
    CHECK(prod == want);
}

TEST_CASE("infinite dihedral products match the word oracle") {
    A1Fixture f;
    Scalar q0(2), q1(R(9, 4));
    HeckeAlgebra h(f.g, f.triv, {q0, q1}, Cocycle::trivial(f.triv));
    auto words = alternating_words(4);
    for (const auto& u : words)
        for (const auto& w : words) {
            auto got = h.mul(h.T_iso(f.g.word_iso(to_word(u))), h.T_iso(f.g.word_iso(to_word(w))));
            ProductAlgElem want = h.zero();
            for (const auto& [x, c] : oracle_mul(u, w, q0, q1)) want += h.T_iso(f.g.word_iso(to_word(x))).scaled(c);
            CHECK(got == want);
        }
}

TEST_CASE("gamma relations") {
    A1Fixture f;
    HeckeAlgebra h(f.g, f.ext, {Scalar(2), Scalar(2)}, Cocycle::trivial(f.ext));
    auto lhs = h.mul(h.gamma(1), h.T({0}));
    auto rhs = h.mul(h.T({1}), h.gamma(1));
    CHECK(lhs == rhs);
    // stored in the g_t T_w basis
    CHECK(lhs.coeff({1, f.g.s(0)}) == Scalar(1));
    CHECK(lhs.terms().size() == 1);
    CHECK(h.mul(h.gamma(1), h.gamma(1)) == h.one());
    // mixed contexts
    HeckeAlgebra h2(f.g, f.ext, {Scalar(2), Scalar(2)}, Cocycle::trivial(f.ext));
    CHECK_THROWS_AS(h.mul(h.gamma(1), h2.gamma(1)), Error);
    // q must be constant on the Omega-class
    CHECK_THROWS_AS(HeckeAlgebra(f.g, f.ext, {Scalar(2), Scalar(3)}, Cocycle::trivial(f.ext)), Error);
    CHECK_THROWS_AS(HeckeAlgebra(f.g, f.ext, {Scalar(R(1, 2)), Scalar(R(1, 2))}, Cocycle::trivial(f.ext)), Error);
    CHECK_THROWS_AS(HeckeAlgebra(f.g, f.ext, {Scalar(2)}, Cocycle::trivial(f.ext)), Error);
}

TEST_CASE("associativity over small basis triples") {
    A1Fixture f;
    std::vector<std::vector<Scalar>> tab{{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(-1)}};
    HeckeAlgebra h(f.g, f.ext, {Scalar(3), Scalar(3)}, Cocycle::from_table(tab));
    std::vector<ProductAlgElem> basis;
    for (const auto& w : alternating_words(4))
        for (long t = 0; t < 2; ++t) basis.push_back(h.basis(t, f.g.word_iso(to_word(w))));
    for (const auto& a : basis)
        for (const auto& b : basis)
            for (const auto& c : basis) CHECK(h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c)));

    RootSystem a2 = RootSystem::make("A2");
    DepthZero dz = depthzero_arrangement(a2, {}, {R(1, 5), R(1, 7)});
    ReflectionGroupData g2(dz.arrangement, dz.ip, dz.arrangement.basepoint());
    OmegaGroup t2 = OmegaGroup::trivial(g2);
    Scalar q = Scalar::sqrt_p(Ctx::get(1, 2)) + Scalar(1);
    HeckeAlgebra h2(g2, t2, {q, q, q}, Cocycle::trivial(t2));
    std::vector<ProductAlgElem> b2;
    std::set<AffineIso> seen;
    for (int i = -1; i < 3; ++i)
        for (int j = -1; j < 3; ++j) {
            Word w;
            if (i >= 0) w.push_back(i);
            if (j >= 0 && j != i) w.push_back(j);
            AffineIso x = g2.word_iso(w);
            if (seen.insert(x).second) b2.push_back(h2.T_iso(x).scaled(q - Scalar(R(1, 3))));
        }
    CHECK(b2.size() == 10);
    for (const auto& a : b2)
        for (const auto& b : b2)
            for (const auto& c : b2) CHECK(h2.mul(h2.mul(a, b), c) == h2.mul(a, h2.mul(b, c)));
}

TEST_CASE("braid relations: T_w does not depend on the reduced word") {
    RootSystem a2 = RootSystem::make("A2");
    DepthZero dz = depthzero_arrangement(a2, {}, {R(1, 5), R(1, 7)});
    ReflectionGroupData g(dz.arrangement, dz.ip, dz.arrangement.basepoint());
    OmegaGroup t = OmegaGroup::trivial(g);
    HeckeAlgebra h(g, t, {Scalar(4), Scalar(4), Scalar(4)}, Cocycle::trivial(t));
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int it = 0; it < 40; ++it) {
        Word w;
        for (int k = 0; k < 6; ++k) w.push_back(pick(rng));
        AffineIso x = g.word_iso(w);
        auto r1 = reduced_word(g, x);
        auto r2 = reduced_word(g, x, &rng);
        CHECK(h.T(r1.word) == h.T(r2.word));
        CHECK(h.T(r1.word) == h.T_iso(x));
    }
    CHECK(h.mul(h.mul(h.T({0}), h.T({1})), h.T({0})) == h.mul(h.mul(h.T({1}), h.T({0})), h.T({1})));
}

TEST_CASE("cocycle validation") {
    // (Z/2)^2 with index a1 + 2 a2
    std::vector<std::vector<int>> k4(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) k4[a][b] = a ^ b;
    OmegaGroup v4 = OmegaGroup::from_table(k4);
    std::vector<std::vector<Scalar>> pauli(4, std::vector<Scalar>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) pauli[a][b] = ((a >> 1) & 1) * (b & 1) ? Scalar(-1) : Scalar(1);
    Cocycle mp = Cocycle::from_table(pauli);
    CHECK(validate_cocycle(mp, v4).ok);
    CHECK(validate_cocycle(Cocycle::trivial(v4), v4).ok);

    std::vector<std::vector<int>> z4(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) z4[a][b] = (a + b) % 4;
    OmegaGroup c4 = OmegaGroup::from_table(z4);
    std::vector<std::vector<Scalar>> bad(4, std::vector<Scalar>(4, Scalar(1)));
    bad[1][1] = Scalar(-1);
    auto chk = validate_cocycle(Cocycle::from_table(bad), c4);
    CHECK_FALSE(chk.ok);
    // the witness really violates the identity
    auto mu = Cocycle::from_table(bad);
    auto [v, w, u] = chk.witness;
    CHECK(mu(v, w) * mu(c4.mul(v, w), u) != mu(w, u) * mu(v, c4.mul(w, u)));

    // coboundaries
    const Ctx* ctx = Ctx::get(4, 0);
    auto pool = roots_of_unity(ctx);
    CHECK(pool.size() == 4);
    auto b0 = coboundary_search(mp, mp, v4, pool);
    REQUIRE(b0);
    CHECK(!coboundary_search(mp, Cocycle::trivial(v4), v4, pool).has_value());
    CHECK(twisted_center_dimension(mp, v4) == 1);
    CHECK(twisted_center_dimension(Cocycle::trivial(v4), v4) == 4);

    std::mt19937 rng(8);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int it = 0; it < 10; ++it) {
        std::vector<Scalar> beta{Scalar(1)};
        for (int k = 1; k < 4; ++k) beta.push_back(pool[pick(rng)]);
        std::vector<std::vector<Scalar>> t(4, std::vector<Scalar>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t[a][b] = beta[a] * beta[b] / beta[a ^ b];
        Cocycle m1 = Cocycle::from_table(t);
        CHECK(validate_cocycle(m1, v4).ok);
        auto found = coboundary_search(m1, Cocycle::trivial(v4), v4, pool);
        REQUIRE(found);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(m1(a, b) == (*found)[a] * (*found)[b] / (*found)[a ^ b]);
    }
}

TEST_CASE("star anti-involution") {
    A1Fixture f;
    HeckeAlgebra h(f.g, f.ext, {Scalar(2), Scalar(2)}, Cocycle::trivial(f.ext));
    CHECK(h.star(h.basis(1, f.g.s(0))) == h.basis(1, f.g.s(1)));
    const Ctx* c4 = Ctx::get(4, 0);
    Scalar c = Scalar::parse(c4, "1 + 2*z");
    CHECK(h.star(h.one().scaled(c)) == h.one().scaled(Scalar::parse(c4, "1 - 2*z")));
    CHECK(h.star(h.T({0, 1})) == h.T({1, 0}));

    std::mt19937 rng(12);
    std::uniform_int_distribution<int> pick(0, 2), coef(-3, 3);
    auto rand_elem = [&]() {
        ProductAlgElem x = h.zero();
        for (int k = 0; k < 3; ++k) {
            Word w;
            for (int j = 0; j < 3; ++j) {
                int s = pick(rng);
                if (s < 2) w.push_back(s);
            }
            x += h.mul(h.gamma(pick(rng) % 2), h.T(w)).scaled(Scalar(c4, coef(rng)) + Scalar::zeta(c4, 1) * Scalar(coef(rng)));
        }
        return x;
    };
    for (int it = 0; it < 25; ++it) {
        auto a = rand_elem(), b = rand_elem();
        CHECK(h.star(h.mul(a, b)) == h.mul(h.star(b), h.star(a)));
        CHECK(h.star(h.star(a)) == a);
    }
    std::vector<std::vector<Scalar>> tab{{Scalar(1), Scalar(1)}, {Scalar(1), Scalar::zeta(c4, 1)}};
    HeckeAlgebra hb(f.g, f.ext, {Scalar(2), Scalar(2)}, Cocycle::from_table(tab));
    CHECK_THROWS_AS(hb.star(hb.one()), Error);
}

TEST_CASE("automorphisms Psi_chi") {
    A1Fixture f;
    HeckeAlgebra h(f.g, f.ext, {Scalar(2), Scalar(2)}, Cocycle::trivial(f.ext));
    OmegaCharacter triv{{Scalar(1), Scalar(1)}, std::nullopt};
    OmegaCharacter sign{{Scalar(1), Scalar(-1)}, std::nullopt};
    auto x = h.basis(1, f.g.word_iso({0, 1})) + h.T({1});
    CHECK(h.psi(triv, x) == x);
    CHECK(h.psi(sign, h.basis(1, f.g.s(0))) == h.basis(1, f.g.s(0)).scaled(Scalar(-1)));
    CHECK(h.psi(sign, h.psi(sign, x)) == x);

    auto autos = enumerate_support_preserving_autos(h, roots_of_unity(Ctx::base()));
    CHECK(autos.size() == 2);
    auto scan = scan_support_preserving_rescalings(h, roots_of_unity(Ctx::base()));
    CHECK(scan.tried == 8);
    CHECK(scan.automorphisms == 2);
    CHECK(scan.all_are_psi_chi);

    HeckeAlgebra ht(f.g, f.triv, {Scalar(2), Scalar(3)}, Cocycle::trivial(f.triv));
    CHECK(enumerate_support_preserving_autos(ht, roots_of_unity(Ctx::base())).size() == 1);

    // Z/4 acting on a trivial affine Weyl group, over Q(zeta_4)
    Arrangement empty(1, {R(0)}, {}, {});
    ReflectionGroupData g0(empty, InnerProduct::standard(1), {R(0)});
    std::vector<std::vector<int>> z4(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) z4[a][b] = (a + b) % 4;
    OmegaGroup c4 = OmegaGroup::from_table(z4);
    HeckeAlgebra h4(g0, c4, {}, Cocycle::trivial(c4));
    auto pool = roots_of_unity(Ctx::get(4, 0));
    CHECK(enumerate_support_preserving_autos(h4, pool).size() == 4);
    CHECK(enumerate_support_preserving_autos(h4, pool, true).size() == 4);
    auto a4 = enumerate_support_preserving_autos(h4, pool);
    for (size_t i = 0; i < a4.size(); ++i)
        for (size_t j = 0; j < a4.size(); ++j) {
            OmegaCharacter prod;
            for (int t = 0; t < 4; ++t) prod.values.push_back(a4[i](t) * a4[j](t));
            auto y = h4.gamma(1).scaled(Scalar(3)) + h4.gamma(3);
            CHECK(h4.psi(a4[i], h4.psi(a4[j], y)) == h4.psi(prod, y));
        }
}

TEST_CASE("infinite cyclic Omega arithmetic") {
    Arrangement arr(2, {R(1, 3), R(0)}, {{{R(1), R(0)}, R(0), R(1)}}, {true});
    ReflectionGroupData g(arr, InnerProduct::standard(2), {R(1, 3), R(0)});
    AffineIso shift{QMat::identity(2), {R(0), R(1)}};
    OmegaGroup om = OmegaGroup::from_isos(g, {shift}, -1);
    Cocycle mu = Cocycle::bicharacter(Scalar(-1));
    CHECK(validate_cocycle(mu, om).ok);
    HeckeAlgebra h(g, om, {Scalar(3), Scalar(3)}, mu);
    // g_1 g_1 = mu(1,1) g_2 = -g_2
    CHECK(h.mul(h.gamma(1), h.gamma(1)) == h.gamma(2).scaled(Scalar(-1)));
    CHECK(h.mul(h.gamma(-1), h.gamma(1)) == h.gamma(0).scaled(Scalar(-1)));
    auto x = h.mul(h.gamma(1), h.T({0, 1}));
    CHECK(h.mul(h.mul(x, x), x) == h.mul(x, h.mul(x, x)));
    OmegaCharacter chi{{}, Scalar(-1)};
    CHECK(h.psi(chi, h.gamma(3)) == h.gamma(3).scaled(Scalar(-1)));
}
