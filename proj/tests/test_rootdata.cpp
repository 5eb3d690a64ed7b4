#include <random>
#include <set>

#include "rootdata.hpp"
#include "test_util.hpp"

using namespace hk;

namespace {

Rational R(long a, long b = 1) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

// Independent oracle: the classical epsilon-descriptions of the root sets.
std::set<QVec> classical_roots(char fam, int n) {
    std::set<QVec> out;
    int amb = fam == 'A' ? n + 1 : (fam == 'G' ? 3 : n);
    auto vec = [&](std::vector<std::pair<int, long>> ent) {
        QVec v(amb, Rational(0));
        for (auto [i, c] : ent) v[i] += c;
        return v;
    };
    if (fam == 'A') {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j) out.insert(vec({{i, 1}, {j, -1}}));
        return out;
    }
    if (fam == 'G') {
        // short roots: e_i - e_j; long roots: +-(2e_i - e_j - e_k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                out.insert(vec({{i, 1}, {j, -1}}));
                int k = 3 - i - j;
                out.insert(vec({{i, 2}, {j, -1}, {k, -1}}));
                out.insert(vec({{i, -2}, {j, 1}, {k, 1}}));
            }
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (long a : {1L, -1L})
                for (long b : {1L, -1L}) out.insert(vec({{i, a}, {j, b}}));
    if (fam == 'B')
        for (int i = 0; i < n; ++i)
            for (long a : {1L, -1L}) out.insert(vec({{i, a}}));
    if (fam == 'C')
        for (int i = 0; i < n; ++i)
            for (long a : {2L, -2L}) out.insert(vec({{i, a}}));
    return out;
}

std::set<QVec> ambient_roots(const RootSystem& rs) {
    std::set<QVec> out;
    for (const auto& r : rs.roots()) {
        QVec v(rs.simple_ambient()[0].size(), Rational(0));
        for (int i = 0; i < rs.rank(); ++i)
            for (size_t k = 0; k < v.size(); ++k) v[k] += r[i] * rs.simple_ambient()[i][k];
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("root systems match the classical descriptions") {
    for (std::string t : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"}) {
        CAPTURE(t);
        RootSystem rs = RootSystem::make(t);
        auto oracle = classical_roots(t[0], rs.rank());
        CHECK(ambient_roots(rs) == oracle);
        CHECK(rs.roots().size() == oracle.size());
        CHECK(rs.num_positive() * 2 == rs.roots().size());
    }
    CHECK(RootSystem::make("A2").roots().size() == 6);
    CHECK(RootSystem::make("B2").roots().size() == 8);
    CHECK(RootSystem::make("G2").roots().size() == 12);
    // Hand-written Cartan matrices, a_ij = 2 (a_i, a_j) / (a_i, a_i).
    CHECK(RootSystem::make("B2").cartan() == QMat::from_rows({{R(2), R(-1)}, {R(-2), R(2)}}));
    CHECK(RootSystem::make("G2").cartan() == QMat::from_rows({{R(2), R(-3)}, {R(-1), R(2)}}));
    CHECK_THROWS_AS(RootSystem::make("E8"), Error);
    CHECK_THROWS_AS(RootSystem::make("B1"), Error);
}

TEST_CASE("affine roots in a slab") {
    RootSystem a1 = RootSystem::make("A1");
    auto got = affine_roots_in_slab(a1, {R(0)}, {R(5, 2)});
    // oracle: alpha(x) + k vanishes on [0, 5/2] iff k in [-5/2, 0]
    std::set<std::pair<long, long>> want, have;
    for (long k = -10; k <= 10; ++k) {
        if (R(-5, 2) <= k && k <= 0) want.insert({1, k});
        if (R(0) <= k && k <= R(5, 2)) want.insert({-1, k});
    }
    for (const auto& a : got) have.insert({a.root[0], a.level});
    CHECK(have == want);
    CHECK(affine_roots_in_slab(a1, {R(1, 3)}, {R(1, 3)}).empty());

    RootSystem a2 = RootSystem::make("A2");
    auto crossed = affine_roots_in_slab(a2, {R(1, 5), R(1, 7)}, {R(1, 5), R(-1, 7)});
    REQUIRE(crossed.size() == 2);
    std::set<RootVec> rs;
    for (const auto& a : crossed) {
        CHECK(a.level == 0);
        rs.insert(a.root);
    }
    CHECK(rs == std::set<RootVec>{{0, 1}, {0, -1}});
}

TEST_CASE("vanishing roots") {
    RootSystem a1 = RootSystem::make("A1");
    auto v0 = vanishing_roots_at(a1, {R(0)});
    CHECK(v0.size() == 2);
    for (const auto& a : v0) CHECK(a.level == 0);
    CHECK(vanishing_roots_at(a1, {R(1, 3)}).empty());
    RootSystem a2 = RootSystem::make("A2");
    auto v = vanishing_roots_at(a2, {R(0), R(0)});
    CHECK(v.size() == 6);
    for (const auto& a : v) CHECK(a.level == 0);
    // the vertex (1, 0) of the fundamental alcove: alpha_1 + alpha_2 - 1, alpha_1 - 1, alpha_2 and negatives
    CHECK(vanishing_roots_at(a2, {R(1), R(0)}).size() == 6);
}

TEST_CASE("depth-zero arrangements") {
    RootSystem a1 = RootSystem::make("A1");
    DepthZero d1 = depthzero_arrangement(a1, {}, {R(1, 3)});
    REQUIRE(d1.arrangement.families().size() == 1);
    CHECK(d1.arrangement.families()[0].gradient == QVec{R(1)});
    CHECK(d1.arrangement.families()[0].period == R(1));
    CHECK(d1.arrangement.families()[0].base == R(1, 3));

    RootSystem a2 = RootSystem::make("A2");
    DepthZero d2 = depthzero_arrangement(a2, {{0}}, {R(0), R(1, 3)});
    CHECK(d2.arrangement.dim() == 1);
    CHECK(d2.arrangement.families().size() == 1);
    CHECK(depthzero_arrangement(a2, {{0, 1}}, {R(1, 5), R(1, 7)}).arrangement.families().empty());
    CHECK(depthzero_arrangement(a2, {}, {R(1, 5), R(1, 7)}).arrangement.families().size() == 3);
    CHECK_THROWS_AS(depthzero_arrangement(a2, {{0}}, {R(0), R(1)}), Error);
    CHECK_THROWS_AS(depthzero_arrangement(a2, {{2}}, {R(0), R(1, 3)}), Error);
}

TEST_CASE("depth-zero arrangement does not depend on the basis of V_M") {
    RootSystem a3 = RootSystem::make("A3");
    LeviSubset levi{{1}};
    Point x0{R(1, 5), R(0), R(1, 7)};
    DepthZero d = depthzero_arrangement(a3, levi, x0);
    QMat M = QMat::from_rows({{R(2), R(1)}, {R(-1), R(3)}});
    DepthZero e = depthzero_arrangement(a3, levi, x0, d.basis * M);
    // coordinates change by x = M x', so gradients transform by M^T
    std::set<HyperplaneFamily> mapped, other(e.arrangement.families().begin(), e.arrangement.families().end());
    for (const auto& f : d.arrangement.families())
        mapped.insert(HyperplaneFamily{M.transpose().apply(f.gradient), f.base, f.period}.canonical());
    CHECK(mapped == other);
}

TEST_CASE("vanishing sets grow away from generic points") {
    RootSystem a2 = RootSystem::make("A2");
    DepthZero d = depthzero_arrangement(a2, {{0}}, {R(0), R(1, 3)});
    Point x{R(1, 7)};
    CHECK(vanishing_monotone_check(a2, d, x, x));
    CHECK(vanishing_monotone_check(a2, d, x, {R(2, 3)}));
    CHECK(vanishing_monotone_check(a2, d, x, {R(8, 7)}));
    CHECK_THROWS_AS(vanishing_monotone_check(a2, d, {R(2, 3)}, x), Error);

    RootSystem b2 = RootSystem::make("B2");
    DepthZero db = depthzero_arrangement(b2, {}, {R(1, 9), R(1, 11)});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> u(-12, 12);
    size_t base = vanishing_roots_at(b2, db.ambient({R(0), R(0)})).size();
    for (int it = 0; it < 60; ++it) {
        Point y{R(u(rng), 4), R(u(rng), 4)};
        CHECK(vanishing_monotone_check(b2, db, {R(0), R(0)}, y));
        CHECK(base <= vanishing_roots_at(b2, db.ambient(y)).size());
    }
}

TEST_CASE("quotient spaces") {
    InnerProduct ip2 = InnerProduct::standard(2);
    Arrangement full(2, {R(1, 3), R(1, 5)}, {{{R(1), R(0)}, R(0), R(1)}, {{R(0), R(1)}, R(0), R(1)}}, {true, true});
    QuotientSpace q = quotient_space(full, ip2);
    CHECK(q.dim() == 2);
    CHECK(q.projection.rank() == 2);

    Arrangement none(2, {R(1, 3), R(1, 5)}, {{{R(1), R(0)}, R(0), R(1)}}, {false});
    QuotientSpace q0 = quotient_space(none, ip2);
    CHECK(q0.dim() == 0);
    CHECK(q0.arrangement.families().empty());

    Arrangement par(2, {R(1, 3), R(1, 5)},
                    {{{R(1), R(0)}, R(0), R(1)}, {{R(2), R(0)}, R(1), R(2)}, {{R(0), R(1)}, R(0), R(1)}},
                    {true, true, false});
    QuotientSpace q1 = quotient_space(par, ip2);
    CHECK(q1.dim() == 1);
    // kernel is the y-axis
    CHECK(q1.project({R(0), R(7)}) == Point{R(0)});
    // both relevant families now describe points of a line; x and 2x+1 (period 2) give different families
    CHECK(q1.arrangement.families().size() == 2);
    CHECK(q1.family_map[2] == -1);
    // pullback of projected families reproduces the originals
    for (size_t i = 0; i < 2; ++i) {
        const auto& g = q1.arrangement.families()[q1.family_map[i]];
        HyperplaneFamily back{q1.projection.transpose().apply(g.gradient), g.base, g.period};
        CHECK(back.canonical() == par.families()[i].canonical());
    }
    // induced metric: distance between parallel hyperplanes x=0 and x=1 is preserved
    CHECK(q1.ip.gram()(0, 0) == R(1));
}

TEST_CASE("affine root system conditions") {
    InnerProduct ip1 = InnerProduct::standard(1);
    Arrangement a1(1, {R(1, 3)}, {{{R(1)}, R(0), R(1)}}, {true});
    ReflectionGroupData g(a1, ip1, {R(1, 3)});
    CHECK(verify_affine_root_conditions(a1, g).ok());

    Arrangement single(1, {R(1, 3)}, {{{R(1)}, R(0), R(0)}}, {true});
    ReflectionGroupData gs(single, ip1, {R(1, 3)});
    auto rs = verify_affine_root_conditions(single, gs);
    CHECK_FALSE(rs.ok());
    CHECK_FALSE(rs.find("parallel_classes_infinite")->passed);
    CHECK(rs.find("reflection_invariance")->passed);

    Arrangement two(1, {R(1, 3)}, {{{R(1)}, R(0), R(0)}, {{R(1)}, R(-1), R(0)}}, {true, true});
    ReflectionGroupData gt(two, ip1, {R(1, 3)});
    auto rt = verify_affine_root_conditions(two, gt);
    CHECK_FALSE(rt.find("reflection_invariance")->passed);
    CHECK(rt.find("reflection_invariance")->detail.find("w=s") != std::string::npos);
}
