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

#include "fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace hk {

// ---------------------------------------------------------------- groups

void FinGroup::finish() {
    int n = order();
    require(n > 0, Errc::Config, "empty group");
    for (int a = 0; a < n; ++a) {
        require(static_cast<int>(mul_[a].size()) == n, Errc::Config, "group table is not square");
        require(mul_[0][a] == a && mul_[a][0] == a, Errc::Config, "element 0 is not the identity");
        std::vector<bool> seen(n, false);
        for (int b = 0; b < n; ++b) {
            int v = mul_[a][b];
            require(v >= 0 && v < n && !seen[v], Errc::Config, "group table row is not a permutation");
            seen[v] = true;
        }
    }
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul_[a][b] == 0) inv_[a] = b;
    auto assoc = [&](int a, int b, int c) { return mul_[mul_[a][b]][c] == mul_[a][mul_[b][c]]; };
    if (n <= 200) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(assoc(a, b, c), Errc::Config, "group table is not associative");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> u(0, n - 1);
        for (int it = 0; it < 50000; ++it)
            require(assoc(u(rng), u(rng), u(rng)), Errc::Config, "group table is not associative");
    }
}

FinGroup FinGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
    FinGroup g;
    g.mul_ = std::move(table);
    g.name_ = std::move(name);
    g.finish();
    return g;
}

FinGroup FinGroup::cyclic(int n) {
    require(n >= 1, Errc::Config, "cyclic group order must be positive");
    FinGroup g;
    g.kind_ = Kind::Cyclic;
    g.name_ = "C" + std::to_string(n);
    g.mul_.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mul_[a][b] = (a + b) % n;
    g.finish();
    return g;
}

FinGroup FinGroup::dihedral(int n) {
    require(n >= 1, Errc::Config, "dihedral parameter must be positive");
    FinGroup g;
    g.kind_ = Kind::Dihedral;
    g.name_ = "D" + std::to_string(n);
    int N = 2 * n;
    g.mul_.assign(N, std::vector<int>(N));
    // index k + n e stands for r^k s^e
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            int k = x % n, e = x / n, l = y % n, f = y / n;
            int r = ((k + (e ? -l : l)) % n + n) % n;
            g.mul_[x][y] = r + n * ((e + f) % 2);
        }
    g.finish();
    return g;
}

FinGroup FinGroup::symmetric(int n) {
    require(n >= 1 && n <= 6, Errc::Config, "symmetric groups are supported for n <= 6");
    FinGroup g;
    g.kind_ = Kind::Symmetric;
    g.name_ = "S" + std::to_string(n);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do g.perms_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < g.perms_.size(); ++i) index[g.perms_[i]] = static_cast<int>(i);
    int N = static_cast<int>(g.perms_.size());
    g.mul_.assign(N, std::vector<int>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = g.perms_[a][g.perms_[b][i]];
            g.mul_[a][b] = index.at(c);
        }
    g.finish();
    return g;
}

FinGroup FinGroup::gl2(int q) {
    require(q == 2 || q == 3 || q == 5, Errc::Config, "GL2/SL2 are supported over F_2, F_3, F_5");
    FinGroup g;
    g.kind_ = Kind::GL2;
    g.q_ = q;
    g.name_ = "GL2(F" + std::to_string(q) + ")";
    g.mats_.push_back({1, 0, 0, 1});
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    if (((a * d - b * c) % q + q) % q == 0) continue;
                    if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                    g.mats_.push_back({a, b, c, d});
                }
    std::map<std::array<int, 4>, int> index;
    for (size_t i = 0; i < g.mats_.size(); ++i) index[g.mats_[i]] = static_cast<int>(i);
    int N = static_cast<int>(g.mats_.size());
    g.mul_.assign(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            const auto& m = g.mats_[x];
            const auto& n = g.mats_[y];
            std::array<int, 4> p{(m[0] * n[0] + m[1] * n[2]) % q, (m[0] * n[1] + m[1] * n[3]) % q,
                                 (m[2] * n[0] + m[3] * n[2]) % q, (m[2] * n[1] + m[3] * n[3]) % q};
            g.mul_[x][y] = index.at(p);
        }
    g.finish();
    return g;
}

FinGroup FinGroup::sl2(int q) {
    FinGroup gl = gl2(q);
    std::vector<int> keep;
    for (int i = 0; i < gl.order(); ++i) {
        const auto& m = gl.mats_[i];
        if (((m[0] * m[3] - m[1] * m[2]) % q + q) % q == 1) keep.push_back(i);
    }
    std::vector<int> pos(gl.order(), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    FinGroup g;
    g.kind_ = Kind::SL2;
    g.q_ = q;
    g.name_ = "SL2(F" + std::to_string(q) + ")";
    int N = static_cast<int>(keep.size());
    g.mul_.assign(N, std::vector<int>(N));
    for (int a = 0; a < N; ++a) {
        g.mats_.push_back(gl.mats_[keep[a]]);
        for (int b = 0; b < N; ++b) g.mul_[a][b] = pos[gl.mul(keep[a], keep[b])];
    }
    g.finish();
    return g;
}

FinGroup FinGroup::product(const FinGroup& a, const FinGroup& b) {
    FinGroup g;
    g.kind_ = Kind::Product;
    g.name_ = a.name_ + "x" + b.name_;
    int na = a.order(), nb = b.order(), N = na * nb;
    g.mul_.assign(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) g.mul_[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    g.finish();
    return g;
}

std::string FinGroup::label(int g) const {
    if (kind_ == Kind::Symmetric) {
        const auto& p = perms_.at(g);
        std::vector<bool> seen(p.size(), false);
        std::string s;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i] || p[i] == static_cast<int>(i)) continue;
            s += "(";
            for (size_t j = i; !seen[j]; j = p[j]) {
                seen[j] = true;
                s += (s.back() == '(' ? "" : " ") + std::to_string(j);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }
    if (kind_ == Kind::GL2 || kind_ == Kind::SL2) {
        const auto& m = mats_.at(g);
        return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," +
               std::to_string(m[3]) + "]]";
    }
    return std::to_string(g);
}

int FinGroup::element_of_perm(const std::vector<int>& p) const {
    require(kind_ == Kind::Symmetric, Errc::Config, "not a symmetric group");
    for (size_t i = 0; i < perms_.size(); ++i)
        if (perms_[i] == p) return static_cast<int>(i);
    fail(Errc::Config, "not a permutation of the right size");
}

int FinGroup::element_of_matrix(std::array<int, 4> m) const {
    require(kind_ == Kind::GL2 || kind_ == Kind::SL2, Errc::Config, "not a matrix group");
    for (auto& x : m) x = ((x % q_) + q_) % q_;
    for (size_t i = 0; i < mats_.size(); ++i)
        if (mats_[i] == m) return static_cast<int>(i);
    fail(Errc::Config, "matrix is not an element of " + name_);
}

int FinGroup::perm_sign(int g) const {
    const auto& p = perm(g);
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

// ---------------------------------------------------------------- subgroups

Subgroup subgroup_from_elements(const FinGroup& g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup s;
    s.pos.assign(g.order(), -1);
    for (size_t i = 0; i < elems.size(); ++i) {
        require(elems[i] >= 0 && elems[i] < g.order(), Errc::Config, "subgroup element out of range");
        s.pos[elems[i]] = static_cast<int>(i);
    }
    s.elems = std::move(elems);
    require(!s.elems.empty() && s.elems[0] == 0, Errc::Config, "subgroup does not contain the identity");
    for (int a : s.elems)
        for (int b : s.elems) require(s.contains(g.mul(a, b)), Errc::Config, "subset is not closed under products");
    return s;
}

Subgroup subgroup_from_generators(const FinGroup& g, const std::vector<int>& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<int> el{0};
    in[0] = true;
    for (size_t i = 0; i < el.size(); ++i)
        for (int x : gens) {
            require(x >= 0 && x < g.order(), Errc::Config, "generator out of range");
            int y = g.mul(el[i], x);
            if (!in[y]) {
                in[y] = true;
                el.push_back(y);
            }
        }
    return subgroup_from_elements(g, el);
}

Subgroup whole_group(const FinGroup& g) {
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return subgroup_from_elements(g, all);
}

Subgroup intersect(const FinGroup& g, const Subgroup& a, const Subgroup& b) {
    std::vector<int> el;
    for (int x : a.elems)
        if (b.contains(x)) el.push_back(x);
    return subgroup_from_elements(g, el);
}

Subgroup conjugate(const FinGroup& g, const Subgroup& k, int x) {
    std::vector<int> el;
    for (int y : k.elems) el.push_back(g.conj(x, y));
    return subgroup_from_elements(g, el);
}

Subgroup named_subgroup(const FinGroup& g, const std::string& name) {
    if (name == "trivial") return subgroup_from_elements(g, {0});
    if (name == "all") return whole_group(g);
    std::vector<int> el;
    if (g.kind() == FinGroup::Kind::GL2 || g.kind() == FinGroup::Kind::SL2) {
        for (int i = 0; i < g.order(); ++i) {
            const auto& m = g.matrix(i);
            bool keep = false;
            if (name == "borel") keep = m[2] == 0;
            else if (name == "borel_lower") keep = m[1] == 0;
            else if (name == "unipotent") keep = m[2] == 0 && m[0] == 1 && m[3] == 1;
            else if (name == "unipotent_lower") keep = m[1] == 0 && m[0] == 1 && m[3] == 1;
            else if (name == "torus") keep = m[1] == 0 && m[2] == 0;
            else if (name == "monomial") keep = (m[1] == 0 && m[2] == 0) || (m[0] == 0 && m[3] == 0);
            else fail(Errc::Config, "unknown subgroup '" + name + "' of " + g.name());
            if (keep) el.push_back(i);
        }
        return subgroup_from_elements(g, el);
    }
    if (g.kind() == FinGroup::Kind::Symmetric && name.size() >= 2 && name[0] == 's') {
        int k = std::stoi(name.substr(1));
        for (int i = 0; i < g.order(); ++i) {
            const auto& p = g.perm(i);
            bool keep = true;
            for (size_t j = k; j < p.size(); ++j) keep = keep && p[j] == static_cast<int>(j);
            if (keep) el.push_back(i);
        }
        return subgroup_from_elements(g, el);
    }
    fail(Errc::Config, "unknown subgroup '" + name + "' of " + g.name());
}

// ---------------------------------------------------------------- representations

const SMat& Rep::operator()(int g) const {
    require(g >= 0 && g < static_cast<int>(K.pos.size()) && K.contains(g), Errc::Domain,
            "element " + std::to_string(g) + " is not in the representation's group");
    return mats[K.pos[g]];
}

Rep trivial_rep(const Subgroup& K) {
    Rep r;
    r.K = K;
    r.dim = 1;
    r.mats.assign(K.elems.size(), SMat::identity(1));
    return r;
}

Rep sign_rep(const FinGroup& g, const Subgroup& K) {
    require(g.kind() == FinGroup::Kind::Symmetric, Errc::Config, "sign needs a symmetric group");
    Rep r;
    r.K = K;
    r.dim = 1;
    for (int x : K.elems) r.mats.push_back(SMat::from_rows({{Scalar(g.perm_sign(x))}}));
    return r;
}

Rep rep_from_generators(const FinGroup& g, const Subgroup& K, const std::vector<int>& gens,
                        const std::vector<SMat>& mats) {
    require(gens.size() == mats.size(), Errc::Config, "one matrix per generator expected");
    require(!mats.empty() || K.order() == 1, Errc::Config, "no generators given");
    int dim = mats.empty() ? 1 : mats[0].rows();
    for (const auto& m : mats) require(m.rows() == dim && m.cols() == dim, Errc::Dimension, "generator matrix shape");
    Rep r;
    r.K = K;
    r.dim = dim;
    r.mats.assign(K.elems.size(), SMat());
    std::vector<bool> set(K.elems.size(), false);
    r.mats[0] = SMat::identity(dim);
    set[0] = true;
    std::vector<int> queue{0};
    for (size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (size_t j = 0; j < gens.size(); ++j) {
            require(K.contains(gens[j]), Errc::Config, "generator outside the subgroup");
            int y = g.mul(x, gens[j]);
            SMat m = r.mats[K.pos[x]] * mats[j];
            int p = K.pos[y];
            if (!set[p]) {
                set[p] = true;
                r.mats[p] = std::move(m);
                queue.push_back(y);
            } else {
                require(r.mats[p] == m, Errc::Check, "generator matrices do not define a representation");
            }
        }
    }
    require(queue.size() == K.elems.size(), Errc::Config, "generators do not generate the subgroup");
    std::string why;
    require(verify_rep(g, r, &why), Errc::Check, why);
    return r;
}

Rep torus_character(const FinGroup& g, const Subgroup& K, int e1, int e2, const Ctx* ctx) {
    require(g.kind() == FinGroup::Kind::GL2 || g.kind() == FinGroup::Kind::SL2, Errc::Config,
            "torus characters need GL2 or SL2");
    int q = g.field();
    int m = q - 1;
    // discrete log on F_q^*
    int gen = 0;
    for (int c = 1; c < q && !gen; ++c) {
        int x = 1, ord = 0;
        do {
            x = x * c % q;
            ++ord;
        } while (x != 1);
        if (ord == m) gen = c;
    }
    std::vector<int> dlog(q, -1);
    for (int k = 0, x = 1; k < m; ++k, x = x * gen % q) dlog[x] = k;
    auto root = [&](int k) -> Scalar {
        k = ((k % m) + m) % m;
        if (m <= 2) return Scalar(k == 0 ? 1 : -1);
        require(ctx && ctx->n % m == 0, Errc::Context,
                "torus character over F_" + std::to_string(q) + " needs zeta_" + std::to_string(m));
        return Scalar::zeta(ctx, static_cast<long>(k) * (ctx->n / m));
    };
    Rep r;
    r.K = K;
    r.dim = 1;
    for (int x : K.elems) {
        const auto& a = g.matrix(x);
        require(a[1] == 0 && a[2] == 0, Errc::Config, "torus character on a non-diagonal element");
        r.mats.push_back(SMat::from_rows({{root(e1 * dlog[a[0]] + e2 * dlog[a[3]])}}));
    }
    return r;
}

bool verify_rep(const FinGroup& g, const Rep& r, std::string* why) {
    auto bad = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (!(r(0) == SMat::identity(r.dim))) return bad("rho(1) is not the identity");
    const auto& el = r.K.elems;
    auto check = [&](int a, int b) { return r(g.mul(a, b)) == r(a) * r(b); };
    if (el.size() <= 200) {
        for (int a : el)
            for (int b : el)
                if (!check(a, b)) return bad("rho(gh) != rho(g) rho(h) at (" + g.label(a) + ", " + g.label(b) + ")");
    } else {
        std::mt19937 rng(7);
        std::uniform_int_distribution<size_t> u(0, el.size() - 1);
        for (int it = 0; it < 5000; ++it) {
            int a = el[u(rng)], b = el[u(rng)];
            if (!check(a, b)) return bad("rho(gh) != rho(g) rho(h) at (" + g.label(a) + ", " + g.label(b) + ")");
        }
    }
    return true;
}

// ---------------------------------------------------------------- Hecke functions

bool HeckeFunc::is_zero() const {
    for (const auto& m : values)
        if (!m.is_zero()) return false;
    return true;
}

std::vector<int> HeckeFunc::support() const {
    std::vector<int> out;
    for (size_t i = 0; i < values.size(); ++i)
        if (!values[i].is_zero()) out.push_back(static_cast<int>(i));
    return out;
}

bool operator==(const HeckeFunc& a, const HeckeFunc& b) { return a.values == b.values; }

HeckeFunc HeckeFunc::operator+(const HeckeFunc& o) const {
    require(values.size() == o.values.size(), Errc::Context, "Hecke functions on different groups");
    HeckeFunc r = *this;
    for (size_t i = 0; i < values.size(); ++i) r.values[i] = r.values[i] + o.values[i];
    return r;
}

HeckeFunc HeckeFunc::scaled(const Scalar& c) const {
    HeckeFunc r = *this;
    for (auto& m : r.values) m = c * m;
    return r;
}

HeckeSetting::HeckeSetting(const FinGroup& H, Subgroup K, Rep rho) : H_(H), K_(std::move(K)), rho_(std::move(rho)) {
    require(static_cast<int>(K_.pos.size()) == H_.order(), Errc::Config, "subgroup belongs to another group");
    require(rho_.K.elems == K_.elems, Errc::Config, "representation is not defined on K");
    int n = H_.order();
    rcoset_.assign(n, -1);
    rk_.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (rcoset_[g] >= 0) continue;
        int i = static_cast<int>(right_reps_.size());
        right_reps_.push_back(g);
        for (int k : K_.elems) {
            int x = H_.mul(k, g);
            rcoset_[x] = i;
            rk_[x] = k;
        }
    }
    std::vector<bool> seen(n, false);
    for (int g = 0; g < n; ++g) {
        if (seen[g]) continue;
        left_reps_.push_back(g);
        for (int k : K_.elems) seen[H_.mul(g, k)] = true;
    }
    dcos_of_.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (dcos_of_[g] >= 0) continue;
        int i = static_cast<int>(dcos_.size());
        dcos_.push_back(g);
        for (int a : K_.elems)
            for (int b : K_.elems) dcos_of_[H_.mul(H_.mul(a, g), b)] = i;
    }
}

SMat HeckeSetting::induced(int h) const {
    int m = index(), d = dim();
    SMat out(m * d, m * d);
    for (int i = 0; i < m; ++i) {
        int x = H_.mul(right_reps_[i], h);
        int j = rcoset_[x];
        const SMat& r = rho_(rk_[x]);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) out(i * d + a, j * d + b) = r(a, b);
    }
    return out;
}

SMat HeckeSetting::induced_embedding() const {
    int d = dim();
    SMat out(index() * d, d);
    for (int a = 0; a < d; ++a) out(a, a) = Scalar(1);
    return out;
}

std::vector<SMat> HeckeSetting::intertwiner_space(int g) const {
    int d = dim();
    Subgroup I = intersect(H_, K_, conjugate(H_, K_, g));
    int gi = H_.inv(g);
    // unknown T[r][m] at column r*d+m; equation rows (k, r, c)
    SMat sys(static_cast<int>(I.elems.size()) * d * d, d * d);
    int row = 0;
    for (int k : I.elems) {
        const SMat& A = rho_(H_.mul(H_.mul(gi, k), g));
        const SMat& B = rho_(k);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c, ++row) {
                for (int m = 0; m < d; ++m) {
                    sys(row, r * d + m) += A(m, c);
                    sys(row, m * d + c) -= B(r, m);
                }
            }
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

HeckeFunc HeckeSetting::zero() const {
    HeckeFunc f;
    f.setting = this;
    f.values.assign(H_.order(), SMat(dim(), dim()));
    return f;
}

HeckeFunc HeckeSetting::basis_function(int g, const SMat& T) const {
    HeckeFunc f = zero();
    std::vector<bool> set(H_.order(), false);
    for (int a : K_.elems) {
        SMat left = rho_(a) * T;
        for (int b : K_.elems) {
            int x = H_.mul(H_.mul(a, g), b);
            SMat v = left * rho_(b);
            if (!set[x]) {
                set[x] = true;
                f.values[x] = std::move(v);
            } else {
                require(f.values[x] == v, Errc::Check,
                        "value at " + H_.label(g) + " does not intertwine; the function is not well defined");
            }
        }
    }
    return f;
}

HeckeFunc HeckeSetting::unit() const { return basis_function(0, SMat::identity(dim())); }

std::vector<std::pair<int, HeckeFunc>> HeckeSetting::hecke_basis() const {
    std::vector<std::pair<int, HeckeFunc>> out;
    for (int g : dcos_)
        for (const auto& T : intertwiner_space(g)) out.emplace_back(g, basis_function(g, T));
    return out;
}

HeckeFunc HeckeSetting::convolve(const HeckeFunc& a, const HeckeFunc& b) const {
    require(a.values.size() == static_cast<size_t>(H_.order()) && b.values.size() == a.values.size(),
            Errc::Context, "convolve: functions on different groups");
    HeckeFunc r = zero();
    for (int h : left_reps_) {
        const SMat& ah = a.values[h];
        if (ah.is_zero()) continue;
        int hi = H_.inv(h);
        for (int g = 0; g < H_.order(); ++g) {
            const SMat& bv = b.values[H_.mul(hi, g)];
            if (bv.is_zero()) continue;
            r.values[g] = r.values[g] + ah * bv;
        }
    }
    return r;
}

SMat HeckeSetting::transport(const HeckeFunc& f) const {
    int m = index(), d = dim();
    SMat out(m * d, m * d);
    for (int h : left_reps_) {
        const SMat& fh = f.values[h];
        if (fh.is_zero()) continue;
        int hi = H_.inv(h);
        for (int i = 0; i < m; ++i) {
            int x = H_.mul(hi, right_reps_[i]);
            int j = rcoset_[x];
            SMat blk = fh * rho_(rk_[x]);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) out(i * d + a, j * d + b) += blk(a, b);
        }
    }
    return out;
}

HeckeFunc HeckeSetting::transport_inverse(const SMat& e) const {
    int d = dim();
    require(e.rows() == index() * d && e.cols() == index() * d, Errc::Dimension, "endomorphism has the wrong size");
    HeckeFunc f = zero();
    for (int g = 0; g < H_.order(); ++g) {
        int j = rcoset_[g];
        SMat blk(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) blk(a, b) = e(j * d + a, b);
        f.values[g] = rho_(rk_[g]) * blk;
    }
    return f;
}

std::string HeckeSetting::check(const HeckeFunc& f) const {
    for (int g = 0; g < H_.order(); ++g)
        for (int k : K_.elems) {
            if (!(f.values[H_.mul(k, g)] == rho_(k) * f.values[g]))
                return "left equivariance fails at g=" + H_.label(g) + ", k=" + H_.label(k);
            if (!(f.values[H_.mul(g, k)] == f.values[g] * rho_(k)))
                return "right equivariance fails at g=" + H_.label(g) + ", k=" + H_.label(k);
        }
    for (int g : dcos_) {
        if (f.values[g].is_zero()) continue;
        Subgroup I = intersect(H_, K_, conjugate(H_, K_, g));
        int gi = H_.inv(g);
        for (int k : I.elems)
            if (!(rho_(k) * f.values[g] == f.values[g] * rho_(H_.mul(H_.mul(gi, k), g))))
                return "value at " + H_.label(g) + " does not intertwine";
    }
    return {};
}

std::vector<int> double_cosets(const FinGroup& H, const Subgroup& K, const Subgroup& K2) {
    std::vector<bool> seen(H.order(), false);
    std::vector<int> reps;
    for (int g = 0; g < H.order(); ++g) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int a : K.elems)
            for (int b : K2.elems) seen[H.mul(H.mul(a, g), b)] = true;
    }
    return reps;
}

Subgroup double_coset(const FinGroup& H, const Subgroup& K, const Subgroup& K2, int g) {
    Subgroup s;
    s.pos.assign(H.order(), -1);
    std::vector<bool> in(H.order(), false);
    for (int a : K.elems)
        for (int b : K2.elems) in[H.mul(H.mul(a, g), b)] = true;
    for (int x = 0; x < H.order(); ++x)
        if (in[x]) {
            s.pos[x] = static_cast<int>(s.elems.size());
            s.elems.push_back(x);
        }
    return s;
}

// ---------------------------------------------------------------- q parameter

TwoDecomposition decompose_two(const HeckeSetting& s) {
    auto basis = s.hecke_basis();
    require(basis.size() == 2, Errc::Domain,
            "End_H(ind) has dimension " + std::to_string(basis.size()) + ", expected 2");
    require(basis[0].first == 0, Errc::Domain, "the unit double coset carries no Hecke function");
    TwoDecomposition out;
    out.h = basis[1].first;
    out.E = s.transport(basis[1].second);
    int N = out.E.rows();
    SMat I = SMat::identity(N);
    auto coeffs = express_in_span({out.E, I}, out.E * out.E);
    require(coeffs.has_value(), Errc::Check, "E^2 is not in span{E, 1}");
    out.a = (*coeffs)[0];
    out.b = (*coeffs)[1];
    Scalar disc = out.a * out.a + Scalar(4) * out.b;
    auto sq = sqrt_exact(disc);
    require(sq.has_value(), Errc::Domain, "eigenvalues of the generator need sqrt(" + disc.str() + ")");
    require(!sq->is_zero(), Errc::Domain, "the generator has a repeated eigenvalue");
    out.lambda1 = (out.a + *sq) / Scalar(2);
    out.lambda2 = (out.a - *sq) / Scalar(2);
    Scalar den = (out.lambda1 - out.lambda2).inv();
    out.p1 = den * (out.E - out.lambda2 * I);
    out.p2 = I - out.p1;
    auto rank_of = [](const SMat& p) {
        Scalar t = p.trace();
        require(t.is_rational() && t.rational().get_den() == 1, Errc::Check, "idempotent with non-integral trace");
        return static_cast<int>(t.rational().get_num().get_si());
    };
    out.dim1 = rank_of(out.p1);
    out.dim2 = rank_of(out.p2);
    if (out.dim1 > out.dim2) {
        std::swap(out.p1, out.p2);
        std::swap(out.dim1, out.dim2);
        std::swap(out.lambda1, out.lambda2);
    }
    return out;
}

SMat trace_formula_projector(const HeckeSetting& s, const std::vector<Scalar>& chi, int dim) {
    const FinGroup& H = s.group();
    require(static_cast<int>(chi.size()) == H.order(), Errc::Dimension, "character must have one value per element");
    int N = s.index() * s.dim();
    SMat p(N, N);
    for (int h = 0; h < H.order(); ++h) p = p + chi[h].conj() * s.induced(h);
    return Scalar(Rational(dim, H.order())) * p;
}

Scalar q_parameter(const HeckeSetting& s, int h, const CoeffPlusRule& rule) {
    require(!s.K().contains(h), Errc::Domain, "h lies in K; it must generate a nontrivial double coset");
    TwoDecomposition dec = decompose_two(s);
    require(s.double_coset_of(h) == s.double_coset_of(dec.h), Errc::Domain,
            "h does not lie in the intertwining double coset");
    if (dec.dim1 == dec.dim2) return Scalar(1);
    return coeffplus_select(rule, Scalar(Rational(dec.dim1, dec.dim2)));
}

std::pair<Scalar, Scalar> solve_normalization(const Scalar& a, const Scalar& b, const CoeffPlusRule& rule) {
    require(!b.is_zero(), Errc::Domain, "quadratic relation with b = 0: the generator is not invertible");
    require(!a.is_zero(), Errc::Domain, "quadratic relation with a = 0 forces q = 1, which is excluded");
    Scalar disc = a * a + Scalar(4) * b;
    if (disc.is_zero()) {
        Scalar d = a / (Scalar(2) * b);
        Scalar q = b * d * d;
        require(rule.plus(q), Errc::Domain, "double root gives q = " + q.str() + " outside the plus half");
        return {d, q};
    }
    auto sq = sqrt_exact(disc);
    require(sq.has_value(), Errc::Domain, "normalisation needs sqrt(" + disc.str() + ") in the coefficient context");
    for (int sign : {1, -1}) {
        Scalar d = (a + Scalar(sign) * *sq) / (Scalar(2) * b);
        Scalar q = b * d * d;
        if (rule.plus(q)) return {d, q};
    }
    fail(Errc::Check, "neither root of the normalising quadratic lies in the plus half");
}

NormalizedGenerator normalized_generator(const HeckeSetting& s, int h, const CoeffPlusRule& rule) {
    Scalar qdim = q_parameter(s, h, rule);
    auto sp = s.intertwiner_space(h);
    require(sp.size() == 1, Errc::Domain, "intertwiner space at h is not one-dimensional");
    HeckeFunc phi = s.basis_function(h, sp[0]);
    HeckeFunc sq = s.convolve(phi, phi);
    HeckeFunc unit = s.unit();
    // solve sq = a phi + b unit, reading coefficients at h and at 1
    auto flat = [](const HeckeFunc& f) {
        std::vector<SMat> blocks = f.values;
        int d = blocks[0].rows();
        SMat m(static_cast<int>(blocks.size()) * d, d);
        for (size_t i = 0; i < blocks.size(); ++i)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) m(static_cast<int>(i) * d + r, c) = blocks[i](r, c);
        return m;
    };
    auto coeffs = express_in_span({flat(phi), flat(unit)}, flat(sq));
    require(coeffs.has_value(), Errc::Check, "Phi'^2 is not a combination of Phi' and the unit");
    NormalizedGenerator out;
    out.a = (*coeffs)[0];
    out.b = (*coeffs)[1];
    auto [d, q] = solve_normalization(out.a, out.b, rule);
    require(q == qdim, Errc::Check,
            "quadratic relation gives q = " + q.str() + " but the dimension ratio is " + qdim.str());
    out.d = d;
    out.q = q;
    out.phi = phi.scaled(d);
    return out;
}

}  // namespace hk
