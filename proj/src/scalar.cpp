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

#include "scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>

namespace hk {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division of a by monic-or-not b; asserts zero remainder.
Poly poly_div_exact(Poly a, const Poly& b) {
    trim(a);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < db) return {};
    Poly q(a.size() - b.size() + 1);
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        Rational f = a[i] / b[db];
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
    }
    trim(a);
    require(a.empty(), Errc::Domain, "cyclotomic division left a remainder");
    return q;
}

Poly cyclotomic(int n) {
    Poly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = poly_div_exact(num, cyclotomic(d));
    return num;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// sqrt p already lies in Q(zeta_n) in these cases, which would break the
// a + b sqrt p normal form.
bool sqrt_inside_cyclotomic(int n, int p) {
    if (p == 2) return n % 8 == 0;
    if (p % 4 == 1) return n % p == 0;
    return n % (4 * p) == 0;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return Rational(0);
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
}

}  // namespace

Rational parse_rational(const std::string& s) {
    Rational q;
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) fail(Errc::Config, "empty rational");
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    for (char ch : t)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-'))
            fail(Errc::Config, "malformed rational '" + s + "'");
    if (q.set_str(t, 10) != 0) fail(Errc::Config, "malformed rational '" + s + "'");
    if (sgn(q.get_den()) == 0) fail(Errc::Config, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

const Ctx* Ctx::get(int n, int p) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Ctx>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, p);
    auto it = table.find(key);
    if (it != table.end()) return it->second.get();

    require(n >= 1, Errc::Config, "cyclotomic order must be positive");
    require(p == 0 || is_prime(p), Errc::Config, "p must be prime, got " + std::to_string(p));
    require(p == 0 || !sqrt_inside_cyclotomic(n, p), Errc::Config,
            "sqrt(" + std::to_string(p) + ") already lies in Q(zeta_" + std::to_string(n) +
                "); choose a smaller cyclotomic order");

    auto c = std::make_unique<Ctx>();
    c->n = n;
    c->p = p;
    c->cyclo = cyclotomic(n);
    c->deg = static_cast<int>(c->cyclo.size()) - 1;
    int d = c->deg;
    int kmax = std::max(n, 2 * d);
    Poly cur(d);
    cur[0] = 1;
    for (int k = 0; k < kmax; ++k) {
        c->zpow.push_back(cur);
        // multiply by x and reduce with x^d = -sum cyclo[i] x^i
        Rational top = cur[d - 1];
        for (int i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (int i = 0; i < d; ++i) cur[i] -= top * c->cyclo[i];
    }
    for (int j = 0; j < d; ++j) c->conj_img.push_back(c->zpow[(n - j) % n]);
    const Ctx* out = c.get();
    table.emplace(key, std::move(c));
    return out;
}

const Ctx* common_ctx(const Ctx* a, const Ctx* b) {
    if (a == b) return a;
    if (a->is_base()) return b;
    if (b->is_base()) return a;
    fail(Errc::Context, "mixed scalar contexts (n=" + std::to_string(a->n) + ",p=" +
                            std::to_string(a->p) + ") and (n=" + std::to_string(b->n) +
                            ",p=" + std::to_string(b->p) + ")");
}

Scalar::Scalar() : ctx_(Ctx::base()), c_(1) {}
Scalar::Scalar(long v) : ctx_(Ctx::base()), c_{Rational(v)} {}
Scalar::Scalar(const Rational& q) : ctx_(Ctx::base()), c_{q} { c_[0].canonicalize(); }
Scalar::Scalar(const Ctx* ctx, const Rational& q) : ctx_(ctx), c_(ctx->width()) {
    c_[0] = q;
    c_[0].canonicalize();
}

Scalar Scalar::zeta(const Ctx* ctx, long k) {
    long n = ctx->n;
    long e = ((k % n) + n) % n;
    Scalar s(ctx, 0);
    for (int i = 0; i < ctx->deg; ++i) s.c_[i] = ctx->zpow[e][i];
    return s;
}

Scalar Scalar::sqrt_p(const Ctx* ctx) {
    require(ctx->has_sqrt(), Errc::Domain, "context has no square root of p");
    Scalar s(ctx, 0);
    s.c_[ctx->deg] = 1;
    return s;
}

Scalar Scalar::from_coeffs(const Ctx* ctx, std::vector<Rational> coeffs) {
    require(static_cast<int>(coeffs.size()) == ctx->width(), Errc::Dimension,
            "coefficient vector has the wrong width");
    Scalar s(ctx, 0);
    s.c_ = std::move(coeffs);
    for (auto& q : s.c_) q.canonicalize();
    return s;
}

Scalar Scalar::promoted(const Ctx* target) const {
    if (target == ctx_) return *this;
    if (!ctx_->is_base() && ctx_->p == 0 && target->n == ctx_->n) {
        // Q(zeta_n) sits inside Q(zeta_n)(sqrt p) as the part without sqrt p
        std::vector<Rational> c(c_);
        c.resize(target->width(), Rational(0));
        return from_coeffs(target, std::move(c));
    }
    require(ctx_->is_base(), Errc::Context, "cannot move a scalar between contexts");
    return Scalar(target, c_[0]);
}

bool Scalar::is_zero() const {
    for (const auto& q : c_)
        if (sgn(q) != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

bool Scalar::is_one() const { return is_rational() && c_[0] == 1; }

Rational Scalar::rational() const {
    require(is_rational(), Errc::Domain, "scalar " + str() + " is not rational");
    return c_[0];
}

bool Scalar::in_real_quadratic() const {
    int d = ctx_->deg;
    for (int i = 1; i < d; ++i)
        if (sgn(c_[i]) != 0) return false;
    if (ctx_->p)
        for (int i = d + 1; i < 2 * d; ++i)
            if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational Scalar::rat_part() const { return c_[0]; }
Rational Scalar::sqrt_part() const { return ctx_->p ? c_[ctx_->deg] : Rational(0); }

int Scalar::sign() const {
    require(in_real_quadratic(), Errc::Domain, "no decidable real embedding for " + str());
    Rational a = rat_part(), b = sqrt_part();
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational a2 = a * a, pb2 = Rational(ctx_->p) * b * b;
    return a2 > pb2 ? sa : sb;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    const Ctx* c = common_ctx(ctx_, o.ctx_);
    if (c != ctx_) *this = promoted(c);
    if (o.ctx_ == c) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else {
        c_[0] += o.c_[0];
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

namespace {

// Product of two Q(zeta_n) coefficient blocks of length deg.
void zmul(const Ctx* ctx, const Rational* a, const Rational* b, Rational* out) {
    int d = ctx->deg;
    if (d == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    std::vector<Rational> prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < d; ++j)
            if (sgn(b[j]) != 0) prod[i + j] += a[i] * b[j];
    }
    for (int i = 0; i < d; ++i) out[i] = 0;
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (sgn(prod[k]) == 0) continue;
        if (k < d) {
            out[k] += prod[k];
            continue;
        }
        const auto& z = ctx->zpow[k];
        for (int i = 0; i < d; ++i)
            if (sgn(z[i]) != 0) out[i] += prod[k] * z[i];
    }
}

// Inverse in Q(zeta_n) by solving the multiplication-matrix system.
std::vector<Rational> zinv(const Ctx* ctx, const Rational* a) {
    int d = ctx->deg;
    if (d == 1) {
        require(sgn(a[0]) != 0, Errc::Domain, "division by zero");
        return {1 / a[0]};
    }
    // column j of M is a * zeta^j
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    std::vector<Rational> basis(d), col(d);
    for (int j = 0; j < d; ++j) {
        std::fill(basis.begin(), basis.end(), Rational(0));
        basis[j] = 1;
        zmul(ctx, a, basis.data(), col.data());
        for (int i = 0; i < d; ++i) m[i][j] = col[i];
    }
    m[0][d] = 1;
    for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r = c; r < d; ++r)
            if (sgn(m[r][c]) != 0) {
                piv = r;
                break;
            }
        require(piv >= 0, Errc::Domain, "division by zero");
        std::swap(m[c], m[piv]);
        Rational f = m[c][c];
        for (int k = c; k <= d; ++k) m[c][k] /= f;
        for (int r = 0; r < d; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rational g = m[r][c];
            for (int k = c; k <= d; ++k) m[r][k] -= g * m[c][k];
        }
    }
    std::vector<Rational> out(d);
    for (int i = 0; i < d; ++i) out[i] = m[i][d];
    return out;
}

}  // namespace

Scalar& Scalar::operator*=(const Scalar& o) {
    const Ctx* c = common_ctx(ctx_, o.ctx_);
    if (o.ctx_ != c) {
        Rational f = o.c_[0];
        for (auto& q : c_) q *= f;
        return *this;
    }
    if (ctx_ != c) {
        Rational f = c_[0];
        *this = o;
        for (auto& q : c_) q *= f;
        return *this;
    }
    int d = c->deg;
    if (!c->p) {
        std::vector<Rational> out(d);
        zmul(c, c_.data(), o.c_.data(), out.data());
        c_ = std::move(out);
        return *this;
    }
    std::vector<Rational> t1(d), t2(d), out(2 * d);
    const Rational *a1 = c_.data(), *b1 = c_.data() + d;
    const Rational *a2 = o.c_.data(), *b2 = o.c_.data() + d;
    zmul(c, a1, a2, t1.data());
    zmul(c, b1, b2, t2.data());
    for (int i = 0; i < d; ++i) out[i] = t1[i] + Rational(c->p) * t2[i];
    zmul(c, a1, b2, t1.data());
    zmul(c, b1, a2, t2.data());
    for (int i = 0; i < d; ++i) out[d + i] = t1[i] + t2[i];
    c_ = std::move(out);
    return *this;
}

Scalar Scalar::inv() const {
    require(!is_zero(), Errc::Domain, "division by zero");
    const Ctx* c = ctx_;
    int d = c->deg;
    if (!c->p) return from_coeffs(c, zinv(c, c_.data()));
    // (a + b r)^{-1} = (a - b r) / (a^2 - p b^2)
    std::vector<Rational> a(c_.begin(), c_.begin() + d), b(c_.begin() + d, c_.end());
    std::vector<Rational> aa(d), bb(d), norm(d);
    zmul(c, a.data(), a.data(), aa.data());
    zmul(c, b.data(), b.data(), bb.data());
    for (int i = 0; i < d; ++i) norm[i] = aa[i] - Rational(c->p) * bb[i];
    std::vector<Rational> ninv = zinv(c, norm.data());
    std::vector<Rational> out(2 * d);
    zmul(c, a.data(), ninv.data(), out.data());
    zmul(c, b.data(), ninv.data(), out.data() + d);
    for (int i = d; i < 2 * d; ++i) out[i] = -out[i];
    return from_coeffs(c, std::move(out));
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    Scalar result(ctx_, 1), base = *this;
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

Scalar Scalar::conj() const {
    const Ctx* c = ctx_;
    int d = c->deg;
    if (d == 1) return *this;
    Scalar r(c, 0);
    for (int block = 0; block < (c->p ? 2 : 1); ++block)
        for (int j = 0; j < d; ++j) {
            const Rational& f = c_[block * d + j];
            if (sgn(f) == 0) continue;
            for (int i = 0; i < d; ++i) r.c_[block * d + i] += f * c->conj_img[j][i];
        }
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.ctx_ == b.ctx_) return a.c_ == b.c_;
    common_ctx(a.ctx_, b.ctx_);
    const Scalar& wide = a.ctx_->is_base() ? b : a;
    const Scalar& narrow = a.ctx_->is_base() ? a : b;
    return wide.is_rational() && wide.c_[0] == narrow.c_[0];
}

bool key_less(const Scalar& a, const Scalar& b) {
    // rationals compare by value regardless of context so that keys stay
    // consistent with operator== across promotion
    if (a.is_rational() && b.is_rational()) return a.c_[0] < b.c_[0];
    if (a.is_rational() != b.is_rational()) return a.is_rational();
    if (a.ctx_ != b.ctx_)
        return std::make_pair(a.ctx_->n, a.ctx_->p) < std::make_pair(b.ctx_->n, b.ctx_->p);
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string Scalar::str() const {
    int d = ctx_->deg;
    std::vector<std::string> terms;
    for (int block = 0; block < (ctx_->p ? 2 : 1); ++block)
        for (int j = d - 1; j >= 0; --j) {
            const Rational& f = c_[block * d + j];
            if (sgn(f) == 0) continue;
            std::string mono;
            if (j == 1) mono = "z";
            if (j > 1) mono = "z^" + std::to_string(j);
            if (block == 1) mono += mono.empty() ? "r" : "*r";
            std::string t;
            if (mono.empty())
                t = f.get_str();
            else if (f == 1)
                t = mono;
            else if (f == -1)
                t = "-" + mono;
            else
                t = f.get_str() + "*" + mono;
            terms.push_back(t);
        }
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (size_t i = 1; i < terms.size(); ++i) {
        if (terms[i][0] == '-')
            out += " - " + terms[i].substr(1);
        else
            out += " + " + terms[i];
    }
    return out;
}

Scalar Scalar::parse(const Ctx* ctx, const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) fail(Errc::Config, "empty scalar string");
    size_t i = 0;
    Scalar total(ctx, 0);
    auto bad = [&]() { fail(Errc::Config, "malformed scalar '" + s + "'"); };
    auto read_int = [&](long& out) {
        size_t st = i;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i == st || !std::isdigit(static_cast<unsigned char>(t[i - 1]))) bad();
        out = std::stol(t.substr(st, i - st));
    };
    bool first = true;
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            bad();
        }
        first = false;
        Scalar term(ctx, sign);
        bool need_factor = true;
        while (need_factor) {
            if (i >= t.size()) bad();
            char ch = t[i];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                size_t st = i;
                while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/'))
                    ++i;
                term *= Scalar(ctx, parse_rational(t.substr(st, i - st)));
            } else if (ch == 'z' || ch == 'r') {
                ++i;
                long e = 1;
                if (i < t.size() && t[i] == '^') {
                    ++i;
                    read_int(e);
                }
                if (ch == 'z')
                    term *= zeta(ctx, e);
                else
                    term *= half_power_of_p(ctx, e);
            } else {
                bad();
            }
            need_factor = i < t.size() && t[i] == '*';
            if (need_factor) ++i;
        }
        total += term;
    }
    return total;
}

Scalar half_power_of_p(const Ctx* ctx, long k) {
    require(ctx->has_sqrt(), Errc::Domain, "context lacks a prime p");
    return Scalar::sqrt_p(ctx).pow(k);
}

std::optional<Scalar> sqrt_exact(const Scalar& x) {
    const Ctx* c = x.ctx();
    if (x.is_zero()) return Scalar(c, 0);
    if (x.in_real_quadratic()) {
        Rational a = x.rat_part(), b = x.sqrt_part();
        if (sgn(b) == 0) {
            bool neg = sgn(a) < 0;
            Rational m = neg ? Rational(-a) : a;
            std::optional<Scalar> root;
            if (auto r = rational_sqrt(m)) root = Scalar(c, *r);
            else if (c->p) {
                if (auto r2 = rational_sqrt(m / c->p)) root = Scalar(c, *r2) * Scalar::sqrt_p(c);
            }
            if (!root) return std::nullopt;
            if (!neg) return root;
            if (c->n % 4 != 0) return std::nullopt;
            return *root * Scalar::zeta(c, c->n / 4);
        }
        // (u + v r)^2 = a + b r  with u^2 + p v^2 = a and 2uv = b
        Rational disc = a * a - Rational(c->p) * b * b;
        if (auto s = rational_sqrt(disc)) {
            for (int sg : {1, -1}) {
                Rational t = (a + sg * *s) / 2;
                if (auto u = rational_sqrt(t)) {
                    if (sgn(*u) == 0) continue;
                    Rational v = b / (2 * *u);
                    Scalar cand = Scalar(c, *u) + Scalar(c, v) * Scalar::sqrt_p(c);
                    if (cand * cand == x) return cand;
                }
            }
        }
    }
    // roots of unity: zeta^k has a square root inside when some zeta^j squares to it
    for (long j = 0; j < c->n; ++j) {
        Scalar z = Scalar::zeta(c, j);
        if (z * z == x) return z;
        if (-(z * z) == x && c->n % 4 == 0) return z * Scalar::zeta(c, c->n / 4);
    }
    return std::nullopt;
}

std::vector<Scalar> roots_of_unity(const Ctx* ctx) {
    std::vector<Scalar> out;
    auto add = [&](const Scalar& s) {
        for (const auto& o : out)
            if (o == s) return;
        out.push_back(s);
    };
    for (long k = 0; k < ctx->n; ++k) add(Scalar::zeta(ctx, k));
    for (long k = 0; k < ctx->n; ++k) add(-Scalar::zeta(ctx, k));
    return out;
}

bool RealGreaterThanOne::plus(const Scalar& q) const {
    if (q == Scalar(-1)) return true;
    Scalar mag = q.sign() < 0 ? -q : q;
    return (mag - Scalar(1)).sign() > 0;
}

const CoeffPlusRule& default_rule() {
    static const RealGreaterThanOne rule;
    return rule;
}

Scalar coeffplus_select(const CoeffPlusRule& rule, const Scalar& q) {
    require(!q.is_zero(), Errc::Domain, "coeffplus_select: q = 0 is not invertible");
    require(!q.is_one(), Errc::Domain, "coeffplus_select: q = 1 is excluded");
    Scalar qi = q.inv();
    bool a = rule.plus(q), b = rule.plus(qi);
    if (q == qi) {
        require(a, Errc::Check, "rule " + rule.name() + " rejects the self-inverse " + q.str());
        return q;
    }
    require(a != b, Errc::Check,
            "rule " + rule.name() + " does not select exactly one of " + q.str() + ", " + qi.str());
    return a ? q : qi;
}

}  // namespace hk
