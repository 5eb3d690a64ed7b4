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

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace hk {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

// Arithmetic context Q(zeta_n)(sqrt p).  Contexts are interned; pointers are
// stable for the lifetime of the process.
struct Ctx {
    int n = 1;        // cyclotomic order
    int p = 0;        // prime under the square root, 0 when absent
    int deg = 1;      // phi(n)
    std::vector<Rational> cyclo;                 // monic Phi_n, low degree first
    std::vector<std::vector<Rational>> zpow;     // zeta^k reduced, k < max(n, 2 deg)
    std::vector<std::vector<Rational>> conj_img; // conj(zeta^j) for j < deg

    int width() const { return p ? 2 * deg : deg; }
    bool has_sqrt() const { return p != 0; }
    bool is_base() const { return n == 1 && p == 0; }

    static const Ctx* get(int n, int p);
    static const Ctx* base() { return get(1, 0); }
};

class Scalar {
public:
    Scalar();
    Scalar(long v);  // NOLINT: implicit on purpose, rationals embed everywhere
    Scalar(const Rational& q);  // NOLINT
    Scalar(const Ctx* ctx, const Rational& q);

    static Scalar zeta(const Ctx* ctx, long k);
    static Scalar sqrt_p(const Ctx* ctx);
    static Scalar from_coeffs(const Ctx* ctx, std::vector<Rational> coeffs);

    const Ctx* ctx() const { return ctx_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational() const;  // throws unless is_rational()
    // True when the value lies in Q(sqrt p): every zeta part beyond the constant vanishes.
    bool in_real_quadratic() const;
    // a + b sqrt(p) parts, only meaningful when in_real_quadratic().
    Rational rat_part() const;
    Rational sqrt_part() const;
    // Sign for values in Q(sqrt p), with sqrt p taken positive.
    int sign() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inv() const;
    Scalar pow(long k) const;
    Scalar conj() const;
    Scalar abs2() const { return *this * conj(); }
    Scalar promoted(const Ctx* target) const;

    std::string str() const;
    static Scalar parse(const Ctx* ctx, const std::string& s);

    // Total order used only for canonical container keys.
    friend bool key_less(const Scalar& a, const Scalar& b);

private:
    const Ctx* ctx_;
    std::vector<Rational> c_;  // [a_0..a_{deg-1}, b_0..b_{deg-1}] for a + b sqrt p
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

const Ctx* common_ctx(const Ctx* a, const Ctx* b);

// (sqrt p)^k.
Scalar half_power_of_p(const Ctx* ctx, long k);

// Exact square root inside the context, when one exists there.
std::optional<Scalar> sqrt_exact(const Scalar& x);

// Roots of unity of the context: the pool used by cocycle and character searches.
std::vector<Scalar> roots_of_unity(const Ctx* ctx);

class CoeffPlusRule {
public:
    virtual ~CoeffPlusRule() = default;
    virtual bool plus(const Scalar& q) const = 0;
    virtual std::string name() const = 0;
};

// Plus iff the value is real (in Q(sqrt p)) with absolute value greater than 1.
// On positive values this is "q > 1".  The element -1 equals its own inverse
// and is admitted so that exactly one of {q, 1/q} is always selected.
class RealGreaterThanOne : public CoeffPlusRule {
public:
    bool plus(const Scalar& q) const override;
    std::string name() const override { return "|q|>1"; }
};

const CoeffPlusRule& default_rule();

Scalar coeffplus_select(const CoeffPlusRule& rule, const Scalar& q);

}  // namespace hk
