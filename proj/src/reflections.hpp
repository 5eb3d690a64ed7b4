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

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "affine_iso.hpp"
#include "geometry.hpp"

namespace hk {

// Strict (> 0) or non-strict (>= 0) linear inequality a.x + c.
struct LinIneq {
    QVec a;
    Rational c;
    bool strict = true;
};

// Exact feasibility by Fourier-Motzkin elimination.
bool fm_feasible(std::vector<LinIneq> rows, int nvars);

using Word = std::vector<int>;

struct Wall {
    AffineForm form;   // member of its family, with the family's gradient
    size_t family = 0; // index into the relevant-only arrangement
    AffineIso refl;
};

class ReflectionGroupData {
public:
    // Restricts to relevant families, finds the chamber walls of x0bar.
    ReflectionGroupData(const Arrangement& arr, const InnerProduct& ip, const Point& x0bar);

    const Arrangement& arrangement() const { return arr_; }
    const InnerProduct& ip() const { return ip_; }
    const Point& base() const { return x0_; }
    const std::vector<Wall>& walls() const { return walls_; }
    size_t rank() const { return walls_.size(); }
    int dim() const { return arr_.dim(); }
    const AffineIso& s(size_t i) const { return walls_.at(i).refl; }

    // Slab radius at which the wall set stabilised.
    const Rational& slab_radius() const { return radius_; }

    // Index of a simple reflection equal to g, if any.
    std::optional<int> simple_index(const AffineIso& g) const;
    AffineIso word_iso(const Word& w) const;

    size_t step_bound = 100000;

private:
    Arrangement arr_;
    InnerProduct ip_;
    Point x0_;
    std::vector<Wall> walls_;
    Rational radius_;
};

// Walls of the chamber through x0bar for the given arrangement (all families are used).
std::vector<Wall> chamber_walls(const Arrangement& arr, const InnerProduct& ip, const Point& x0bar,
                                Rational* radius_out = nullptr);

// Order of s_i o s_j, or nullopt if it reaches the cutoff.
std::optional<int> braid_order(const ReflectionGroupData& d, int i, int j, int cutoff = 24);

struct WalkResult {
    bool in_waff = false;
    Word word;           // g = s_{w1} o ... o s_{wk} o residual
    AffineIso residual;  // identity when in_waff
};

// Descent walk.  With rng set, ties between descents are broken at random.
WalkResult reduced_word(const ReflectionGroupData& d, const AffineIso& g, std::mt19937* rng = nullptr);

// distance(x0bar, g^{-1} x0bar) on the relevant arrangement.
int length(const ReflectionGroupData& d, const AffineIso& g);

// Chamber-stabilising group, either finite (multiplication table) or infinite cyclic.
class OmegaGroup {
public:
    // Trivial group.
    static OmegaGroup trivial(const ReflectionGroupData& d);
    // Closure of generators.  order < 0 declares the infinite cyclic case (one generator).
    static OmegaGroup from_isos(const ReflectionGroupData& d, const std::vector<AffineIso>& gens,
                                long order);
    // Abstract finite group given by its table.  It commutes with every simple reflection:
    // t s_i t^-1 = s_i for the num_simple reflections of the data it is paired with.
    static OmegaGroup from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels = {},
                                 int num_simple = 0);

    bool finite() const { return finite_; }
    long size() const { return finite_ ? static_cast<long>(table_.size()) : -1; }
    long identity() const { return 0; }
    long mul(long a, long b) const;
    long inv(long a) const;
    bool has_isos() const { return !isos_.empty() || !finite_; }
    AffineIso iso(long a) const;
    std::optional<long> find(const AffineIso& g) const;
    // Index of t s_i t^{-1} in S.
    int conj_s(long t, int i) const;
    std::vector<long> generators() const { return gens_; }
    std::string label(long a) const;
    const std::vector<std::vector<int>>& table() const { return table_; }

private:
    bool finite_ = true;
    std::vector<std::vector<int>> table_;
    std::vector<AffineIso> isos_;
    std::vector<std::vector<int>> sperm_;  // finite case
    std::vector<long> gens_;
    std::vector<std::string> labels_;
    // infinite cyclic
    AffineIso gen_, gen_inv_;
    std::vector<int> gen_perm_, gen_inv_perm_;
    int dim_ = 0;
};

struct ExtendedElement {
    long omega = 0;
    Word word;
};

ExtendedElement decompose(const ReflectionGroupData& d, const OmegaGroup& om, const AffineIso& g);
AffineIso extended_iso(const ReflectionGroupData& d, const OmegaGroup& om, const ExtendedElement& e);
int conjugate_simple(const OmegaGroup& om, long t, int i);
std::vector<std::vector<int>> simple_conjugacy_classes(const ReflectionGroupData& d,
                                                       const OmegaGroup& om, int cutoff = 24);

// Thread-safe memo of reduced words keyed by isometry.
class WordCache {
public:
    const WalkResult& get(const ReflectionGroupData& d, const AffineIso& g);

private:
    std::mutex mu_;
    std::map<AffineIso, WalkResult> memo_;
};

}  // namespace hk
