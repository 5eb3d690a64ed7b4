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

// Run configurations: JSON text in, model objects out.  All JSON handling lives in app.cpp.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cover_model.hpp"
#include "hecke_algebra.hpp"
#include "rootdata.hpp"

namespace hk::cfg {

struct RootSpec {
    std::string type;
    LeviSubset levi;
    Point x0;
    std::unique_ptr<RootSystem> rs;
    std::unique_ptr<DepthZero> dz;
};

struct FinSpec {
    std::shared_ptr<FinGroup> group;
    std::optional<Subgroup> sub;
    std::optional<Rep> rep;
};

// Everything a configuration can describe.  Members that other members refer to are held by
// pointer so the model can be moved.
struct Model {
    const Ctx* ctx = nullptr;
    std::unique_ptr<Arrangement> arr;
    std::unique_ptr<InnerProduct> ip;
    std::optional<RootSpec> roots;
    std::unique_ptr<ReflectionGroupData> group;
    std::unique_ptr<OmegaGroup> omega;
    std::vector<Scalar> q;
    std::unique_ptr<Cocycle> mu;
    std::unique_ptr<HeckeAlgebra> alg;
    std::optional<FinSpec> fin;
    std::unique_ptr<CoverFamily> cover;
    std::optional<TFamily> T;
};

std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);  // throws Config on unknown names

// Parses and validates a configuration.  Throws hk::Error (Config for schema problems).
Model load_model(const std::string& json_text);

// Finite-group shorthands used by the CLI: "s4", "gl2:3", "sl2:3", "d4", "c6", "dihedral:4", "cyclic:6".
std::shared_ptr<FinGroup> group_from_name(const std::string& name);
// "trivial", "sign", "torus:e1,e2".
Rep rep_from_name(const FinGroup& g, const Subgroup& K, const std::string& name, const Ctx* ctx);

}  // namespace hk::cfg
