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

#include <map>

#include "config.hpp"
#include "error.hpp"

namespace hk::cfg {

namespace {

const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table{
        {"affine-a1", R"({
  "schema": 1,
  "context": {"cyclotomic": 1, "p": 0},
  "arrangement": {"dim": 1, "basepoint": ["1/3"],
                  "families": [{"gradient": ["1"], "base": "0", "period": "1", "relevant": true}]},
  "weyl": {"base": ["1/3"]},
  "hecke": {"q": ["2", "2"], "mu": {"kind": "trivial"}}
})"},
        {"affine-a1-extended", R"({
  "schema": 1,
  "context": {"cyclotomic": 4, "p": 0},
  "arrangement": {"dim": 1, "basepoint": ["1/3"],
                  "families": [{"gradient": ["1"], "base": "0", "period": "1", "relevant": true}]},
  "weyl": {"base": ["1/3"],
           "omega": {"generators": [{"A": [["-1"]], "b": ["1"]}], "order": 2}},
  "hecke": {"q": ["2", "2"], "mu": {"kind": "trivial"}}
})"},
        {"pauli-cocycle", R"({
  "schema": 1,
  "context": {"cyclotomic": 4, "p": 0},
  "arrangement": {"dim": 1, "basepoint": ["0"], "families": []},
  "weyl": {"base": ["0"],
           "omega": {"table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
                     "labels": ["1", "a", "b", "ab"]}},
  "hecke": {"q": [],
            "mu": {"kind": "table",
                   "table": [["1", "1", "1", "1"], ["1", "1", "1", "1"],
                             ["1", "-1", "1", "-1"], ["1", "-1", "1", "-1"]]}}
})"},
        {"a2-levi", R"({
  "schema": 1,
  "context": {"cyclotomic": 1, "p": 0},
  "root_datum": {"type": "A2", "levi": [0], "x0": ["0", "1/3"]}
})"},
        {"s4s3", R"({
  "schema": 1,
  "context": {"cyclotomic": 1, "p": 0},
  "finite_group": {"group": {"kind": "symmetric", "param": 4}, "subgroup": {"named": "s3"}, "rep": {"kind": "trivial"}}
})"},
        {"gl2f2-cover", R"({
  "schema": 1,
  "context": {"cyclotomic": 1},
  "cover": {
    "group": {"kind": "gl2", "param": 2},
    "subgroups": {
      "B": {"named": "borel"},
      "Bl": {"named": "borel_lower"},
      "U": {"generators": [{"matrix": [1, 1, 0, 1]}]},
      "Ul": {"generators": [{"matrix": [1, 0, 1, 1]}]},
      "M": {"named": "torus"}
    },
    "reps": {
      "rho_x": {"subgroup": "B", "kind": "trivial"},
      "rho_y": {"subgroup": "Bl", "kind": "trivial"},
      "theta_x": {"subgroup": "U", "kind": "values", "values": [{"element": {"matrix": [1, 1, 0, 1]}, "value": "1"}]},
      "theta_y": {"subgroup": "Ul", "kind": "trivial"},
      "rho_M": {"subgroup": "M", "kind": "trivial"}
    },
    "levi": {"K": "M", "rho": "rho_M"},
    "points": [
      {"name": "x", "K": "B", "K_plus": "U", "rho": "rho_x", "theta": "theta_x"},
      {"name": "y", "K": "Bl", "K_plus": "Ul", "rho": "rho_y", "theta": "theta_y"}
    ],
    "base_point": "x",
    "distance": [[0, 1], [1, 0]],
    "unipotents": [{"U": "U", "Ubar": "Ul"}, {"U": "Ul", "Ubar": "U"}],
    "n_heart": {"generators": [{"matrix": [0, 1, 1, 0]}], "action": [["y", "x"]]}
  }
})"},
        {"gl2f3-cover", R"({
  "schema": 1,
  "context": {"cyclotomic": 1},
  "cover": {
    "group": {"kind": "gl2", "param": 3},
    "subgroups": {
      "B": {"named": "borel"},
      "Bl": {"named": "borel_lower"},
      "U": {"generators": [{"matrix": [1, 1, 0, 1]}]},
      "Ul": {"generators": [{"matrix": [1, 0, 1, 1]}]},
      "M": {"generators": [{"matrix": [2, 0, 0, 1]}, {"matrix": [1, 0, 0, 2]}]}
    },
    "reps": {
      "rho_x": {"subgroup": "B", "kind": "trivial"},
      "rho_y": {"subgroup": "Bl", "kind": "trivial"},
      "theta_x": {"subgroup": "U", "kind": "trivial"},
      "theta_y": {"subgroup": "Ul", "kind": "trivial"},
      "rho_M": {"subgroup": "M", "kind": "trivial"}
    },
    "levi": {"K": "M", "rho": "rho_M"},
    "points": [
      {"name": "x", "K": "B", "K_plus": "U", "rho": "rho_x", "theta": "theta_x"},
      {"name": "y", "K": "Bl", "K_plus": "Ul", "rho": "rho_y", "theta": "theta_y"}
    ],
    "base_point": "x",
    "distance": [[0, 1], [1, 0]],
    "unipotents": [{"U": "U", "Ubar": "Ul"}, {"U": "Ul", "Ubar": "U"}],
    "n_heart": {
      "generators": [{"matrix": [0, 1, 1, 0]}, {"matrix": [2, 0, 0, 1]}, {"matrix": [1, 0, 0, 2]}],
      "action": [["y", "x"], ["x", "y"], ["x", "y"]]
    }
  }
})"},
        {"d4-cocycle-cover", R"({
  "schema": 1,
  "context": {"cyclotomic": 1},
  "cover": {
    "group": {"kind": "dihedral", "param": 4},
    "subgroups": {
      "Z": {"generators": [2]},
      "one": {"named": "trivial"}
    },
    "reps": {
      "rho": {"subgroup": "Z", "kind": "generators", "generators": [2], "matrices": [[["-1"]]]},
      "theta": {"subgroup": "one", "kind": "trivial"}
    },
    "levi": {"K": "Z", "rho": "rho"},
    "points": [{"name": "x", "K": "Z", "K_plus": "one", "rho": "rho", "theta": "theta"}],
    "base_point": "x",
    "distance": [[0]],
    "n_heart": {"generators": [1, 4], "action": [["x"], ["x"]]}
  }
})"},
    };
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : presets()) out.push_back(k);
    return out;
}

std::string preset_text(const std::string& name) {
    auto it = presets().find(name);
    if (it == presets().end()) {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        fail(Errc::Config, "unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

}  // namespace hk::cfg
