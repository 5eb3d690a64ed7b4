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

// hecke-cli: command-line front end over the C interface.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hecke/hecke.h"

namespace {

struct Common {
    std::string action;
    std::string config;
    std::string preset;
    std::string out;
    int threads = 1;
    int cutoff = 24;
    bool relevant = false;
    std::map<std::string, std::string> values;
};

// String-valued options forwarded verbatim to the library.
const std::vector<std::pair<std::string, std::string>>& value_options() {
    static const std::vector<std::pair<std::string, std::string>> o{
        {"x", "point, e.g. 1/3 or 1/3,2/5"},
        {"y", "second point"},
        {"z", "third point, enables the triangle check"},
        {"g", "affine isometry as JSON {\"A\": [[..]], \"b\": [..]}"},
        {"word", "word in the simple reflections, JSON list"},
        {"a", "Hecke element as JSON [{\"omega\", \"word\", \"coeff\"}]"},
        {"b", "second Hecke element"},
        {"maxlen", "maximal length for exhaustive checks"},
        {"pairs", "number of random pairs"},
        {"seed", "random seed"},
        {"group", "finite group: s4, gl2:3, sl2:3, d4, c6, ..."},
        {"sub", "named subgroup: borel, torus, s3, ..."},
        {"rep", "representation: trivial, sign, torus:e1,e2"},
        {"star", "restrict autos to star-preserving ones (true/false)"},
        {"scan", "also scan all support-preserving rescalings (true/false)"},
    };
    return o;
}

const std::map<std::string, std::vector<std::string>>& commands() {
    static const std::map<std::string, std::vector<std::string>> c{
        {"arr", {"info", "distance", "generic"}},
        {"roots", {"build", "quotient"}},
        {"weyl", {"walls", "word", "decompose", "orders"}},
        {"hecke", {"mul", "assoc", "check-assoc", "autos", "star", "cocycle"}},
        {"fingrp", {"cosets", "induce", "q", "generator"}},
        {"cover", {"validate", "relations", "report"}},
        {"verify", {"all"}},
    };
    return c;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

int execute(const std::string& command, const Common& c) {
    std::unique_ptr<hk_request, decltype(&hk_request_free)> req(hk_request_new(command.c_str(), c.action.c_str()),
                                                                hk_request_free);
    if (!req) {
        std::cerr << "hecke-cli: out of memory\n";
        return HK_CHECK_FAILED;
    }
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        if (!in) {
            std::cerr << "hecke-cli: cannot read config file '" << c.config << "'\n";
            return HK_CONFIG_ERROR;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        hk_request_set_config_text(req.get(), ss.str().c_str());
    }
    if (!c.preset.empty()) hk_request_set_preset(req.get(), c.preset.c_str());
    hk_request_set_threads(req.get(), c.threads);
    hk_request_set_cutoff(req.get(), c.cutoff);
    if (c.relevant) hk_request_set(req.get(), "relevant", "true");
    for (const auto& [k, v] : c.values) hk_request_set(req.get(), k.c_str(), v.c_str());

    std::unique_ptr<hk_result, decltype(&hk_result_free)> res(hk_execute(req.get()), hk_result_free);
    if (!res) {
        std::cerr << "hecke-cli: internal error\n";
        return HK_CHECK_FAILED;
    }
    int status = hk_result_status(res.get());
    if (c.out.empty()) {
        std::cout << hk_result_json(res.get());
    } else {
        std::ofstream out(c.out);
        if (!out || !(out << hk_result_json(res.get()))) {
            std::cerr << "hecke-cli: cannot write '" << c.out << "'\n";
            return HK_CHECK_FAILED;
        }
    }
    const char* word = status == HK_OK ? "PASS" : status == HK_CONFIG_ERROR ? "CONFIG ERROR" : "FAIL";
    std::cerr << command << " " << c.action << ": " << word;
    if (*hk_result_error(res.get())) std::cerr << " (" << hk_result_error(res.get()) << ")";
    std::cerr << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hecke algebra structure checks", "hecke-cli"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hk_version()));
    std::string presets = hk_preset_names();
    app.footer("Presets:\n  " + CLI::detail::join(CLI::detail::split(presets.substr(0, presets.size() - 1), '\n'), "\n  "));

    std::map<std::string, Common> state;
    for (const auto& [name, actions] : commands()) {
        Common& c = state[name];
        CLI::App* sub = app.add_subcommand(name, "actions: " + join(actions));
        sub->add_option("action", c.action, "what to run")->required()->check(CLI::IsMember(actions));
        sub->add_option("--config", c.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--preset", c.preset, "built-in configuration");
        sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
        sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--cutoff", c.cutoff, "braid-order search cutoff")->check(CLI::Range(2, 1000));
        sub->add_flag("--relevant", c.relevant, "count relevant hyperplanes only");
        for (const auto& [opt, help] : value_options()) {
            std::string key = opt;
            sub->add_option_function<std::string>("--" + opt, [&c, key](const std::string& v) { c.values[key] = v; }, help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : HK_CONFIG_ERROR;
    }
    for (auto* sub : app.get_subcommands()) return execute(sub->get_name(), state[sub->get_name()]);
    return HK_CONFIG_ERROR;
}
