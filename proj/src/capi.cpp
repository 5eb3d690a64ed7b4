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

#include "hecke/hecke.h"

#include <exception>
#include <new>
#include <string>

#include "app.hpp"
#include "config.hpp"

struct hk_request {
    hk::app::Request req;
};

struct hk_result {
    hk_status status = HK_OK;
    std::string json;
    std::string error;
};

namespace {

hk_result* internal_error(const char* what) {
    auto* r = new (std::nothrow) hk_result;
    if (!r) return nullptr;
    r->status = HK_CHECK_FAILED;
    r->error = what;
    r->json = "{\"schema\": 1, \"status\": \"error\"}\n";
    return r;
}

}  // namespace

extern "C" {

const char* hk_version(void) { return "1.0.0"; }

const char* hk_preset_names(void) {
    static const std::string names = [] {
        std::string s;
        for (const auto& n : hk::cfg::preset_names()) s += n + "\n";
        return s;
    }();
    return names.c_str();
}

hk_request* hk_request_new(const char* command, const char* action) {
    if (!command) return nullptr;
    auto* r = new (std::nothrow) hk_request;
    if (!r) return nullptr;
    r->req.command = command;
    r->req.action = action ? action : "";
    return r;
}

void hk_request_free(hk_request* req) { delete req; }

hk_status hk_request_set(hk_request* req, const char* key, const char* value) {
    if (!req || !key || !value) return HK_INVALID_ARGUMENT;
    req->req.options[key] = value;
    return HK_OK;
}

hk_status hk_request_set_config_text(hk_request* req, const char* json_text) {
    if (!req || !json_text) return HK_INVALID_ARGUMENT;
    req->req.config_text = json_text;
    return HK_OK;
}

hk_status hk_request_set_preset(hk_request* req, const char* name) {
    if (!req || !name) return HK_INVALID_ARGUMENT;
    req->req.preset = name;
    return HK_OK;
}

hk_status hk_request_set_threads(hk_request* req, int threads) {
    if (!req) return HK_INVALID_ARGUMENT;
    req->req.threads = threads;
    return HK_OK;
}

hk_status hk_request_set_cutoff(hk_request* req, int cutoff) {
    if (!req) return HK_INVALID_ARGUMENT;
    req->req.cutoff = cutoff;
    return HK_OK;
}

hk_result* hk_execute(const hk_request* req) {
    if (!req) return nullptr;
    try {
        hk::app::Response resp = hk::app::run(req->req);
        auto* r = new hk_result;
        r->status = static_cast<hk_status>(resp.exit_code);
        r->json = std::move(resp.report);
        r->error = std::move(resp.error);
        return r;
    } catch (const std::exception& e) {
        return internal_error(e.what());
    } catch (...) {
        return internal_error("unknown internal error");
    }
}

void hk_result_free(hk_result* res) { delete res; }

hk_status hk_result_status(const hk_result* res) { return res ? res->status : HK_INVALID_ARGUMENT; }

const char* hk_result_json(const hk_result* res) { return res ? res->json.c_str() : ""; }

const char* hk_result_error(const hk_result* res) { return res ? res->error.c_str() : ""; }

}  // extern "C"
