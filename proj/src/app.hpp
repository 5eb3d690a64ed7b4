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

// Subcommand dispatch shared by the C API and the command-line tool.

#pragma once

#include <map>
#include <string>

namespace hk::app {

struct Request {
    std::string command;  // arr, roots, weyl, hecke, fingrp, cover, verify
    std::string action;
    std::string config_text;  // JSON; empty when a preset or command-line group is used
    std::string preset;
    std::map<std::string, std::string> options;
    int threads = 1;
    int cutoff = 24;
};

enum ExitCode { kPass = 0, kCheckFailed = 1, kConfigError = 2 };

struct Response {
    int exit_code = kPass;
    std::string report;  // JSON document, also produced for failures
    std::string error;   // message for exit code 2
};

Response run(const Request& req);

}  // namespace hk::app
