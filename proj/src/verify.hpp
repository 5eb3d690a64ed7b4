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

// The batch acceptance suite behind `verify all`.

#pragma once

#include <string>
#include <vector>

#include "report.hpp"

namespace hk {

struct CriterionResult {
    int id = 0;
    std::string title;
    CheckReport report;
    double seconds = 0;
    double budget = 0;  // seconds
    bool passed() const { return report.ok() && seconds <= budget; }
};

// Runs every criterion; with threads > 1 criteria run concurrently.  Results are in id order.
std::vector<CriterionResult> acceptance_suite(int threads = 1, int cutoff = 24);

}  // namespace hk
