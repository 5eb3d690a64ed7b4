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

#include <string>
#include <vector>

namespace hk {

struct CheckItem {
    std::string name;
    bool passed = true;
    std::string detail;  // witness on failure, summary otherwise
};

struct CheckReport {
    std::vector<CheckItem> items;

    void add(std::string name, bool passed, std::string detail = {}) {
        items.push_back({std::move(name), passed, std::move(detail)});
    }
    void merge(const CheckReport& o, const std::string& prefix = {}) {
        for (const auto& it : o.items) items.push_back({prefix + it.name, it.passed, it.detail});
    }
    bool ok() const {
        for (const auto& it : items)
            if (!it.passed) return false;
        return true;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return &it;
        return nullptr;
    }
};

}  // namespace hk
