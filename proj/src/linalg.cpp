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

#include "linalg.hpp"

namespace hk {

std::optional<Scalar> scalar_ratio(const SMat& a, const SMat& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::Dimension,
            "scalar_ratio: shape mismatch");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            if (b(i, j).is_zero()) continue;
            Scalar c = a(i, j) / b(i, j);
            if (a == c * b) return c;
            return std::nullopt;
        }
    return std::nullopt;
}

std::optional<SVec> express_in_span(const std::vector<SMat>& basis, const SMat& target) {
    int n = static_cast<int>(target.data().size());
    int k = static_cast<int>(basis.size());
    SMat m(n, k);
    for (int j = 0; j < k; ++j) {
        require(basis[j].data().size() == target.data().size(), Errc::Dimension,
                "express_in_span: shape mismatch");
        for (int i = 0; i < n; ++i) m(i, j) = basis[j].data()[i];
    }
    return m.solve(target.data());
}

}  // namespace hk
