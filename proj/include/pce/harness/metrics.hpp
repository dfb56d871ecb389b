// Copyright 2026 The pce-mincut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "pce/errors.hpp"
#include "pce/harness/record.hpp"
#include "pce/objective.hpp"

namespace pce {

/// Fraction of successful runs whose decoded cut meets the budget.
/// Failed runs are not counted.
inline double metric_epsilon_c(std::span<const RunRecord> records) {
    std::size_t total = 0;
    std::size_t ok = 0;
    for (const auto &r : records) {
        if (!r.ok()) {
            continue;
        }
        ++total;
        ok += r.outcome->feasible;
    }
    if (total == 0) {
        throw ParameterError("epsilon_c of an empty record set");
    }
    return static_cast<double>(ok) / static_cast<double>(total);
}

/// Share of soft values with |t| > 0.9.
inline double metric_binarization(std::span<const double> soft) {
    return binarization(soft, 0.9);
}

} // namespace pce
