// Copyright 2026 The qreduce Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreduce/engine.hpp"
#include "qreduce/qubo_model.hpp"

namespace qreduce {

struct RunReport {
    Var num_variables = 0;
    std::size_t survivors = 0;
    double percent_reduction = 0.0;  // 100 * (n - survivors) / n
    /// Firings per rule (events and mined inequalities).
    std::array<std::size_t, kNumRules> rule_counts{};
    /// Variables eliminated per rule.
    std::array<std::size_t, kNumRules> rule_eliminations{};
    std::vector<PassSummary> passes;
    std::size_t inequality_count = 0;
    double wall_seconds = 0.0;
    Coeff original_offset = 0;
    Coeff reduced_offset = 0;

    std::size_t eliminated() const noexcept {
        return static_cast<std::size_t>(num_variables) - survivors;
    }
};

RunReport make_report(const QuboInstance& original, const ReductionResult& result,
                      double wall_seconds);

/// Fixed-width table for terminals.
std::string format_report(const RunReport& report);

nlohmann::json to_json(const RuleVerdict& verdict);
nlohmann::json to_json(const ReductionLog& log);
nlohmann::json to_json(const SolutionMap& map);
nlohmann::json to_json(const RunReport& report);

SolutionMap solution_map_from_json(const nlohmann::json& j);
RunReport report_from_json(const nlohmann::json& j);

/// Rebuilds an instance over ids 1..n from a renumbered one whose k-th
/// variable is ids[k-1].
QuboInstance expand(const QuboInstance& compacted, std::span<const Var> ids, Var n);

}  // namespace qreduce
