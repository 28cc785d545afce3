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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreduce/engine.hpp"
#include "qreduce/qubo_model.hpp"

namespace qreduce {

inline constexpr int kDefaultOracleLimit = 24;
inline constexpr std::size_t kDefaultOptimaCap = std::size_t{1} << 16;

/// Raised when an instance is too large to enumerate.
class OracleLimitError : public ModelError {
 public:
    using ModelError::ModelError;
};

struct OracleResult {
    Coeff optimum = 0;
    /// Optimal assignments in lexicographic order, at most the cap.
    std::vector<Assignment> optima;
    bool truncated = false;
    std::uint64_t evaluated_count = 0;
};

OracleResult brute_force_solve(const QuboInstance& instance, int n_limit = kDefaultOracleLimit,
                               std::size_t optima_cap = kDefaultOptimaCap);

struct EquivalenceReport {
    bool ok = false;
    Coeff original_optimum = 0;
    Coeff reduced_optimum = 0;
    std::string message;
    /// Reconstructed assignment that failed, if any.
    std::optional<Assignment> counterexample;
};

/// `reduced` uses the original ids with eliminated variables carrying no terms.
EquivalenceReport check_equivalence(const QuboInstance& original, const QuboInstance& reduced,
                                    const SolutionMap& map, int n_limit = kDefaultOracleLimit);

}  // namespace qreduce
