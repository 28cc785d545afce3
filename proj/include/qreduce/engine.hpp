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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qreduce/qubo_model.hpp"
#include "qreduce/reduction_state.hpp"
#include "qreduce/rules.hpp"

namespace qreduce {

struct LogEvent {
    int pass;
    RuleVerdict verdict;
    std::size_t live_after;
    bool residual = false;
};

struct InequalityRecord {
    int pass;
    RuleVerdict verdict;
    Coeff m_bound;
    /// ReductionState::event_count() when the inequality was mined.
    std::uint64_t snapshot;
};

struct PassSummary {
    int pass = 0;
    std::size_t live_before = 0;
    std::size_t live_after = 0;
    std::size_t nodes_visited = 0;
    std::size_t pairs_examined = 0;
    /// Pairs seen twice within the pass (only counted with track_pair_visits).
    std::size_t duplicate_pair_visits = 0;
    /// Probes of further h after a pair assignment removed i.
    std::size_t probes_after_pair_fix = 0;
    bool stopped_at_end_loc = false;
    std::size_t residual_substitutions = 0;

    std::size_t drops() const noexcept { return live_before - live_after; }
};

struct ReductionLog {
    std::vector<LogEvent> events;
    std::vector<InequalityRecord> inequalities;
    std::array<std::size_t, kNumRules> per_rule_counts{};
    std::vector<PassSummary> passes;

    std::size_t count(RuleId rule) const { return per_rule_counts[static_cast<std::size_t>(rule)]; }
};

struct Identity {
    Var var;
    bool complement;  // x_var = 1 - x_ref when set, x_var = x_ref otherwise
    Var ref;
};

struct SolutionMap {
    Var num_variables = 0;
    std::vector<std::pair<Var, bool>> assignments;
    std::vector<Identity> identities;
    /// Ascending ids; a reduced solution lists values in this order.
    std::vector<Var> survivors;
};

using VerdictObserver = std::function<void(const ReductionState&, const RuleVerdict&)>;

inline const std::vector<RuleId>& default_rule_order() {
    static const std::vector<RuleId> order = {RuleId::R3_1, RuleId::R3_2, RuleId::R3_3,
                                              RuleId::R3_4, RuleId::R2_5, RuleId::R2_6};
    return order;
}

struct EngineOptions {
    std::optional<int> max_passes;
    /// Pair probes in the inner loop; a subset of R3_1..R3_4, R2_5, R2_6.
    std::vector<RuleId> rule_order = default_rule_order();
    bool enable_residual = true;
    bool emit_inequalities = false;
    bool track_pair_visits = false;
    /// Called with the state just before each verdict is applied or recorded.
    VerdictObserver observer;
    StateOptions state_options;
};

/// Per-variable strongly-holds flags and the derived lists used by the
/// residual versions of the substitution rules.
struct ResidualScheduler {
    std::vector<bool> a_flag, b_flag, c_flag, d_flag;
    std::vector<Var> a_list, b_list, ab_list, c_list, d_list, cd_list;

    static ResidualScheduler build(const ReductionState& state);
};

/// One scan over the i-Group of the state's node list. The first call on a
/// fresh state is the first pass; later passes call nodes().begin_pass first.
PassSummary run_pass(ReductionState& state, ReductionLog& log, const EngineOptions& options,
                     int pass_number);

inline PassSummary run_first_pass(ReductionState& state, ReductionLog& log,
                                  const EngineOptions& options = {}) {
    return run_pass(state, log, options, 1);
}

/// Tries the residual substitution checks; applies at most one substitution
/// and returns the number applied.
std::size_t run_residual_pass(ReductionState& state, ResidualScheduler& scheduler,
                              ReductionLog& log, const EngineOptions& options, int pass_number);

/// Runs passes on an existing state until no rule applies or the pass cap is hit.
void reduce_state(ReductionState& state, ReductionLog& log, const EngineOptions& options);

struct ReductionResult {
    QuboInstance reduced;  // original ids; eliminated variables carry no terms
    ReductionLog log;
    SolutionMap map;
};

ReductionResult run_to_fixed_point(const QuboInstance& instance, const EngineOptions& options = {});

SolutionMap make_solution_map(const ReductionState& state);

/// Expands a solution of the survivors to a full assignment of the original.
Assignment reconstruct_solution(const SolutionMap& map, std::span<const std::uint8_t> reduced_solution);

/// First rule that still applies anywhere, by a naive sweep over all live
/// variables and edges. Inequality rules are not reductions and are skipped.
std::optional<RuleVerdict> find_applicable_rule(const ReductionState& state);

inline bool verify_fixed_point(const ReductionState& state) {
    return !find_applicable_rule(state).has_value();
}

/// Adds penalties (M = bound + 1) for every inequality that holds in all
/// optima of the instance, repeating until no new one is found. The optimal
/// value and the set of optima are unchanged.
struct EnforcedInequality {
    Inequality inequality;
    RuleId rule;
    Coeff m;
};
QuboInstance enforce_unique_inequalities(const QuboInstance& instance,
                                         std::vector<EnforcedInequality>* applied = nullptr,
                                         std::size_t max_rounds = 100000);

}  // namespace qreduce
