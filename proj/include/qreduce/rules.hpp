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

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qreduce/qubo_model.hpp"
#include "qreduce/reduction_state.hpp"

namespace qreduce {

enum class RuleId : std::uint8_t {
    R1_0,   // x_i = 1
    R2_0,   // x_i = 0
    R1_1,   // x_h <= x_i
    R1_1p,  // x_i <= x_h
    R2_1,   // x_i + x_h <= 1
    R2_1p,  // x_i + x_h <= 1
    R1_2,   // x_i + x_h >= 1
    R1_2p,  // x_i + x_h >= 1
    R2_2,   // x_i <= x_h
    R2_2p,  // x_h <= x_i
    R2_5,   // x_h = 1 - x_i
    R2_6,   // x_h = x_i
    R3_1,   // x_i = x_h = 0
    R3_2,   // x_i = 1, x_h = 0
    R3_3,   // x_i = 0, x_h = 1
    R3_4,   // x_i = x_h = 1
};

inline constexpr std::size_t kNumRules = 16;

std::string_view to_string(RuleId rule);
std::optional<RuleId> parse_rule_id(std::string_view name);

enum class InequalityKind : std::uint8_t {
    AtMostOne,   // x_i + x_h <= 1
    AtLeastOne,  // x_i + x_h >= 1
    ILeH,        // x_i <= x_h
    HLeI,        // x_h <= x_i
};

std::string_view to_string(InequalityKind kind);

struct Fix {
    Var var;
    bool value;
};
struct PairFix {
    Var i;
    bool value_i;
    Var h;
    bool value_h;
};
/// x_drop = x_keep
struct SubstituteEqual {
    Var keep;
    Var drop;
};
/// x_drop = 1 - x_keep
struct SubstituteComplement {
    Var keep;
    Var drop;
};
/// Stored with i < h; ILeH / HLeI are oriented relative to that order.
struct Inequality {
    InequalityKind kind;
    Var i;
    Var h;
};

using Conclusion = std::variant<Fix, PairFix, SubstituteEqual, SubstituteComplement, Inequality>;

/// A rule firing. `i` and `h` are the arguments the rule was evaluated on
/// (h == 0 for single-variable rules); `unique` is set when the strict form
/// of the rule's condition held, i.e. the conclusion holds in every optimum.
struct RuleVerdict {
    RuleId rule;
    Var i;
    Var h;
    Conclusion conclusion;
    bool unique;
};

/// Bounds on V(x_i) = c_i + sum_j d_ij x_j over the live neighbors.
struct RuleEvaluation {
    Coeff min_v;  // c_i + D_i^-
    Coeff max_v;  // c_i + D_i^+
};

RuleEvaluation evaluate_bounds(const ReductionState& state, Var i);

std::optional<RuleVerdict> rule_fix_one(const ReductionState& state, Var i);
std::optional<RuleVerdict> rule_fix_zero(const ReductionState& state, Var i);

/// All pairwise inequalities implied on an existing edge {i, h}.
std::vector<RuleVerdict> derive_pair_inequalities(const ReductionState& state, Var i, Var h);

/// x_i + x_h = 1 for d_ih < 0; the verdict keeps i and replaces h.
std::optional<RuleVerdict> rule_complement_pair(const ReductionState& state, Var i, Var h);
/// x_i = x_h for d_ih > 0; the verdict keeps i and replaces h.
std::optional<RuleVerdict> rule_equal_pair(const ReductionState& state, Var i, Var h);

/// The terms every pair rule reads, gathered once per examined pair.
struct PairView {
    Var i, h;
    Coeff c_i, c_h, d;
    Coeff dm_i, dp_i, dm_h, dp_h;
};

/// Nothing when i or h is not free or the pair shares no edge.
std::optional<PairView> pair_view(const ReductionState& state, Var i, Var h);
/// As above with d_ih already known to the caller.
PairView pair_view(const ReductionState& state, Var i, Var h, Coeff d);

// Pair assignments. The caller guarantees that neither single-variable rule
// fires on i or h in the current state; the conclusions depend on it.
std::optional<RuleVerdict> rule_pair_zero(const ReductionState& state, Var i, Var h);
std::optional<RuleVerdict> rule_pair_one_zero(const ReductionState& state, Var i, Var h);
/// x_i = 0, x_h = 1: the one-zero rule with the roles of i and h exchanged.
std::optional<RuleVerdict> rule_pair_zero_one(const ReductionState& state, Var i, Var h);
std::optional<RuleVerdict> rule_pair_one(const ReductionState& state, Var i, Var h);

std::optional<RuleVerdict> rule_pair_zero(const PairView& p);
std::optional<RuleVerdict> rule_pair_one_zero(const PairView& p);
std::optional<RuleVerdict> rule_pair_zero_one(const PairView& p);
std::optional<RuleVerdict> rule_pair_one(const PairView& p);
std::optional<RuleVerdict> rule_complement_pair(const PairView& p);
std::optional<RuleVerdict> rule_equal_pair(const PairView& p);
std::vector<RuleVerdict> derive_pair_inequalities(const PairView& p);

/// Per-variable screening for the substitution rules: whether each half of
/// the complement (A, B) and equality (C, D) conditions holds for the most
/// favorable coupling on the row (MinD_i for A/B, MaxD_i for C/D).
struct ScreeningFlags {
    bool a = false;  // c_i - MinD_i + D_i^- >= 0
    bool b = false;  // c_i + MinD_i + D_i^+ <= 0
    bool c = false;  // c_i - MaxD_i + D_i^+ <= 0
    bool d = false;  // c_i + MaxD_i + D_i^- >= 0
};

ScreeningFlags screen(const ReductionState& state, Var i);

/// Smallest penalty weight M (exclusive) that enforces the verdict's
/// inequality through penalty_rewrite. Throws ModelError for Fix verdicts.
Coeff m_lower_bound(const ReductionState& state, const RuleVerdict& verdict);

enum class PenaltyMode {
    /// Adds -M times the violated product; objective values of satisfying
    /// points are unchanged.
    Additive,
    /// Overwrites the coefficients with +-M as in the classical recipe.
    /// Objective values of satisfying points generally change.
    Replace,
};

/// Enforces an inequality between x_i and x_h inside the objective with
/// weight M. `kind` is oriented on the given (i, h). Throws ModelError when
/// M <= bound.
QuboInstance penalty_rewrite(const QuboInstance& instance, InequalityKind kind, Var i, Var h,
                             Coeff m, Coeff bound, PenaltyMode mode = PenaltyMode::Additive);

/// Does an assignment satisfy the inequality on (i, h)?
bool satisfies(InequalityKind kind, bool x_i, bool x_h);

}  // namespace qreduce
