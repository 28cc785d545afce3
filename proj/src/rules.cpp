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

#include "qreduce/rules.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace qreduce {

namespace {

constexpr std::array<std::string_view, kNumRules> kRuleNames = {
    "R1_0", "R2_0", "R1_1", "R1_1p", "R2_1", "R2_1p", "R1_2", "R1_2p",
    "R2_2", "R2_2p", "R2_5", "R2_6", "R3_1", "R3_2", "R3_3", "R3_4",
};

Inequality make_inequality(InequalityKind kind, Var i, Var h) {
    if (i < h) return {kind, i, h};
    if (kind == InequalityKind::ILeH) kind = InequalityKind::HLeI;
    else if (kind == InequalityKind::HLeI) kind = InequalityKind::ILeH;
    return {kind, h, i};
}

RuleVerdict inequality_verdict(RuleId rule, InequalityKind kind, Var i, Var h, bool strict) {
    return {rule, i, h, make_inequality(kind, i, h), strict};
}

Coeff pos(Coeff v) { return std::max<Coeff>(0, v); }

std::optional<RuleVerdict> pair_fix(RuleId rule, Var i, bool vi, Var h, bool vh, Coeff lhs) {
    if (lhs > 0) return std::nullopt;
    return RuleVerdict{rule, i, h, PairFix{i, vi, h, vh}, lhs < 0};
}

}  // namespace

std::string_view to_string(RuleId rule) {
    return kRuleNames.at(static_cast<std::size_t>(rule));
}

std::optional<RuleId> parse_rule_id(std::string_view name) {
    for (std::size_t k = 0; k < kRuleNames.size(); ++k)
        if (kRuleNames[k] == name) return static_cast<RuleId>(k);
    return std::nullopt;
}

std::string_view to_string(InequalityKind kind) {
    switch (kind) {
        case InequalityKind::AtMostOne: return "AtMostOne";
        case InequalityKind::AtLeastOne: return "AtLeastOne";
        case InequalityKind::ILeH: return "ILeH";
        case InequalityKind::HLeI: return "HLeI";
    }
    return "?";
}

std::optional<PairView> pair_view(const ReductionState& s, Var i, Var h) {
    if (i == h || !s.is_free(i) || !s.is_free(h)) return std::nullopt;
    const Coeff d = s.coupling(i, h);
    if (d == 0) return std::nullopt;
    return pair_view(s, i, h, d);
}

PairView pair_view(const ReductionState& s, Var i, Var h, Coeff d) {
    return PairView{i, h, s.linear(i), s.linear(h), d, s.d_minus(i), s.d_plus(i), s.d_minus(h),
                    s.d_plus(h)};
}

RuleEvaluation evaluate_bounds(const ReductionState& state, Var i) {
    const Coeff c = state.linear(i);
    return {c + state.d_minus(i), c + state.d_plus(i)};
}

std::optional<RuleVerdict> rule_fix_one(const ReductionState& state, Var i) {
    if (!state.is_free(i)) return std::nullopt;
    const Coeff v = evaluate_bounds(state, i).min_v;
    if (v < 0) return std::nullopt;
    return RuleVerdict{RuleId::R1_0, i, 0, Fix{i, true}, v > 0};
}

std::optional<RuleVerdict> rule_fix_zero(const ReductionState& state, Var i) {
    if (!state.is_free(i)) return std::nullopt;
    const Coeff v = evaluate_bounds(state, i).max_v;
    if (v > 0) return std::nullopt;
    return RuleVerdict{RuleId::R2_0, i, 0, Fix{i, false}, v < 0};
}

std::vector<RuleVerdict> derive_pair_inequalities(const PairView& p) {
    const Var i = p.i;
    const Var h = p.h;
    std::vector<RuleVerdict> out;
    using K = InequalityKind;
    if (p.d > 0) {
        if (Coeff v = p.c_i + p.d + p.dm_i; v >= 0)
            out.push_back(inequality_verdict(RuleId::R1_1, K::HLeI, i, h, v > 0));
        if (Coeff v = p.c_h + p.d + p.dm_h; v >= 0)
            out.push_back(inequality_verdict(RuleId::R1_1p, K::ILeH, i, h, v > 0));
        if (Coeff v = p.c_i - p.d + p.dp_i; v <= 0)
            out.push_back(inequality_verdict(RuleId::R2_2, K::ILeH, i, h, v < 0));
        if (Coeff v = p.c_h - p.d + p.dp_h; v <= 0)
            out.push_back(inequality_verdict(RuleId::R2_2p, K::HLeI, i, h, v < 0));
    } else {
        if (Coeff v = p.c_i + p.d + p.dp_i; v <= 0)
            out.push_back(inequality_verdict(RuleId::R2_1, K::AtMostOne, i, h, v < 0));
        if (Coeff v = p.c_h + p.d + p.dp_h; v <= 0)
            out.push_back(inequality_verdict(RuleId::R2_1p, K::AtMostOne, i, h, v < 0));
        if (Coeff v = p.c_i - p.d + p.dm_i; v >= 0)
            out.push_back(inequality_verdict(RuleId::R1_2, K::AtLeastOne, i, h, v > 0));
        if (Coeff v = p.c_h - p.d + p.dm_h; v >= 0)
            out.push_back(inequality_verdict(RuleId::R1_2p, K::AtLeastOne, i, h, v > 0));
    }
    return out;
}

std::optional<RuleVerdict> rule_complement_pair(const PairView& p) {
    const Var i = p.i;
    const Var h = p.h;
    if (p.d >= 0) return std::nullopt;
    const Coeff a1 = p.c_i - p.d + p.dm_i;
    const Coeff a2 = p.c_h - p.d + p.dm_h;
    const Coeff b1 = p.c_i + p.d + p.dp_i;
    const Coeff b2 = p.c_h + p.d + p.dp_h;
    if (!((a1 >= 0 || a2 >= 0) && (b1 <= 0 || b2 <= 0))) return std::nullopt;
    const bool unique = (a1 > 0 || a2 > 0) && (b1 < 0 || b2 < 0);
    return RuleVerdict{RuleId::R2_5, i, h, SubstituteComplement{i, h}, unique};
}

std::optional<RuleVerdict> rule_equal_pair(const PairView& p) {
    const Var i = p.i;
    const Var h = p.h;
    if (p.d <= 0) return std::nullopt;
    const Coeff c1 = p.c_i - p.d + p.dp_i;
    const Coeff c2 = p.c_h + p.d + p.dm_h;
    const Coeff d1 = p.c_i + p.d + p.dm_i;
    const Coeff d2 = p.c_h - p.d + p.dp_h;
    if (!((c1 <= 0 || c2 >= 0) && (d1 >= 0 || d2 <= 0))) return std::nullopt;
    const bool unique = (c1 < 0 || c2 > 0) && (d1 > 0 || d2 < 0);
    return RuleVerdict{RuleId::R2_6, i, h, SubstituteEqual{i, h}, unique};
}

std::optional<RuleVerdict> rule_pair_zero(const PairView& p) {
    if (p.d < 0) return std::nullopt;
    return pair_fix(RuleId::R3_1, p.i, false, p.h, false,
                    p.c_i + p.c_h - p.d + p.dp_i + p.dp_h);
}

std::optional<RuleVerdict> rule_pair_one_zero(const PairView& p) {
    if (p.d > 0) return std::nullopt;
    return pair_fix(RuleId::R3_2, p.i, true, p.h, false,
                    -p.c_i + p.c_h + p.d - p.dm_i + p.dp_h);
}

std::optional<RuleVerdict> rule_pair_zero_one(const PairView& p) {
    if (p.d > 0) return std::nullopt;
    return pair_fix(RuleId::R3_3, p.i, false, p.h, true,
                    p.c_i - p.c_h + p.d + p.dp_i - p.dm_h);
}

std::optional<RuleVerdict> rule_pair_one(const PairView& p) {
    if (p.d < 0) return std::nullopt;
    return pair_fix(RuleId::R3_4, p.i, true, p.h, true,
                    -p.c_i - p.c_h - p.d - p.dm_i - p.dm_h);
}

ScreeningFlags screen(const ReductionState& state, Var i) {
    ScreeningFlags f;
    if (!state.is_free(i)) return f;
    const Coeff c = state.linear(i);
    const Coeff dm = state.d_minus(i);
    const Coeff dp = state.d_plus(i);
    if (const auto& mn = state.min_d(i)) {
        f.a = c - mn->value + dm >= 0;
        f.b = c + mn->value + dp <= 0;
    }
    if (const auto& mx = state.max_d(i)) {
        f.c = c - mx->value + dp <= 0;
        f.d = c + mx->value + dm >= 0;
    }
    return f;
}

Coeff m_lower_bound(const ReductionState& state, const RuleVerdict& v) {
    const Var i = v.i;
    const Var h = v.h;
    auto ci = [&] { return state.linear(i); };
    auto ch = [&] { return state.linear(h); };
    auto dmi = [&] { return state.d_minus(i); };
    auto dpi = [&] { return state.d_plus(i); };
    auto dmh = [&] { return state.d_minus(h); };
    auto dph = [&] { return state.d_plus(h); };
    switch (v.rule) {
        case RuleId::R1_0:
        case RuleId::R2_0:
            throw ModelError("no penalty bound applies to a single-variable fix");
        case RuleId::R2_1:
        case RuleId::R2_2: return pos(ci() + dpi());
        case RuleId::R2_1p:
        case RuleId::R2_2p: return pos(ch() + dph());
        case RuleId::R1_1:
        case RuleId::R1_2: return pos(-(ci() + dmi()));
        case RuleId::R1_1p:
        case RuleId::R1_2p: return pos(-(ch() + dmh()));
        case RuleId::R3_1: return pos(ci() + ch() + dpi() + dph());
        case RuleId::R3_2: return pos(-ci() + ch() - dmi() + dph());
        case RuleId::R3_3: return pos(ci() - ch() + dpi() - dmh());
        case RuleId::R3_4: return pos(-ci() - ch() - dmi() - dmh());
        case RuleId::R2_5:
        case RuleId::R2_6: {
            // Each side of the rule holds through one or both of its
            // constituent rules; the cheaper satisfied one sets that side's bound.
            const Coeff d = state.coupling(i, h);
            auto side = [](bool ok1, Coeff m1, bool ok2, Coeff m2) {
                if (ok1 && ok2) return std::min(m1, m2);
                return ok1 ? m1 : m2;
            };
            Coeff first = 0;
            Coeff second = 0;
            if (v.rule == RuleId::R2_5) {
                first = side(ci() - d + dmi() >= 0, pos(-(ci() + dmi())),
                             ch() - d + dmh() >= 0, pos(-(ch() + dmh())));
                second = side(ci() + d + dpi() <= 0, pos(ci() + dpi()),
                              ch() + d + dph() <= 0, pos(ch() + dph()));
            } else {
                first = side(ci() - d + dpi() <= 0, pos(ci() + dpi()),
                             ch() + d + dmh() >= 0, pos(-(ch() + dmh())));
                second = side(ci() + d + dmi() >= 0, pos(-(ci() + dmi())),
                              ch() - d + dph() <= 0, pos(ch() + dph()));
            }
            return std::max(first, second);
        }
    }
    throw ModelError("unknown rule");
}

bool satisfies(InequalityKind kind, bool x_i, bool x_h) {
    switch (kind) {
        case InequalityKind::AtMostOne: return !(x_i && x_h);
        case InequalityKind::AtLeastOne: return x_i || x_h;
        case InequalityKind::ILeH: return !x_i || x_h;
        case InequalityKind::HLeI: return !x_h || x_i;
    }
    return false;
}

QuboInstance penalty_rewrite(const QuboInstance& instance, InequalityKind kind, Var i, Var h,
                             Coeff m, Coeff bound, PenaltyMode mode) {
    const Var n = instance.num_variables();
    if (i < 1 || i > n || h < 1 || h > n || i == h)
        throw ModelError("penalty_rewrite: invalid variable pair (" + std::to_string(i) + ", " +
                         std::to_string(h) + ")");
    if (m <= bound)
        throw ModelError("penalty_rewrite: M = " + std::to_string(m) +
                         " does not exceed the bound " + std::to_string(bound));

    std::vector<Coeff> linear(instance.linear_terms().begin(), instance.linear_terms().end());
    std::vector<Interaction> quad(instance.interactions().begin(), instance.interactions().end());
    Coeff offset = instance.offset();
    const Coeff old_d = instance.quadratic(i, h);
    auto& ci = linear[static_cast<std::size_t>(i - 1)];
    auto& ch = linear[static_cast<std::size_t>(h - 1)];
    Coeff new_d = old_d;

    if (mode == PenaltyMode::Additive) {
        switch (kind) {
            case InequalityKind::AtMostOne: new_d -= m; break;
            case InequalityKind::HLeI: ch -= m; new_d += m; break;
            case InequalityKind::ILeH: ci -= m; new_d += m; break;
            case InequalityKind::AtLeastOne:
                ci += m;
                ch += m;
                new_d -= m;
                offset -= m;
                break;
        }
    } else {
        switch (kind) {
            case InequalityKind::AtMostOne: new_d = -m; break;
            case InequalityKind::HLeI: ch = -m; new_d = m; break;
            case InequalityKind::ILeH: ci = -m; new_d = m; break;
            case InequalityKind::AtLeastOne:
                ci = m;
                ch = m;
                new_d = -m;
                offset += m;
                break;
        }
    }
    std::erase_if(quad, [&](const Interaction& e) {
        return (e.i == i && e.j == h) || (e.i == h && e.j == i);
    });
    if (new_d != 0) quad.push_back({std::min(i, h), std::max(i, h), new_d});
    return QuboInstance::from_parts(n, std::move(linear), std::move(quad), offset);
}

std::vector<RuleVerdict> derive_pair_inequalities(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return {};
    return derive_pair_inequalities(*p);
}

std::optional<RuleVerdict> rule_complement_pair(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_complement_pair(*p);
}

std::optional<RuleVerdict> rule_equal_pair(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_equal_pair(*p);
}

std::optional<RuleVerdict> rule_pair_zero(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_pair_zero(*p);
}

std::optional<RuleVerdict> rule_pair_one_zero(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_pair_one_zero(*p);
}

std::optional<RuleVerdict> rule_pair_zero_one(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_pair_zero_one(*p);
}

std::optional<RuleVerdict> rule_pair_one(const ReductionState& state, Var i, Var h) {
    const auto p = pair_view(state, i, h);
    if (!p) return std::nullopt;
    return rule_pair_one(*p);
}

}  // namespace qreduce
