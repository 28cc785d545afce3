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

#include "qreduce/engine.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>
#include <unordered_set>
#include <variant>

namespace qreduce {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

std::size_t rule_index(RuleId r) { return static_cast<std::size_t>(r); }

void validate_order(const std::vector<RuleId>& order) {
    std::array<bool, kNumRules> seen{};
    for (RuleId r : order) {
        switch (r) {
            case RuleId::R3_1:
            case RuleId::R3_2:
            case RuleId::R3_3:
            case RuleId::R3_4:
            case RuleId::R2_5:
            case RuleId::R2_6: break;
            default:
                throw ModelError("rule_order: " + std::string(to_string(r)) +
                                 " is not a pair probe");
        }
        if (seen[rule_index(r)])
            throw ModelError("rule_order: " + std::string(to_string(r)) + " listed twice");
        seen[rule_index(r)] = true;
    }
}

void apply_verdict(ReductionState& s, const RuleVerdict& v) {
    std::visit(overloaded{
                   [&](const Fix& f) { s.apply_fix(f.var, f.value); },
                   [&](const PairFix& p) {
                       s.apply_fix(p.i, p.value_i);
                       s.apply_fix(p.h, p.value_h);
                   },
                   [&](const SubstituteEqual& e) { s.apply_substitution_equal(e.keep, e.drop); },
                   [&](const SubstituteComplement& e) {
                       s.apply_substitution_complement(e.keep, e.drop);
                   },
                   [&](const Inequality&) {
                       throw InternalError("inequalities are recorded, not applied");
                   },
               },
               v.conclusion);
}

void fire(ReductionState& s, ReductionLog& log, const EngineOptions& options, int pass,
          const RuleVerdict& v, bool residual) {
    if (options.observer) options.observer(s, v);
    apply_verdict(s, v);
    log.events.push_back({pass, v, s.num_free(), residual});
    ++log.per_rule_counts[rule_index(v.rule)];
}

std::vector<Var> sorted_neighbors(const ReductionState& s, Var i) {
    std::vector<Var> out;
    out.reserve(s.neighbors(i).size());
    for (const auto& [j, d] : s.neighbors(i)) out.push_back(j);
    std::sort(out.begin(), out.end());
    return out;
}

// Substitution screening: the rule is tried on (i, h) only when d_ih is the
// extreme edge of i or h and that endpoint passes both halves of the test.
bool complement_gate(const ReductionState& s, Var i, Var h, Coeff d) {
    if (d >= 0) return false;
    auto gate = [&](Var v) {
        const auto& mn = s.min_d(v);
        if (!mn || mn->value != d) return false;
        const auto f = screen(s, v);
        return f.a && f.b;
    };
    return gate(i) || gate(h);
}

bool equal_gate(const ReductionState& s, Var i, Var h, Coeff d) {
    if (d <= 0) return false;
    auto gate = [&](Var v) {
        const auto& mx = s.max_d(v);
        if (!mx || mx->value != d) return false;
        const auto f = screen(s, v);
        return f.c && f.d;
    };
    return gate(i) || gate(h);
}

class PassRunner {
 public:
    PassRunner(ReductionState& s, ReductionLog& log, const EngineOptions& options, int pass,
               PassSummary& summary)
            : s_(s),
              log_(log),
              options_(options),
              pass_(pass),
              summary_(summary),
              stamp_(static_cast<std::size_t>(s.num_variables()) + 1, kNever) {}

    void visit(Var i);

 private:
    bool stale(Var v) const { return stamp_[static_cast<std::size_t>(v)] != s_.event_count(); }
    bool examine_single(Var v);
    void fire_verdict(const RuleVerdict& v) { fire(s_, log_, options_, pass_, v, false); }
    void note_pair(Var i, Var h);

    ReductionState& s_;
    ReductionLog& log_;
    const EngineOptions& options_;
    int pass_;
    PassSummary& summary_;
    std::vector<std::uint64_t> stamp_;
    std::unordered_set<std::uint64_t> seen_pairs_;
};

// Rules 2.0 then 1.0 on one variable; true when it was fixed.
bool PassRunner::examine_single(Var v) {
    auto verdict = rule_fix_zero(s_, v);
    if (!verdict) verdict = rule_fix_one(s_, v);
    if (!verdict) {
        stamp_[static_cast<std::size_t>(v)] = s_.event_count();
        return false;
    }
    fire_verdict(*verdict);
    return true;
}

void PassRunner::note_pair(Var i, Var h) {
    ++summary_.pairs_examined;
    if (!options_.track_pair_visits) return;
    const auto lo = static_cast<std::uint64_t>(std::min(i, h));
    const auto hi = static_cast<std::uint64_t>(std::max(i, h));
    if (!seen_pairs_.insert((lo << 32) | hi).second) ++summary_.duplicate_pair_visits;
}

void PassRunner::visit(Var i) {
    ++summary_.nodes_visited;
    NodeList& nodes = s_.nodes();
    const std::uint64_t events_at_start = s_.event_count();

    if (examine_single(i)) return;

    // Only adjacent h can satisfy a pair rule. Fixing some h leaves the
    // remaining d_ih untouched, so the values read here stay current.
    struct Candidate {
        std::size_t position;
        Var h;
        Coeff d;
    };
    std::vector<Candidate> hs;
    for (const auto& [j, d] : s_.neighbors(i))
        if (nodes.in_h_group(j)) hs.push_back({nodes.position(j), j, d});
    std::sort(hs.begin(), hs.end(),
              [](const Candidate& a, const Candidate& b) { return a.position < b.position; });

    for (const Candidate& cand : hs) {
        const Var h = cand.h;
        if (!s_.is_free(h)) continue;
        if (stale(i) && examine_single(i)) return;
        if (stale(h) && examine_single(h)) continue;
        const std::optional<PairView> view = pair_view(s_, i, h, cand.d);
        note_pair(i, h);

        std::vector<RuleVerdict> mined;
        bool mined_done = !options_.emit_inequalities;
        bool substituted = false;
        for (RuleId rule : options_.rule_order) {
            std::optional<RuleVerdict> v;
            switch (rule) {
                case RuleId::R3_1: v = rule_pair_zero(*view); break;
                case RuleId::R3_2: v = rule_pair_one_zero(*view); break;
                case RuleId::R3_3: v = rule_pair_zero_one(*view); break;
                case RuleId::R3_4: v = rule_pair_one(*view); break;
                case RuleId::R2_5:
                case RuleId::R2_6: {
                    if (!mined_done) {
                        mined = derive_pair_inequalities(*view);
                        mined_done = true;
                    }
                    const Coeff d = view->d;
                    const bool open = rule == RuleId::R2_5 ? complement_gate(s_, i, h, d)
                                                           : equal_gate(s_, i, h, d);
                    if (!open) break;
                    v = rule == RuleId::R2_5 ? rule_complement_pair(*view)
                                             : rule_equal_pair(*view);
                    if (!v) throw InternalError("screening admitted a substitution that does not hold");
                    break;
                }
                default: break;
            }
            if (!v) continue;
            if (std::holds_alternative<PairFix>(v->conclusion)) {
                fire_verdict(*v);
                // Both i and h are gone; nothing further is probed for this i.
                return;
            }
            fire_verdict(*v);
            substituted = true;
            break;
        }
        if (substituted) break;

        if (!mined_done) mined = derive_pair_inequalities(*view);
        for (const auto& v : mined) {
            if (options_.observer) options_.observer(s_, v);
            log_.inequalities.push_back({pass_, v, m_lower_bound(s_, v), s_.event_count()});
            ++log_.per_rule_counts[rule_index(v.rule)];
        }
    }

    if (stale(i) && examine_single(i)) return;
    nodes.transfer_current();
    if (s_.event_count() != events_at_start) nodes.mark_drop_boundary();
}

}  // namespace

ResidualScheduler ResidualScheduler::build(const ReductionState& state) {
    ResidualScheduler r;
    const auto size = static_cast<std::size_t>(state.num_variables()) + 1;
    r.a_flag.assign(size, false);
    r.b_flag.assign(size, false);
    r.c_flag.assign(size, false);
    r.d_flag.assign(size, false);
    for (Var v : state.nodes().members()) {
        const auto f = screen(state, v);
        const auto k = static_cast<std::size_t>(v);
        // Both halves at once would already have produced a substitution.
        if (f.a != f.b) {
            r.a_flag[k] = f.a;
            r.b_flag[k] = f.b;
            (f.a ? r.a_list : r.b_list).push_back(v);
            r.ab_list.push_back(v);
        }
        if (f.c != f.d) {
            r.c_flag[k] = f.c;
            r.d_flag[k] = f.d;
            (f.c ? r.c_list : r.d_list).push_back(v);
            r.cd_list.push_back(v);
        }
    }
    return r;
}

std::size_t run_residual_pass(ReductionState& s, ResidualScheduler& r, ReductionLog& log,
                              const EngineOptions& options, int pass_number) {
    auto flag = [](std::vector<bool>& f, Var v) { return f[static_cast<std::size_t>(v)]; };
    auto clear = [](std::vector<bool>& f, Var v) { f[static_cast<std::size_t>(v)] = false; };
    auto unlist = [](std::vector<Var>& list, Var v) { std::erase(list, v); };

    for (Var i : std::vector<Var>(r.ab_list)) {
        if (!s.is_free(i)) continue;
        const Coeff ci = s.linear(i);
        const bool from_a = flag(r.a_flag, i);
        for (Var h : sorted_neighbors(s, i)) {
            const Coeff d = s.coupling(i, h);
            if (d >= 0) continue;
            const Coeff ch = s.linear(h);
            bool hit = false;
            if (from_a) {
                hit = flag(r.b_flag, h) && ci - d + s.d_minus(i) >= 0 &&
                      ch + d + s.d_plus(h) <= 0;
            } else {
                hit = flag(r.a_flag, h) && ci + d + s.d_plus(i) <= 0 &&
                      ch - d + s.d_minus(h) >= 0;
            }
            if (!hit) continue;
            auto v = rule_complement_pair(s, i, h);
            if (!v) throw InternalError("residual complement check disagrees with the rule");
            fire(s, log, options, pass_number, *v, true);
            return 1;
        }
        if (from_a) {
            clear(r.a_flag, i);
            unlist(r.a_list, i);
        } else {
            clear(r.b_flag, i);
            unlist(r.b_list, i);
        }
        unlist(r.ab_list, i);
    }

    for (Var i : std::vector<Var>(r.cd_list)) {
        if (!s.is_free(i)) continue;
        const Coeff ci = s.linear(i);
        const bool from_c = flag(r.c_flag, i);
        for (Var h : sorted_neighbors(s, i)) {
            const Coeff d = s.coupling(i, h);
            if (d <= 0) continue;
            const Coeff ch = s.linear(h);
            bool hit = false;
            if (from_c) {
                hit = flag(r.c_flag, h) && ci - d + s.d_plus(i) <= 0 &&
                      ch - d + s.d_plus(h) <= 0;
            } else {
                hit = flag(r.d_flag, h) && ci + d + s.d_minus(i) >= 0 &&
                      ch + d + s.d_minus(h) >= 0;
            }
            if (!hit) continue;
            auto v = rule_equal_pair(s, i, h);
            if (!v) throw InternalError("residual equality check disagrees with the rule");
            fire(s, log, options, pass_number, *v, true);
            return 1;
        }
        if (from_c) {
            clear(r.c_flag, i);
            unlist(r.c_list, i);
        } else {
            clear(r.d_flag, i);
            unlist(r.d_list, i);
        }
        unlist(r.cd_list, i);
    }
    return 0;
}

PassSummary run_pass(ReductionState& state, ReductionLog& log, const EngineOptions& options,
                     int pass_number) {
    validate_order(options.rule_order);
    PassSummary summary;
    summary.pass = pass_number;
    summary.live_before = state.num_free();
    PassRunner runner(state, log, options, pass_number, summary);
    NodeList& nodes = state.nodes();
    while (nodes.has_current()) {
        if (nodes.reached_end()) {
            summary.stopped_at_end_loc = true;
            break;
        }
        runner.visit(nodes.current());
    }
    summary.live_after = state.num_free();
    log.passes.push_back(summary);
    return summary;
}

void reduce_state(ReductionState& state, ReductionLog& log, const EngineOptions& options) {
    if (options.max_passes && *options.max_passes < 1)
        throw ModelError("max_passes must be at least 1");
    validate_order(options.rule_order);
    int main_passes = 0;
    int pass_number = log.passes.empty() ? 0 : log.passes.back().pass;
    bool full = true;
    while (!options.max_passes || main_passes < *options.max_passes) {
        if (main_passes > 0 && state.num_free() == 0) break;
        state.nodes().begin_pass(full);
        ++main_passes;
        ++pass_number;
        const PassSummary summary = run_pass(state, log, options, pass_number);
        if (summary.drops() > 0) {
            full = false;
            continue;
        }
        if (!options.enable_residual) break;
        ResidualScheduler scheduler = ResidualScheduler::build(state);
        const std::size_t hits = run_residual_pass(state, scheduler, log, options, pass_number);
        log.passes.back().residual_substitutions = hits;
        if (hits == 0) break;
        full = true;
    }
}

SolutionMap make_solution_map(const ReductionState& state) {
    SolutionMap map;
    map.num_variables = state.num_variables();
    for (const auto& e : state.eliminations()) {
        switch (e.status.kind) {
            case VarStatus::FixedZero: map.assignments.emplace_back(e.var, false); break;
            case VarStatus::FixedOne: map.assignments.emplace_back(e.var, true); break;
            case VarStatus::SameAs: map.identities.push_back({e.var, false, e.status.ref}); break;
            case VarStatus::ComplementOf:
                map.identities.push_back({e.var, true, e.status.ref});
                break;
            case VarStatus::Free: throw InternalError("elimination recorded as free");
        }
    }
    map.survivors = state.free_variables();
    return map;
}

ReductionResult run_to_fixed_point(const QuboInstance& instance, const EngineOptions& options) {
    ReductionState state(instance, options.state_options);
    ReductionLog log;
    reduce_state(state, log, options);
    return {state.snapshot(), std::move(log), make_solution_map(state)};
}

Assignment reconstruct_solution(const SolutionMap& map, std::span<const std::uint8_t> reduced) {
    if (reduced.size() != map.survivors.size())
        throw ModelError("reduced solution has " + std::to_string(reduced.size()) +
                         " values for " + std::to_string(map.survivors.size()) + " survivors");
    const auto n = static_cast<std::size_t>(map.num_variables);
    std::vector<int> value(n + 1, -1);
    auto slot = [&](Var v) -> int& {
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw InternalError("solution map references variable " + std::to_string(v));
        return value[static_cast<std::size_t>(v)];
    };
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (reduced[k] > 1) throw ModelError("reduced solution values must be 0 or 1");
        slot(map.survivors[k]) = reduced[k];
    }
    for (const auto& [v, b] : map.assignments) slot(v) = b ? 1 : 0;
    for (auto it = map.identities.rbegin(); it != map.identities.rend(); ++it) {
        const int ref = slot(it->ref);
        if (ref < 0)
            throw InternalError("unresolvable reference from x" + std::to_string(it->var) +
                                " to x" + std::to_string(it->ref));
        slot(it->var) = it->complement ? 1 - ref : ref;
    }
    Assignment out(n);
    for (std::size_t v = 1; v <= n; ++v) {
        if (value[v] < 0) throw InternalError("variable " + std::to_string(v) + " left unassigned");
        out[v - 1] = static_cast<std::uint8_t>(value[v]);
    }
    return out;
}

std::optional<RuleVerdict> find_applicable_rule(const ReductionState& s) {
    const std::vector<Var> live = s.free_variables();
    for (Var i : live) {
        if (auto v = rule_fix_zero(s, i)) return v;
        if (auto v = rule_fix_one(s, i)) return v;
    }
    for (Var i : live) {
        for (Var h : sorted_neighbors(s, i)) {
            if (h < i) continue;
            using Probe = std::optional<RuleVerdict> (*)(const PairView&);
            const auto view = pair_view(s, i, h);
            for (Probe probe : {Probe{rule_pair_zero}, Probe{rule_pair_one_zero},
                                Probe{rule_pair_zero_one}, Probe{rule_pair_one},
                                Probe{rule_complement_pair}, Probe{rule_equal_pair}}) {
                if (auto v = probe(*view)) return v;
            }
        }
    }
    return std::nullopt;
}

QuboInstance enforce_unique_inequalities(const QuboInstance& instance,
                                         std::vector<EnforcedInequality>* applied,
                                         std::size_t max_rounds) {
    QuboInstance current = instance;
    std::set<std::tuple<Var, Var, InequalityKind>> done;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        ReductionState s(current);
        bool changed = false;
        for (Var i : s.free_variables()) {
            for (Var h : sorted_neighbors(s, i)) {
                if (h < i) continue;
                for (const auto& v : derive_pair_inequalities(s, i, h)) {
                    if (!v.unique) continue;
                    const auto& ineq = std::get<Inequality>(v.conclusion);
                    if (!done.emplace(ineq.i, ineq.h, ineq.kind).second) continue;
                    const Coeff bound = m_lower_bound(s, v);
                    current = penalty_rewrite(current, ineq.kind, ineq.i, ineq.h, bound + 1, bound);
                    if (applied) applied->push_back({ineq, v.rule, bound + 1});
                    changed = true;
                    break;
                }
                if (changed) break;
            }
            if (changed) break;
        }
        if (!changed) break;
    }
    return current;
}

}  // namespace qreduce
