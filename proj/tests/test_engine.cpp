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


#include <algorithm>
#include <variant>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qreduce/engine.hpp"
#include "qreduce/oracle.hpp"
#include "support.hpp"

using namespace qreduce;
using qreduce::testing::make_instance;
using qreduce::testing::sweep_instance;

namespace {

QuboInstance chain() { return make_instance(3, {1, 1, 2}, {{1, 2, -2}, {2, 3, 1}}); }

// Three variables with pairwise coupling -2 and unit linear terms.
QuboInstance silent() { return make_instance(3, {1, 1, 1}, {{1, 2, -2}, {1, 3, -2}, {2, 3, -2}}); }

}  // namespace

TEST_CASE("chain instance reduces completely") {
    auto inst = chain();
    ReductionState s(inst);
    ReductionLog log;
    auto summary = run_first_pass(s, log);
    REQUIRE(log.events.size() == 2);

    const auto& first = log.events[0];
    CHECK(first.verdict.rule == RuleId::R3_2);
    const auto& pf = std::get<PairFix>(first.verdict.conclusion);
    CHECK(pf.i == 2);
    CHECK(pf.value_i);
    CHECK(pf.h == 1);
    CHECK_FALSE(pf.value_h);
    CHECK_FALSE(first.verdict.unique);

    const auto& second = log.events[1];
    CHECK(second.verdict.rule == RuleId::R1_0);
    CHECK(std::get<Fix>(second.verdict.conclusion).var == 3);
    CHECK(std::get<Fix>(second.verdict.conclusion).value);
    CHECK(s.offset() == 4);
    CHECK(s.num_free() == 0);
    CHECK(summary.live_after == 0);

    auto r = run_to_fixed_point(inst);
    CHECK(r.map.survivors.empty());
    CHECK(r.reduced.offset() == 4);
    CHECK(r.log.count(RuleId::R3_2) == 1);
    CHECK(r.log.count(RuleId::R1_0) == 1);
    CHECK(r.log.passes.size() == 1);
    CHECK(reconstruct_solution(r.map, {}) == Assignment{0, 1, 1});
    CHECK(brute_force_solve(inst).optimum == 4);
    CHECK((brute_force_solve(inst).optima == std::vector<Assignment>{{0, 1, 1}}));
}

TEST_CASE("fix then updated fix") {
    auto inst = make_instance(2, {3, -2}, {{1, 2, 2}});
    auto r = run_to_fixed_point(inst);
    REQUIRE(r.log.events.size() == 2);
    CHECK(r.log.events[0].verdict.rule == RuleId::R1_0);
    CHECK(r.log.events[0].verdict.unique);
    CHECK(r.log.events[1].verdict.rule == RuleId::R2_0);
    CHECK_FALSE(r.log.events[1].verdict.unique);
    CHECK(r.reduced.offset() == 3);
    CHECK(brute_force_solve(inst).optimum == 3);

    auto edgeless = run_to_fixed_point(make_instance(2, {5, -5}, {}));
    REQUIRE(edgeless.log.events.size() == 2);
    CHECK(std::get<Fix>(edgeless.log.events[0].verdict.conclusion).value);
    CHECK_FALSE(std::get<Fix>(edgeless.log.events[1].verdict.conclusion).value);
    CHECK(edgeless.reduced.offset() == 5);
}

TEST_CASE("rule-silent instance is returned unchanged") {
    auto inst = silent();
    ReductionState fresh(inst);
    CHECK(verify_fixed_point(fresh));
    auto r = run_to_fixed_point(inst);
    CHECK(r.log.events.empty());
    CHECK(r.reduced == inst);
    CHECK(r.map.survivors == std::vector<Var>{1, 2, 3});
    auto sol = brute_force_solve(inst);
    CHECK(sol.optimum == 1);
    CHECK(sol.optima.size() == 3);
}

TEST_CASE("a single fix is enough to break the three-cycle with mixed signs") {
    auto inst = make_instance(3, {1, -2, -1}, {{1, 2, 3}, {2, 3, -3}});
    ReductionState s(inst);
    CHECK(rule_fix_one(s, 1));
    CHECK_FALSE(verify_fixed_point(s));
}

TEST_CASE("fixed point checker sees single-variable rules") {
    ReductionState s(make_instance(2, {4, 0}, {{1, 2, -1}}));
    auto v = find_applicable_rule(s);
    REQUIRE(v);
    CHECK(v->rule == RuleId::R1_0);
}

TEST_CASE("complement found by the screened check leaves nothing for the residual pass") {
    EngineOptions opt;
    opt.rule_order = {RuleId::R2_5, RuleId::R2_6};
    auto r = run_to_fixed_point(make_instance(2, {1, 1}, {{1, 2, -2}}), opt);
    REQUIRE_FALSE(r.log.events.empty());
    CHECK(r.log.events[0].verdict.rule == RuleId::R2_5);
    CHECK_FALSE(r.log.events[0].residual);
    for (const auto& e : r.log.events) CHECK_FALSE(e.residual);
    CHECK(r.map.identities.size() == 1);
    CHECK(r.map.identities[0].complement);
}

TEST_CASE("residual pass finds the complement the screen misses") {
    auto inst = make_instance(3, {-2, -1, 1}, {{1, 2, 3}, {1, 3, 3}, {2, 3, -3}});
    ReductionState s(inst);
    ReductionLog log;
    EngineOptions opt;
    auto summary = run_pass(s, log, opt, 1);
    CHECK(summary.drops() == 0);
    CHECK(verify_fixed_point(s) == false);

    auto sched = ResidualScheduler::build(s);
    CHECK(sched.b_flag[2]);
    CHECK_FALSE(sched.a_flag[2]);
    CHECK(sched.a_flag[3]);
    CHECK_FALSE(sched.b_flag[3]);
    REQUIRE(run_residual_pass(s, sched, log, opt, 1) == 1);
    const auto& ev = log.events.back();
    CHECK(ev.residual);
    CHECK(ev.verdict.rule == RuleId::R2_5);
    const auto& sub = std::get<SubstituteComplement>(ev.verdict.conclusion);
    CHECK(sub.keep == 2);
    CHECK(sub.drop == 3);
    CHECK(s.status(3) == StatusEntry{VarStatus::ComplementOf, 2});

    auto r = run_to_fixed_point(inst);
    REQUIRE_FALSE(r.log.events.empty());
    CHECK(r.log.events[0].residual);
    CHECK(check_equivalence(inst, r.reduced, r.map).ok);

    EngineOptions off;
    off.enable_residual = false;
    auto plain = run_to_fixed_point(inst, off);
    CHECK(plain.log.events.empty());
}

TEST_CASE("residual pass finds the equality the screen misses") {
    auto inst = make_instance(3, {-2, -2, -2}, {{1, 2, 3}, {1, 3, 3}, {2, 3, 3}});
    auto r = run_to_fixed_point(inst);
    REQUIRE(r.log.events.size() >= 2);
    CHECK(r.log.events[0].residual);
    CHECK(r.log.events[0].verdict.rule == RuleId::R2_6);
    CHECK(r.log.events[1].verdict.rule == RuleId::R3_4);
    CHECK(check_equivalence(inst, r.reduced, r.map).ok);
}

TEST_CASE("residual pass without candidates does nothing") {
    ReductionState bare(make_instance(2, {1, -1}, {}));
    ReductionLog log;
    auto empty = ResidualScheduler::build(bare);
    CHECK(empty.ab_list.empty());
    CHECK(empty.cd_list.empty());
    CHECK(run_residual_pass(bare, empty, log, {}, 1) == 0);
    CHECK(bare.num_free() == 2);

    ReductionState s(silent());
    auto sched = ResidualScheduler::build(s);
    CHECK_FALSE(sched.ab_list.empty());
    CHECK(run_residual_pass(s, sched, log, {}, 1) == 0);
    CHECK(s.num_free() == 3);
    CHECK(log.events.empty());
}

TEST_CASE("reconstruction") {
    auto r = run_to_fixed_point(chain());
    CHECK(reconstruct_solution(r.map, {}) == Assignment{0, 1, 1});

    SolutionMap single{2, {}, {{2, true, 1}}, {1}};
    CHECK(reconstruct_solution(single, Assignment{0}) == Assignment{0, 1});

    SolutionMap link{3, {{1, true}}, {{3, false, 2}, {2, true, 1}}, {}};
    auto x = reconstruct_solution(link, {});
    CHECK(x == Assignment{1, 0, 0});

    SolutionMap broken{2, {}, {{2, false, 1}}, {}};
    CHECK_THROWS_AS(reconstruct_solution(broken, {}), InternalError);
    CHECK_THROWS_AS(reconstruct_solution(single, Assignment{0, 1}), ModelError);
}

TEST_CASE("sweep: soundness, fixed point, idempotence, scan bookkeeping") {
    EngineOptions opt;
    opt.track_pair_visits = true;
    int failures = 0, not_fixed = 0, not_idempotent = 0, bookkeeping = 0;
    for (int k = 0; k < 1000; ++k) {
        auto inst = sweep_instance(1, k);
        auto r = run_to_fixed_point(inst, opt);
        auto rep = check_equivalence(inst, r.reduced, r.map);
        if (!rep.ok) {
            ++failures;
            UNSCOPED_INFO(k << ": " << rep.message);
        }
        ReductionState again(r.reduced);
        for (Var v = 1; v <= inst.num_variables(); ++v) {
            if (std::find(r.map.survivors.begin(), r.map.survivors.end(), v) == r.map.survivors.end()) {
                REQUIRE(again.neighbors(v).empty());
                REQUIRE(again.linear(v) == 0);
            }
        }
        auto rerun = run_to_fixed_point(compact(r.reduced, r.map.survivors));
        if (!rerun.log.events.empty()) ++not_idempotent;
        if (!verify_fixed_point(ReductionState(compact(r.reduced, r.map.survivors)))) ++not_fixed;

        if (r.log.passes.size() > static_cast<std::size_t>(inst.num_variables()) + 1) ++bookkeeping;
        for (std::size_t p = 0; p < r.log.passes.size(); ++p) {
            const auto& ps = r.log.passes[p];
            if (ps.duplicate_pair_visits != 0 || ps.probes_after_pair_fix != 0) ++bookkeeping;
            if (p + 1 < r.log.passes.size() && ps.drops() == 0 && ps.residual_substitutions == 0) ++bookkeeping;
        }
        for (std::size_t e = 1; e < r.log.events.size(); ++e) {
            if (r.log.events[e].live_after >= r.log.events[e - 1].live_after) ++bookkeeping;
            if (r.log.events[e].pass < r.log.events[e - 1].pass) ++bookkeeping;
        }
        REQUIRE(r.map.survivors.size() + r.map.assignments.size() + r.map.identities.size() ==
                static_cast<std::size_t>(inst.num_variables()));
    }
    CHECK(failures == 0);
    CHECK(not_fixed == 0);
    CHECK(not_idempotent == 0);
    CHECK(bookkeeping == 0);
}

TEST_CASE("unique verdicts pin the unique optimum") {
    int qualifying = 0;
    for (int k = 0; k < 3000; ++k) {
        auto inst = sweep_instance(17, k, 14);
        auto r = run_to_fixed_point(inst);
        if (r.log.events.empty() || !r.map.survivors.empty()) continue;
        bool all_unique = std::all_of(r.log.events.begin(), r.log.events.end(),
                                      [](const LogEvent& e) { return e.verdict.unique; });
        if (!all_unique) continue;
        ++qualifying;
        auto sol = brute_force_solve(inst);
        REQUIRE(sol.optima.size() == 1);
        REQUIRE(sol.optima[0] == reconstruct_solution(r.map, {}));
    }
    CHECK(qualifying > 10);
}

TEST_CASE("pass cap stops early") {
    int found = 0;
    for (int k = 0; k < 1000 && found < 20; ++k) {
        auto inst = sweep_instance(3, k);
        auto full = run_to_fixed_point(inst);
        if (full.log.passes.size() < 2 || full.log.passes[1].drops() == 0) continue;
        ++found;
        EngineOptions opt;
        opt.max_passes = 1;
        auto capped = run_to_fixed_point(inst, opt);
        CHECK(capped.log.passes.size() == 1);
        CHECK(capped.map.survivors.size() > full.map.survivors.size());
        CHECK(check_equivalence(inst, capped.reduced, capped.map).ok);
    }
    CHECK(found > 0);
}

TEST_CASE("mined inequalities are logged, not applied") {
    EngineOptions opt;
    opt.emit_inequalities = true;
    std::size_t mined = 0;
    for (int k = 0; k < 200; ++k) {
        auto inst = sweep_instance(8, k);
        auto plain = run_to_fixed_point(inst);
        auto r = run_to_fixed_point(inst, opt);
        mined += r.log.inequalities.size();
        REQUIRE(r.reduced == plain.reduced);
        for (const auto& q : r.log.inequalities) {
            REQUIRE(std::holds_alternative<Inequality>(q.verdict.conclusion));
            REQUIRE(q.m_bound >= 0);
        }
    }
    CHECK(mined > 0);
}

TEST_CASE("disabling the neighbor update breaks soundness") {
    EngineOptions broken;
    broken.state_options.complement_updates_neighbor_linear = false;
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        auto inst = sweep_instance(1, k);
        auto r = run_to_fixed_point(inst, broken);
        if (!check_equivalence(inst, r.reduced, r.map).ok) ++failures;
    }
    CHECK(failures > 0);
}

TEST_CASE("enforcing unique inequalities keeps the optimum") {
    for (int k = 0; k < 150; ++k) {
        auto inst = sweep_instance(21, k, 12);
        std::vector<EnforcedInequality> applied;
        auto out = enforce_unique_inequalities(inst, &applied);
        auto before = brute_force_solve(inst);
        auto after = brute_force_solve(out);
        REQUIRE(after.optimum == before.optimum);
        REQUIRE(after.optima == before.optima);
        for (const auto& e : applied) REQUIRE(e.m > 0);
    }
}
