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
#include <numeric>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qreduce/engine.hpp"
#include "qreduce/oracle.hpp"
#include "support.hpp"

using namespace qreduce;
using qreduce::testing::make_instance;

namespace {

QuboInstance permuted(const QuboInstance& inst, const std::vector<Var>& perm) {
    std::vector<Coeff> linear(inst.linear_terms().size());
    for (Var v = 1; v <= inst.num_variables(); ++v)
        linear[static_cast<std::size_t>(perm[static_cast<std::size_t>(v - 1)] - 1)] = inst.linear(v);
    std::vector<Interaction> quad;
    for (const auto& t : inst.interactions())
        quad.push_back({perm[static_cast<std::size_t>(t.i - 1)], perm[static_cast<std::size_t>(t.j - 1)], t.value});
    return QuboInstance::from_parts(inst.num_variables(), std::move(linear), std::move(quad), inst.offset());
}

QuboInstance negated(const QuboInstance& inst) {
    std::vector<Coeff> linear;
    for (auto c : inst.linear_terms()) linear.push_back(-c);
    std::vector<Interaction> quad;
    for (const auto& t : inst.interactions()) quad.push_back({t.i, t.j, -t.value});
    return QuboInstance::from_parts(inst.num_variables(), std::move(linear), std::move(quad), -inst.offset());
}

}  // namespace

TEST_CASE("small exact solutions") {
    auto r = brute_force_solve(make_instance(2, {3, -2}, {{1, 2, 2}}));
    CHECK(r.optimum == 3);
    CHECK((r.optima == std::vector<Assignment>{{1, 0}, {1, 1}}));
    CHECK(r.evaluated_count == 4);
    CHECK_FALSE(r.truncated);

    auto one = brute_force_solve(make_instance(1, {-5}, {}));
    CHECK(one.optimum == 0);
    CHECK((one.optima == std::vector<Assignment>{{0}}));

    auto empty = brute_force_solve(make_instance(0, {}, {}, 7));
    CHECK(empty.optimum == 7);
    CHECK((empty.optima == std::vector<Assignment>{Assignment{}}));
}

TEST_CASE("size limit and optima cap") {
    CHECK_THROWS_AS(brute_force_solve(make_instance(30, {}, {})), OracleLimitError);
    CHECK_THROWS_AS(brute_force_solve(make_instance(5, {}, {}), 4), OracleLimitError);
    auto flat = brute_force_solve(make_instance(6, {}, {}), 24, 10);
    CHECK(flat.truncated);
    CHECK(flat.optima.size() == 10);
    CHECK(flat.optimum == 0);
}

TEST_CASE("every listed optimum evaluates to the optimum") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        auto inst = qreduce::testing::random_instance(rng, 1 + k % 12, 0.5, -4, 4);
        auto r = brute_force_solve(inst);
        REQUIRE_FALSE(r.optima.empty());
        REQUIRE(std::is_sorted(r.optima.begin(), r.optima.end()));
        for (const auto& x : r.optima) REQUIRE(evaluate(inst, x) == r.optimum);
        std::size_t count = 0;
        const Var n = inst.num_variables();
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Assignment x(static_cast<std::size_t>(n));
            for (Var b = 0; b < n; ++b) x[static_cast<std::size_t>(b)] = (m >> b) & 1u;
            auto v = evaluate(inst, x);
            REQUIRE(v <= r.optimum);
            if (v == r.optimum) ++count;
        }
        REQUIRE(count == r.optima.size());
    }
}

TEST_CASE("optimum is invariant under relabeling") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; ++k) {
        Var n = 1 + k % 14;
        auto inst = qreduce::testing::random_instance(rng, n, 0.4, -10, 10);
        std::vector<Var> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto a = brute_force_solve(inst);
        auto b = brute_force_solve(permuted(inst, perm));
        REQUIRE(a.optimum == b.optimum);
        REQUIRE(a.optima.size() == b.optima.size());
    }
}

TEST_CASE("negation gives the minimum") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) {
        Var n = 1 + k % 12;
        auto inst = qreduce::testing::random_instance(rng, n, 0.5, -10, 10);
        Coeff lowest = 0;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Assignment x(static_cast<std::size_t>(n));
            for (Var b = 0; b < n; ++b) x[static_cast<std::size_t>(b)] = (m >> b) & 1u;
            lowest = m == 0 ? evaluate(inst, x) : std::min(lowest, evaluate(inst, x));
        }
        REQUIRE(brute_force_solve(negated(inst)).optimum == -lowest);
    }
}

TEST_CASE("equivalence checks") {
    auto chain = make_instance(3, {1, 1, 2}, {{1, 2, -2}, {2, 3, 1}});
    auto r = run_to_fixed_point(chain);
    auto rep = check_equivalence(chain, r.reduced, r.map);
    CHECK(rep.ok);
    CHECK(rep.original_optimum == 4);
    CHECK(rep.reduced_optimum == 4);

    auto silent = make_instance(3, {1, 1, 1}, {{1, 2, -2}, {1, 3, -2}, {2, 3, -2}});
    SolutionMap identity{3, {}, {}, {1, 2, 3}};
    CHECK(check_equivalence(silent, silent, identity).ok);

    int detected = 0;
    for (int k = 0; k < 300 && detected < 5; ++k) {
        auto inst = qreduce::testing::sweep_instance(2, k, 12);
        auto res = run_to_fixed_point(inst);
        if (res.map.identities.empty()) continue;
        auto bad = res.map;
        bad.identities[0].complement = !bad.identities[0].complement;
        auto check = check_equivalence(inst, res.reduced, bad);
        if (check.ok) continue;
        ++detected;
        REQUIRE(check.counterexample);
        REQUIRE(evaluate(inst, *check.counterexample) != check.original_optimum);
    }
    CHECK(detected == 5);
}

TEST_CASE("equivalence refuses large instances") {
    auto big = make_instance(30, {}, {});
    SolutionMap map{30, {}, {}, {}};
    for (Var v = 1; v <= 30; ++v) map.survivors.push_back(v);
    CHECK_THROWS_AS(check_equivalence(big, big, map), OracleLimitError);
}
