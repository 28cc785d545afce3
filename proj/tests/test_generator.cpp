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


#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qreduce/generator.hpp"

using namespace qreduce;

namespace {

bool connected(const QuboInstance& inst) {
    const auto n = static_cast<std::size_t>(inst.num_variables());
    std::vector<std::size_t> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t parts = n;
    for (const auto& t : inst.interactions()) {
        auto a = find(static_cast<std::size_t>(t.i));
        auto b = find(static_cast<std::size_t>(t.j));
        if (a != b) {
            parent[a] = b;
            --parts;
        }
    }
    return parts <= 1;
}

}  // namespace

TEST_CASE("design table rows") {
    REQUIRE(design_table().size() == 16);
    const auto& r1 = design_row(1);
    CHECK(r1.upper_bound == 10);
    CHECK(r1.linear_multiplier == 10);
    CHECK(r1.quadratic_multiplier == 20);
    CHECK(r1.pct_quadratic_multiplied == 0.05);
    CHECK(r1.pct_linear_multiplied == 0.10);
    CHECK(r1.pct_nonzero_linear == 0.25);

    const auto& r16 = design_row(16);
    CHECK(r16.upper_bound == 10);
    CHECK(r16.linear_multiplier == 10);
    CHECK(r16.quadratic_multiplier == 20);
    CHECK(r16.pct_quadratic_multiplied == 0.15);
    CHECK(r16.pct_linear_multiplied == 0.20);
    CHECK(r16.pct_nonzero_linear == 0.05);

    const auto& r8 = design_row(8);
    CHECK(r8.upper_bound == 100);
    CHECK(r8.linear_multiplier == 5);
    CHECK(r8.quadratic_multiplier == 10);
    CHECK(r8.pct_quadratic_multiplied == 0.05);
    CHECK(r8.pct_linear_multiplied == 0.10);
    CHECK(r8.pct_nonzero_linear == 0.25);

    CHECK_THROWS_AS(design_row(0), ModelError);
    CHECK_THROWS_AS(design_row(17), ModelError);
}

TEST_CASE("every factor takes one of two levels, eight times each") {
    auto levels = [](auto get) {
        std::multiset<double> s;
        for (const auto& r : design_table()) s.insert(static_cast<double>(get(r)));
        return s;
    };
    auto check = [](const std::multiset<double>& s, double lo, double hi) {
        CHECK(s.count(lo) == 8);
        CHECK(s.count(hi) == 8);
    };
    check(levels([](const DesignRow& r) { return r.upper_bound; }), 10, 100);
    check(levels([](const DesignRow& r) { return r.linear_multiplier; }), 5, 10);
    check(levels([](const DesignRow& r) { return r.quadratic_multiplier; }), 10, 20);
    check(levels([](const DesignRow& r) { return r.pct_quadratic_multiplied; }), 0.05, 0.15);
    check(levels([](const DesignRow& r) { return r.pct_linear_multiplied; }), 0.10, 0.20);
    check(levels([](const DesignRow& r) { return r.pct_nonzero_linear; }), 0.05, 0.25);
}

TEST_CASE("1000L instance shape") {
    auto spec = GeneratorSpec::from_row(design_row(1), 1000, 5000, 42);
    auto g = generate(spec);
    const auto& inst = g.instance;
    CHECK(inst.num_variables() == 1000);
    CHECK(inst.num_interactions() == 5000);
    CHECK(inst.num_nonzero_linear() == 250);
    CHECK(g.hubs.size() == 10);
    CHECK(hub_count(spec) == 10);
    CHECK(connected(inst));
    CHECK(generate_instance(spec) == inst);

    auto other = spec;
    other.seed = 43;
    CHECK_FALSE(generate_instance(other) == inst);
}

TEST_CASE("coefficient ranges and multiplied counts") {
    for (int row = 1; row <= 16; ++row) {
        const auto& r = design_row(row);
        auto spec = GeneratorSpec::from_row(r, 300, 1500, static_cast<std::uint64_t>(row));
        auto inst = generate_instance(spec);
        std::int64_t big_edges = 0;
        for (const auto& t : inst.interactions()) {
            REQUIRE(t.value != 0);
            REQUIRE(std::abs(t.value) <= r.upper_bound * r.quadratic_multiplier);
            if (std::abs(t.value) > r.upper_bound) {
                ++big_edges;
                REQUIRE(t.value % r.quadratic_multiplier == 0);
            }
        }
        CHECK(big_edges <= selected_count(r.pct_quadratic_multiplied, 1500));
        CHECK(big_edges > 0);

        const auto nonzero = static_cast<std::int64_t>(inst.num_nonzero_linear());
        CHECK(nonzero == selected_count(r.pct_nonzero_linear, 300));
        std::int64_t big_linear = 0;
        for (auto c : inst.linear_terms()) {
            REQUIRE(std::abs(c) <= r.upper_bound * r.linear_multiplier);
            if (std::abs(c) > r.upper_bound) ++big_linear;
        }
        CHECK(big_linear <= selected_count(r.pct_linear_multiplied, nonzero));
    }
}

TEST_CASE("hubs are dense") {
    for (const auto& size : full_sizes()) {
        if (size.edges > 100000) continue;
        auto spec = GeneratorSpec::from_row(design_row(5), size.n, size.edges, 9);
        auto g = generate(spec);
        std::vector<std::int64_t> degree(static_cast<std::size_t>(size.n) + 1, 0);
        for (const auto& t : g.instance.interactions()) {
            ++degree[static_cast<std::size_t>(t.i)];
            ++degree[static_cast<std::size_t>(t.j)];
        }
        std::set<Var> hubs(g.hubs.begin(), g.hubs.end());
        double hub_sum = 0, other_sum = 0;
        for (Var v = 1; v <= size.n; ++v)
            (hubs.count(v) ? hub_sum : other_sum) += static_cast<double>(degree[static_cast<std::size_t>(v)]);
        double hub_mean = hub_sum / static_cast<double>(hubs.size());
        double other_mean = other_sum / static_cast<double>(size.n - static_cast<Var>(hubs.size()));
        INFO(size.id);
        CHECK(hub_mean >= 3 * other_mean);
        CHECK(connected(g.instance));
    }
}

TEST_CASE("boundary sizes") {
    GeneratorSpec tree;
    tree.n = 4;
    tree.target_edges = 3;
    tree.pct_nonzero_linear = 1.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        tree.seed = seed;
        auto inst = generate_instance(tree);
        REQUIRE(inst.num_interactions() == 3);
        REQUIRE(connected(inst));
        REQUIRE(inst.num_nonzero_linear() == 4);
    }

    GeneratorSpec full = tree;
    full.target_edges = 6;
    CHECK(generate_instance(full).num_interactions() == 6);

    GeneratorSpec sparse = tree;
    sparse.target_edges = 2;
    CHECK_THROWS_AS(generate_instance(sparse), ModelError);
    GeneratorSpec dense = tree;
    dense.target_edges = 7;
    CHECK_THROWS_AS(generate_instance(dense), ModelError);
    GeneratorSpec bad_pct = tree;
    bad_pct.pct_nonzero_linear = 1.5;
    CHECK_THROWS_AS(generate_instance(bad_pct), ModelError);
}

TEST_CASE("sparse instances are repaired into one component") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GeneratorSpec s;
        s.n = 60;
        s.target_edges = 59 + static_cast<std::int64_t>(seed % 10);
        s.seed = seed;
        auto inst = generate_instance(s);
        REQUIRE(inst.num_interactions() == static_cast<std::size_t>(s.target_edges));
        REQUIRE(connected(inst));
    }
}

TEST_CASE("suites") {
    auto desk = generate_benchmark_suite(desk_sizes(), design_table(), 7);
    CHECK(desk.size() == 32);
    std::set<std::pair<std::string, int>> tags;
    for (const auto& e : desk) {
        tags.insert({e.size_id, e.row_id});
        REQUIRE(e.instance.num_interactions() == static_cast<std::size_t>(e.spec.target_edges));
    }
    CHECK(tags.size() == 32);
    auto again = generate_benchmark_suite(desk_sizes(), design_table(), 7);
    for (std::size_t k = 0; k < desk.size(); ++k) REQUIRE(again[k].instance == desk[k].instance);

    CHECK(generate_benchmark_suite(desk_sizes(), {}, 7).empty());
    CHECK(full_sizes().size() * design_table().size() == 96);
    CHECK(suite_seed(7, 0, 1) != suite_seed(7, 0, 2));
    CHECK(suite_seed(7, 0, 1) != suite_seed(7, 1, 1));
}

TEST_CASE("bounded draws") {
    Random rng(1);
    std::vector<int> hits(7, 0);
    for (int k = 0; k < 70000; ++k) ++hits[rng.below(7)];
    for (int h : hits) CHECK(std::abs(h - 10000) < 600);
    for (int k = 0; k < 1000; ++k) {
        auto v = rng.nonzero(3);
        REQUIRE(v != 0);
        REQUIRE(std::abs(v) <= 3);
    }
    for (std::uint64_t k : {0, 1, 5, 60, 99, 100}) {
        auto s = rng.sample(100, k);
        REQUIRE(s.size() == k);
        REQUIRE(std::is_sorted(s.begin(), s.end()));
        REQUIRE(std::set<std::uint64_t>(s.begin(), s.end()).size() == k);
        for (auto x : s) REQUIRE(x < 100);
    }
    CHECK_THROWS_AS(rng.sample(3, 4), ModelError);
}

TEST_CASE("the header records the generator settings") {
    auto spec = GeneratorSpec::from_row(design_row(3), 100, 500, 11);
    auto lines = describe(spec);
    bool seed_line = false;
    for (const auto& l : lines) seed_line = seed_line || l.find("11") != std::string::npos;
    CHECK(seed_line);
}
