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

#include "qreduce/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace qreduce {

namespace {

using Pair = std::pair<Var, Var>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t tri(std::uint64_t m) { return m * (m - (m > 0 ? 1 : 0)) / 2; }

// Pair (a, b), a < b, of the t-th element in the order (0,1), (0,2), (1,2), (0,3), ...
std::pair<std::uint64_t, std::uint64_t> untri(std::uint64_t t) {
    auto b = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(t))) / 2.0);
    while (b > 1 && b * (b - 1) / 2 > t) --b;
    while ((b + 1) * b / 2 <= t) ++b;
    return {t - b * (b - 1) / 2, b};
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

void validate(const GeneratorSpec& s) {
    auto pct_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (s.n < 1) throw ModelError("generator: n must be at least 1");
    if (s.upper_bound < 1) throw ModelError("generator: upper bound must be at least 1");
    if (s.linear_multiplier < 1 || s.quadratic_multiplier < 1)
        throw ModelError("generator: multipliers must be at least 1");
    if (!pct_ok(s.pct_quadratic_multiplied) || !pct_ok(s.pct_linear_multiplied) ||
        !pct_ok(s.pct_nonzero_linear) || !pct_ok(s.hub_fraction) || !pct_ok(s.hub_edge_share))
        throw ModelError("generator: percentages must lie in [0, 1]");
    const auto pairs = static_cast<std::int64_t>(tri(static_cast<std::uint64_t>(s.n)));
    if (s.target_edges > pairs)
        throw ModelError("generator: " + std::to_string(s.target_edges) + " edges exceed the " +
                         std::to_string(pairs) + " available pairs");
    if (s.target_edges < s.n - 1)
        throw ModelError("generator: " + std::to_string(s.target_edges) +
                         " edges cannot connect " + std::to_string(s.n) + " nodes");
}

std::string pct_text(double p) {
    std::ostringstream os;
    os << p * 100.0 << '%';
    return os.str();
}

}  // namespace

const std::vector<DesignRow>& design_table() {
    static const std::vector<DesignRow> rows = {
        {1, 10, 10, 20, 0.05, 0.10, 0.25},   {2, 100, 10, 20, 0.15, 0.20, 0.25},
        {3, 10, 5, 20, 0.15, 0.10, 0.05},    {4, 100, 5, 20, 0.05, 0.20, 0.05},
        {5, 10, 10, 10, 0.05, 0.20, 0.05},   {6, 100, 10, 10, 0.15, 0.10, 0.05},
        {7, 10, 5, 10, 0.15, 0.20, 0.25},    {8, 100, 5, 10, 0.05, 0.10, 0.25},
        {9, 100, 5, 10, 0.15, 0.20, 0.05},   {10, 10, 5, 10, 0.05, 0.10, 0.05},
        {11, 100, 10, 10, 0.05, 0.20, 0.25}, {12, 10, 10, 10, 0.15, 0.10, 0.25},
        {13, 100, 5, 20, 0.15, 0.10, 0.25},  {14, 10, 5, 20, 0.05, 0.20, 0.25},
        {15, 100, 10, 20, 0.05, 0.10, 0.05}, {16, 10, 10, 20, 0.15, 0.20, 0.05},
    };
    return rows;
}

const DesignRow& design_row(int id) {
    if (id < 1 || id > 16)
        throw ModelError("design row " + std::to_string(id) + " does not exist (valid: 1-16)");
    return design_table()[static_cast<std::size_t>(id - 1)];
}

const std::vector<SizeConfig>& full_sizes() {
    static const std::vector<SizeConfig> sizes = {
        {"1000L", 1000, 5000},     {"1000H", 1000, 10000},     {"5000L", 5000, 25000},
        {"5000H", 5000, 50000},    {"10000L", 10000, 100000}, {"10000H", 10000, 500000},
    };
    return sizes;
}

const std::vector<SizeConfig>& desk_sizes() {
    static const std::vector<SizeConfig> sizes = {{"100L", 100, 500}, {"100H", 100, 1000}};
    return sizes;
}

GeneratorSpec GeneratorSpec::from_row(const DesignRow& row, Var n, std::int64_t edges,
                                      std::uint64_t seed) {
    GeneratorSpec s;
    s.upper_bound = row.upper_bound;
    s.linear_multiplier = row.linear_multiplier;
    s.quadratic_multiplier = row.quadratic_multiplier;
    s.pct_quadratic_multiplied = row.pct_quadratic_multiplied;
    s.pct_linear_multiplied = row.pct_linear_multiplied;
    s.pct_nonzero_linear = row.pct_nonzero_linear;
    s.n = n;
    s.target_edges = edges;
    s.seed = seed;
    return s;
}

std::int64_t selected_count(double pct, std::int64_t k) {
    return static_cast<std::int64_t>(std::floor(pct * static_cast<double>(k) + 1e-9));
}

std::int64_t hub_count(const GeneratorSpec& spec) {
    const auto h = static_cast<std::int64_t>(std::ceil(spec.hub_fraction * spec.n - 1e-9));
    return std::clamp<std::int64_t>(h, 0, spec.n);
}

std::uint64_t Random::below(std::uint64_t bound) {
    if (bound == 0) throw ModelError("Random::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
}

Coeff Random::nonzero(Coeff u) {
    const auto v = static_cast<Coeff>(below(static_cast<std::uint64_t>(2 * u)));
    return v < u ? v - u : v - u + 1;
}

std::vector<std::uint64_t> Random::sample(std::uint64_t m, std::uint64_t k) {
    if (k > m) throw ModelError("Random::sample: more items requested than available");
    std::vector<std::uint64_t> out;
    if (2 * k > m) {
        out.resize(m);
        std::iota(out.begin(), out.end(), 0);
        for (std::uint64_t t = 0; t < k; ++t) std::swap(out[t], out[t + below(m - t)]);
        out.resize(k);
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(k * 2);
        out.reserve(k);
        while (out.size() < k) {
            const std::uint64_t x = below(m);
            if (seen.insert(x).second) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GeneratedInstance generate(const GeneratorSpec& spec) {
    validate(spec);
    Random rng(spec.seed);
    const auto n = static_cast<std::uint64_t>(spec.n);
    const auto edges = static_cast<std::uint64_t>(spec.target_edges);
    const auto num_hubs = static_cast<std::uint64_t>(hub_count(spec));

    std::vector<Var> hubs;
    std::vector<Var> others;
    {
        std::vector<bool> is_hub(n, false);
        for (auto x : rng.sample(n, num_hubs)) is_hub[x] = true;
        for (std::uint64_t v = 0; v < n; ++v)
            (is_hub[v] ? hubs : others).push_back(static_cast<Var>(v + 1));
    }

    // Edge budget: a fixed share on hub-incident pairs, the rest uniform.
    const std::uint64_t hub_hub = tri(num_hubs);
    const std::uint64_t hub_pairs = hub_hub + num_hubs * (n - num_hubs);
    const std::uint64_t plain_pairs = tri(n - num_hubs);
    std::uint64_t hub_edges = std::min<std::uint64_t>(
        hub_pairs, static_cast<std::uint64_t>(selected_count(spec.hub_edge_share, spec.target_edges)));
    std::uint64_t plain_edges = edges - hub_edges;
    if (plain_edges > plain_pairs) {
        hub_edges += plain_edges - plain_pairs;
        plain_edges = plain_pairs;
    }

    std::vector<Pair> pairs;
    pairs.reserve(edges);
    for (auto t : rng.sample(hub_pairs, hub_edges)) {
        if (t < hub_hub) {
            auto [a, b] = untri(t);
            pairs.emplace_back(hubs[a], hubs[b]);
        } else {
            t -= hub_hub;
            pairs.emplace_back(hubs[t / (n - num_hubs)], others[t % (n - num_hubs)]);
        }
    }
    for (auto t : rng.sample(plain_pairs, plain_edges)) {
        auto [a, b] = untri(t);
        pairs.emplace_back(others[a], others[b]);
    }

    // Connectivity repair: swap cycle-closing edges for links between components.
    UnionFind uf(n + 1);
    std::vector<std::size_t> redundant;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (!uf.unite(static_cast<std::size_t>(pairs[k].first), static_cast<std::size_t>(pairs[k].second)))
            redundant.push_back(k);
    }
    std::vector<std::vector<Var>> components;
    {
        std::vector<std::size_t> slot(n + 1, SIZE_MAX);
        for (Var v = 1; v <= spec.n; ++v) {
            const std::size_t r = uf.find(static_cast<std::size_t>(v));
            if (slot[r] == SIZE_MAX) {
                slot[r] = components.size();
                components.emplace_back();
            }
            components[slot[r]].push_back(v);
        }
    }
    if (components.size() > 1) {
        const auto links = components.size() - 1;
        for (auto idx : rng.sample(redundant.size(), links)) pairs[redundant[idx]] = {0, 0};
        std::erase(pairs, Pair{0, 0});
        for (std::size_t t = 1; t < components.size(); ++t) {
            const auto& from = components[t - 1];
            const auto& to = components[t];
            pairs.emplace_back(from[rng.below(from.size())], to[rng.below(to.size())]);
        }
    }
    for (auto& [a, b] : pairs)
        if (a > b) std::swap(a, b);
    std::sort(pairs.begin(), pairs.end());

    std::vector<Interaction> quad;
    quad.reserve(pairs.size());
    for (const auto& [a, b] : pairs) quad.push_back({a, b, rng.nonzero(spec.upper_bound)});
    const auto scaled_edges = static_cast<std::uint64_t>(
        selected_count(spec.pct_quadratic_multiplied, static_cast<std::int64_t>(quad.size())));
    for (auto t : rng.sample(quad.size(), scaled_edges)) quad[t].value *= spec.quadratic_multiplier;

    std::vector<Coeff> linear(n, 0);
    const auto nonzero_count =
        static_cast<std::uint64_t>(selected_count(spec.pct_nonzero_linear, spec.n));
    const auto chosen = rng.sample(n, nonzero_count);
    for (auto v : chosen) linear[v] = rng.nonzero(spec.upper_bound);
    const auto scaled_linear = static_cast<std::uint64_t>(
        selected_count(spec.pct_linear_multiplied, static_cast<std::int64_t>(chosen.size())));
    for (auto t : rng.sample(chosen.size(), scaled_linear)) linear[chosen[t]] *= spec.linear_multiplier;

    return {QuboInstance::from_parts(spec.n, std::move(linear), std::move(quad)), std::move(hubs)};
}

std::vector<std::string> describe(const GeneratorSpec& s) {
    std::vector<std::string> out;
    auto add = [&](const std::string& key, const std::string& value) { out.push_back(key + " " + value); };
    add("generator n", std::to_string(s.n));
    add("generator target_edges", std::to_string(s.target_edges));
    add("generator upper_bound", std::to_string(s.upper_bound));
    add("generator linear_multiplier", std::to_string(s.linear_multiplier));
    add("generator quadratic_multiplier", std::to_string(s.quadratic_multiplier));
    add("generator pct_quadratic_multiplied", pct_text(s.pct_quadratic_multiplied));
    add("generator pct_linear_multiplied", pct_text(s.pct_linear_multiplied));
    add("generator pct_nonzero_linear", pct_text(s.pct_nonzero_linear));
    add("generator hub_fraction", pct_text(s.hub_fraction));
    add("generator hub_edge_share", pct_text(s.hub_edge_share));
    add("generator seed", std::to_string(s.seed));
    add("generator rng", "mt19937_64");
    return out;
}

std::uint64_t suite_seed(std::uint64_t seed, std::size_t size_index, int row_id) {
    std::uint64_t x = splitmix64(seed);
    x = splitmix64(x ^ static_cast<std::uint64_t>(size_index));
    return splitmix64(x ^ static_cast<std::uint64_t>(row_id));
}

std::vector<SuiteEntry> generate_benchmark_suite(std::span<const SizeConfig> sizes,
                                                 std::span<const DesignRow> rows,
                                                 std::uint64_t seed) {
    std::vector<SuiteEntry> out;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        for (const auto& row : rows) {
            auto spec = GeneratorSpec::from_row(row, sizes[k].n, sizes[k].edges,
                                                suite_seed(seed, k, row.id));
            out.push_back({sizes[k].id, row.id, spec, generate_instance(spec)});
        }
    }
    return out;
}

}  // namespace qreduce
