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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qreduce/qubo_model.hpp"

namespace qreduce {

/// One row of the 2^(6-2) fractional factorial design.
struct DesignRow {
    int id;
    Coeff upper_bound;
    Coeff linear_multiplier;
    Coeff quadratic_multiplier;
    double pct_quadratic_multiplied;
    double pct_linear_multiplied;
    double pct_nonzero_linear;
};

const std::vector<DesignRow>& design_table();
/// Throws ModelError for ids outside 1..16.
const DesignRow& design_row(int id);

struct SizeConfig {
    std::string id;
    Var n;
    std::int64_t edges;
};

const std::vector<SizeConfig>& full_sizes();
const std::vector<SizeConfig>& desk_sizes();

struct GeneratorSpec {
    Coeff upper_bound = 10;
    Coeff linear_multiplier = 1;
    Coeff quadratic_multiplier = 1;
    double pct_quadratic_multiplied = 0.0;
    double pct_linear_multiplied = 0.0;
    double pct_nonzero_linear = 1.0;
    Var n = 0;
    std::int64_t target_edges = 0;
    double hub_fraction = 0.01;
    /// Share of the edges placed on pairs touching a hub.
    double hub_edge_share = 0.3;
    std::uint64_t seed = 0;

    static GeneratorSpec from_row(const DesignRow& row, Var n, std::int64_t edges,
                                  std::uint64_t seed);
};

/// Exact-count selection: floor(pct * k) items.
std::int64_t selected_count(double pct, std::int64_t k);
std::int64_t hub_count(const GeneratorSpec& spec);

struct GeneratedInstance {
    QuboInstance instance;
    std::vector<Var> hubs;  // ascending
};

GeneratedInstance generate(const GeneratorSpec& spec);
inline QuboInstance generate_instance(const GeneratorSpec& spec) { return generate(spec).instance; }

/// Comment lines recording the spec, for instance file headers.
std::vector<std::string> describe(const GeneratorSpec& spec);

struct SuiteEntry {
    std::string size_id;
    int row_id;
    GeneratorSpec spec;
    QuboInstance instance;
};

/// Seed of the instance for (size index, row id) within a suite.
std::uint64_t suite_seed(std::uint64_t seed, std::size_t size_index, int row_id);

std::vector<SuiteEntry> generate_benchmark_suite(std::span<const SizeConfig> sizes,
                                                 std::span<const DesignRow> rows,
                                                 std::uint64_t seed);

/// 64-bit Mersenne Twister with platform-independent bounded draws.
class Random {
 public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform over the nonzero integers in [-u, u]; u >= 1.
    Coeff nonzero(Coeff u);
    /// k distinct values of [0, m) in ascending order.
    std::vector<std::uint64_t> sample(std::uint64_t m, std::uint64_t k);

 private:
    std::mt19937_64 engine_;
};

}  // namespace qreduce
