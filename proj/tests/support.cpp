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

#include "support.hpp"

#include <type_traits>
#include <variant>

#include "qreduce/oracle.hpp"

namespace qreduce::testing {

QuboInstance make_instance(Var n, std::vector<Coeff> linear, std::vector<Interaction> quadratic,
                           Coeff offset) {
    linear.resize(static_cast<std::size_t>(n), 0);
    return QuboInstance::from_parts(n, std::move(linear), std::move(quadratic), offset);
}

QuboInstance random_instance(std::mt19937_64& rng, Var n, double density, Coeff lo, Coeff hi) {
    std::uniform_int_distribution<Coeff> coef(lo, hi);
    std::bernoulli_distribution edge(density);
    std::vector<Coeff> linear(static_cast<std::size_t>(n));
    for (auto& c : linear) c = coef(rng);
    std::vector<Interaction> quad;
    for (Var i = 1; i <= n; ++i) {
        for (Var j = i + 1; j <= n; ++j) {
            if (!edge(rng)) continue;
            Coeff d = 0;
            while (d == 0) d = coef(rng);
            quad.push_back({i, j, d});
        }
    }
    return QuboInstance::from_parts(n, std::move(linear), std::move(quad));
}

QuboInstance sweep_instance(std::uint64_t seed, int index, Var max_n) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
    std::mt19937_64 rng(seq);
    const Var n = std::uniform_int_distribution<Var>(2, max_n)(rng);
    const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    return random_instance(rng, n, density, -10, 10);
}

bool agrees(const RuleVerdict& verdict, const Assignment& x) {
    auto at = [&](Var v) { return x[static_cast<std::size_t>(v - 1)] != 0; };
    return std::visit(
            [&](const auto& c) -> bool {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Fix>) {
                    return at(c.var) == c.value;
                } else if constexpr (std::is_same_v<T, PairFix>) {
                    return at(c.i) == c.value_i && at(c.h) == c.value_h;
                } else if constexpr (std::is_same_v<T, SubstituteEqual>) {
                    return at(c.keep) == at(c.drop);
                } else if constexpr (std::is_same_v<T, SubstituteComplement>) {
                    return at(c.keep) != at(c.drop);
                } else {
                    return satisfies(c.kind, at(c.i), at(c.h));
                }
            },
            verdict.conclusion);
}

bool verdict_sound(const QuboInstance& instance, const RuleVerdict& verdict) {
    auto result = brute_force_solve(instance);
    std::size_t hits = 0;
    for (const auto& x : result.optima) hits += agrees(verdict, x) ? 1 : 0;
    if (verdict.unique) return !result.truncated && hits == result.optima.size();
    return hits > 0;
}

}  // namespace qreduce::testing
