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
#include <vector>

#include "qreduce/qubo_model.hpp"
#include "qreduce/rules.hpp"

namespace qreduce::testing {

QuboInstance make_instance(Var n, std::vector<Coeff> linear, std::vector<Interaction> quadratic,
                           Coeff offset = 0);

/// Each pair becomes an edge with probability `density`; coefficients are
/// uniform integers in [lo, hi] (edges redraw zero).
QuboInstance random_instance(std::mt19937_64& rng, Var n, double density, Coeff lo, Coeff hi);

/// Instance number `index` of the seeded soundness sweep: n in [2, 18],
/// coefficients in [-10, 10], density in [0.1, 0.9].
QuboInstance sweep_instance(std::uint64_t seed, int index, Var max_n = 18);

/// Does the assignment agree with the verdict's conclusion?
bool agrees(const RuleVerdict& verdict, const Assignment& x);

/// Brute-force check of a verdict against the instance it was drawn from:
/// some optimum agrees, and every optimum agrees when the verdict is unique.
bool verdict_sound(const QuboInstance& instance, const RuleVerdict& verdict);

}  // namespace qreduce::testing
