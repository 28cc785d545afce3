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

#include "qreduce/oracle.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

namespace qreduce {

OracleResult brute_force_solve(const QuboInstance& instance, int n_limit, std::size_t optima_cap) {
    const Var n = instance.num_variables();
    if (n > n_limit || n > 62)
        throw OracleLimitError("instance has " + std::to_string(n) +
                               " variables; the oracle limit is " + std::to_string(n_limit));
    const auto nn = static_cast<std::size_t>(n);
    std::vector<std::vector<std::pair<std::size_t, Coeff>>> adj(nn);
    for (const auto& e : instance.interactions()) {
        adj[static_cast<std::size_t>(e.i - 1)].emplace_back(static_cast<std::size_t>(e.j - 1), e.value);
        adj[static_cast<std::size_t>(e.j - 1)].emplace_back(static_cast<std::size_t>(e.i - 1), e.value);
    }
    std::vector<Coeff> field(instance.linear_terms().begin(), instance.linear_terms().end());
    Assignment x(nn, 0);
    Coeff value = instance.offset();

    OracleResult r;
    r.optimum = value;
    r.optima.push_back(x);
    const std::uint64_t total = std::uint64_t{1} << nn;
    r.evaluated_count = total;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto k = static_cast<std::size_t>(std::countr_zero(step));
        if (x[k]) {
            x[k] = 0;
            value -= field[k];
            for (const auto& [j, d] : adj[k]) field[j] -= d;
        } else {
            x[k] = 1;
            value += field[k];
            for (const auto& [j, d] : adj[k]) field[j] += d;
        }
        if (value > r.optimum) {
            r.optimum = value;
            r.optima.clear();
            r.optima.push_back(x);
            r.truncated = false;
        } else if (value == r.optimum) {
            if (r.optima.size() < optima_cap) r.optima.push_back(x);
            else r.truncated = true;
        }
    }
    std::sort(r.optima.begin(), r.optima.end());
    return r;
}

EquivalenceReport check_equivalence(const QuboInstance& original, const QuboInstance& reduced,
                                    const SolutionMap& map, int n_limit) {
    EquivalenceReport rep;
    if (reduced.num_variables() != original.num_variables() ||
        map.num_variables != original.num_variables()) {
        rep.message = "variable counts of original, reduced instance and map differ";
        return rep;
    }
    const OracleResult full = brute_force_solve(original, n_limit);
    const QuboInstance remnant = compact(reduced, map.survivors);
    const OracleResult part = brute_force_solve(remnant, n_limit);
    rep.original_optimum = full.optimum;
    rep.reduced_optimum = part.optimum;
    if (full.optimum != part.optimum) {
        std::ostringstream os;
        os << "optimum mismatch: original " << full.optimum << ", reduced " << part.optimum;
        rep.message = os.str();
        return rep;
    }
    for (const auto& y : part.optima) {
        Assignment x;
        try {
            x = reconstruct_solution(map, y);
        } catch (const std::exception& e) {
            rep.message = std::string("reconstruction failed: ") + e.what();
            return rep;
        }
        const Coeff v = evaluate(original, x);
        if (v != full.optimum) {
            std::ostringstream os;
            os << "reconstructed solution evaluates to " << v << " instead of " << full.optimum;
            rep.message = os.str();
            rep.counterexample = std::move(x);
            return rep;
        }
    }
    rep.ok = true;
    rep.message = "equivalent";
    return rep;
}

}  // namespace qreduce
