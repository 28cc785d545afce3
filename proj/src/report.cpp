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

#include "qreduce/report.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

namespace qreduce {

using nlohmann::json;

namespace {

std::size_t eliminated_by(const RuleVerdict& v) {
    if (std::holds_alternative<PairFix>(v.conclusion)) return 2;
    if (std::holds_alternative<Inequality>(v.conclusion)) return 0;
    return 1;
}

json conclusion_json(const Conclusion& c) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Fix>) {
                return {{"type", "Fix"}, {"var", x.var}, {"value", x.value ? 1 : 0}};
            } else if constexpr (std::is_same_v<T, PairFix>) {
                return {{"type", "PairFix"}, {"i", x.i}, {"value_i", x.value_i ? 1 : 0},
                        {"h", x.h}, {"value_h", x.value_h ? 1 : 0}};
            } else if constexpr (std::is_same_v<T, SubstituteEqual>) {
                return {{"type", "SubstituteEqual"}, {"keep", x.keep}, {"drop", x.drop}};
            } else if constexpr (std::is_same_v<T, SubstituteComplement>) {
                return {{"type", "SubstituteComplement"}, {"keep", x.keep}, {"drop", x.drop}};
            } else {
                return {{"type", "Inequality"}, {"kind", std::string(to_string(x.kind))},
                        {"i", x.i}, {"h", x.h}};
            }
        },
        c);
}

json pass_json(const PassSummary& p) {
    return {{"pass", p.pass},
            {"live_before", p.live_before},
            {"live_after", p.live_after},
            {"nodes_visited", p.nodes_visited},
            {"pairs_examined", p.pairs_examined},
            {"duplicate_pair_visits", p.duplicate_pair_visits},
            {"probes_after_pair_fix", p.probes_after_pair_fix},
            {"stopped_at_end_loc", p.stopped_at_end_loc},
            {"residual_substitutions", p.residual_substitutions}};
}

PassSummary pass_from_json(const json& j) {
    PassSummary p;
    p.pass = j.at("pass").get<int>();
    p.live_before = j.at("live_before").get<std::size_t>();
    p.live_after = j.at("live_after").get<std::size_t>();
    p.nodes_visited = j.value("nodes_visited", std::size_t{0});
    p.pairs_examined = j.value("pairs_examined", std::size_t{0});
    p.duplicate_pair_visits = j.value("duplicate_pair_visits", std::size_t{0});
    p.probes_after_pair_fix = j.value("probes_after_pair_fix", std::size_t{0});
    p.stopped_at_end_loc = j.value("stopped_at_end_loc", false);
    p.residual_substitutions = j.value("residual_substitutions", std::size_t{0});
    return p;
}

json rule_table(const std::array<std::size_t, kNumRules>& counts) {
    json out = json::object();
    for (std::size_t k = 0; k < kNumRules; ++k)
        if (counts[k] != 0) out[std::string(to_string(static_cast<RuleId>(k)))] = counts[k];
    return out;
}

std::array<std::size_t, kNumRules> rule_table_from_json(const json& j) {
    std::array<std::size_t, kNumRules> out{};
    for (const auto& [name, value] : j.items()) {
        auto id = parse_rule_id(name);
        if (!id) throw ModelError("unknown rule name '" + name + "' in report");
        out[static_cast<std::size_t>(*id)] = value.get<std::size_t>();
    }
    return out;
}

}  // namespace

RunReport make_report(const QuboInstance& original, const ReductionResult& result,
                      double wall_seconds) {
    RunReport r;
    r.num_variables = original.num_variables();
    r.survivors = result.map.survivors.size();
    r.percent_reduction =
        r.num_variables == 0 ? 0.0 : 100.0 * static_cast<double>(r.eliminated()) / r.num_variables;
    r.rule_counts = result.log.per_rule_counts;
    for (const auto& e : result.log.events)
        r.rule_eliminations[static_cast<std::size_t>(e.verdict.rule)] += eliminated_by(e.verdict);
    r.passes = result.log.passes;
    r.inequality_count = result.log.inequalities.size();
    r.wall_seconds = wall_seconds;
    r.original_offset = original.offset();
    r.reduced_offset = result.reduced.offset();
    return r;
}

std::string format_report(const RunReport& r) {
    std::ostringstream os;
    char buf[128];
    auto line = [&](const char* key, const std::string& value) {
        std::snprintf(buf, sizeof buf, "%-14s %s\n", key, value.c_str());
        os << buf;
    };
    line("variables", std::to_string(r.num_variables));
    line("survivors", std::to_string(r.survivors));
    std::snprintf(buf, sizeof buf, "%.2f%%", r.percent_reduction);
    line("reduction", buf);
    line("offset", std::to_string(r.original_offset) + " -> " + std::to_string(r.reduced_offset));
    line("passes", std::to_string(r.passes.size()));
    line("inequalities", std::to_string(r.inequality_count));
    std::snprintf(buf, sizeof buf, "%.3f s", r.wall_seconds);
    line("time", buf);

    os << "\nrule    fired  eliminated  percent\n";
    for (std::size_t k = 0; k < kNumRules; ++k) {
        if (r.rule_counts[k] == 0) continue;
        const double pct = r.num_variables == 0
                               ? 0.0
                               : 100.0 * static_cast<double>(r.rule_eliminations[k]) / r.num_variables;
        std::snprintf(buf, sizeof buf, "%-6s %6zu %11zu  %6.2f%%\n",
                      std::string(to_string(static_cast<RuleId>(k))).c_str(), r.rule_counts[k],
                      r.rule_eliminations[k], pct);
        os << buf;
    }

    os << "\npass  visited    pairs  dropped  live\n";
    for (const auto& p : r.passes) {
        std::snprintf(buf, sizeof buf, "%4d %8zu %8zu %8zu %5zu%s\n", p.pass, p.nodes_visited,
                      p.pairs_examined, p.drops() + p.residual_substitutions,
                      p.live_after - p.residual_substitutions,
                      p.stopped_at_end_loc ? "  (stopped at EndLoc)" : "");
        os << buf;
    }
    return os.str();
}

json to_json(const RuleVerdict& v) {
    json j = {{"rule", std::string(to_string(v.rule))}, {"i", v.i}, {"unique", v.unique},
              {"conclusion", conclusion_json(v.conclusion)}};
    if (v.h != 0) j["h"] = v.h;
    return j;
}

json to_json(const ReductionLog& log) {
    json events = json::array();
    for (const auto& e : log.events) {
        json je = {{"pass", e.pass}, {"live_after", e.live_after}, {"verdict", to_json(e.verdict)}};
        if (e.residual) je["residual"] = true;
        events.push_back(std::move(je));
    }
    json inequalities = json::array();
    for (const auto& q : log.inequalities) {
        inequalities.push_back({{"pass", q.pass},
                                {"m_bound", q.m_bound},
                                {"snapshot", q.snapshot},
                                {"verdict", to_json(q.verdict)}});
    }
    json passes = json::array();
    for (const auto& p : log.passes) passes.push_back(pass_json(p));
    return {{"events", std::move(events)},
            {"inequalities", std::move(inequalities)},
            {"per_rule_counts", rule_table(log.per_rule_counts)},
            {"passes", std::move(passes)}};
}

json to_json(const SolutionMap& map) {
    json assignments = json::array();
    for (const auto& [v, b] : map.assignments) assignments.push_back({v, b ? 1 : 0});
    json identities = json::array();
    for (const auto& id : map.identities) {
        identities.push_back({{"var", id.var},
                              {"relation", id.complement ? "ComplementOf" : "SameAs"},
                              {"ref", id.ref}});
    }
    return {{"num_variables", map.num_variables},
            {"assignments", std::move(assignments)},
            {"identities", std::move(identities)},
            {"survivors", map.survivors}};
}

SolutionMap solution_map_from_json(const json& j) {
    SolutionMap map;
    map.num_variables = j.at("num_variables").get<Var>();
    for (const auto& a : j.at("assignments")) {
        const int value = a.at(1).get<int>();
        if (value != 0 && value != 1) throw ModelError("solution map: assignment value must be 0 or 1");
        map.assignments.emplace_back(a.at(0).get<Var>(), value == 1);
    }
    for (const auto& id : j.at("identities")) {
        const auto relation = id.at("relation").get<std::string>();
        if (relation != "SameAs" && relation != "ComplementOf")
            throw ModelError("solution map: unknown relation '" + relation + "'");
        map.identities.push_back(
            {id.at("var").get<Var>(), relation == "ComplementOf", id.at("ref").get<Var>()});
    }
    map.survivors = j.at("survivors").get<std::vector<Var>>();
    return map;
}

json to_json(const RunReport& r) {
    json passes = json::array();
    for (const auto& p : r.passes) passes.push_back(pass_json(p));
    return {{"num_variables", r.num_variables},
            {"survivors", r.survivors},
            {"eliminated", r.eliminated()},
            {"percent_reduction", r.percent_reduction},
            {"rule_counts", rule_table(r.rule_counts)},
            {"rule_eliminations", rule_table(r.rule_eliminations)},
            {"passes", std::move(passes)},
            {"pass_count", r.passes.size()},
            {"inequality_count", r.inequality_count},
            {"wall_seconds", r.wall_seconds},
            {"original_offset", r.original_offset},
            {"reduced_offset", r.reduced_offset}};
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.num_variables = j.at("num_variables").get<Var>();
    r.survivors = j.at("survivors").get<std::size_t>();
    r.percent_reduction = j.at("percent_reduction").get<double>();
    r.rule_counts = rule_table_from_json(j.at("rule_counts"));
    r.rule_eliminations = rule_table_from_json(j.at("rule_eliminations"));
    for (const auto& p : j.at("passes")) r.passes.push_back(pass_from_json(p));
    r.inequality_count = j.at("inequality_count").get<std::size_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.original_offset = j.at("original_offset").get<Coeff>();
    r.reduced_offset = j.at("reduced_offset").get<Coeff>();
    return r;
}

QuboInstance expand(const QuboInstance& compacted, std::span<const Var> ids, Var n) {
    if (static_cast<std::size_t>(compacted.num_variables()) != ids.size())
        throw ModelError("id translation has " + std::to_string(ids.size()) + " entries for " +
                         std::to_string(compacted.num_variables()) + " variables");
    auto id = [&](Var k) {
        const Var v = ids[static_cast<std::size_t>(k - 1)];
        if (v < 1 || v > n) throw ModelError("id translation entry " + std::to_string(v) + " out of range");
        return v;
    };
    std::vector<Coeff> linear(static_cast<std::size_t>(n), 0);
    for (Var k = 1; k <= compacted.num_variables(); ++k)
        linear[static_cast<std::size_t>(id(k) - 1)] = compacted.linear(k);
    std::vector<Interaction> quad;
    for (const auto& e : compacted.interactions()) quad.push_back({id(e.i), id(e.j), e.value});
    return QuboInstance::from_parts(n, std::move(linear), std::move(quad), compacted.offset());
}

}  // namespace qreduce
