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

#include "qreduce/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qreduce/engine.hpp"
#include "qreduce/generator.hpp"
#include "qreduce/oracle.hpp"
#include "qreduce/report.hpp"

namespace qreduce {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDocumentFormat = "qreduce-reduction/1";

struct GenerateArgs {
    std::optional<Var> size;
    std::optional<std::int64_t> edges;
    std::optional<int> row;
    std::uint64_t seed = 0;
    std::string suite;
    std::string output;
    double hub_fraction = 0.01;
    double hub_edge_share = 0.3;
};

struct ReduceArgs {
    std::string input;
    std::string suite;
    std::string output;
    std::string log;
    std::string report;
    std::optional<int> max_passes;
    bool no_residual = false;
    bool emit_inequalities = false;
    bool renumber = false;
    bool enforce = false;
    unsigned threads = 0;
};

struct VerifyArgs {
    std::string original;
    std::string reduced;
    std::string map;
    int limit = kDefaultOracleLimit;
};

struct SolveArgs {
    std::string input;
    bool preprocess = false;
    bool all_optima = false;
    int limit = kDefaultOracleLimit;
};

struct ReportArgs {
    std::vector<std::string> documents;
};

// Input problems (bad files, bad values) surface as this and map to exit 2.
class InputError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::string bits(std::span<const std::uint8_t> x) {
    std::string s;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k) s += ' ';
        s += x[k] ? '1' : '0';
    }
    return s;
}

// generate

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    auto base = [&](const DesignRow& row, Var n, std::int64_t edges, std::uint64_t seed) {
        auto spec = GeneratorSpec::from_row(row, n, edges, seed);
        spec.hub_fraction = a.hub_fraction;
        spec.hub_edge_share = a.hub_edge_share;
        return spec;
    };
    auto emit = [&](const GeneratorSpec& spec, int row_id, const fs::path& path) {
        auto g = generate(spec);
        std::vector<std::string> comments = describe(spec);
        comments.push_back("generator design_row " + std::to_string(row_id));
        std::string hubs = "generator hubs";
        for (Var h : g.hubs) hubs += " " + std::to_string(h);
        comments.push_back(hubs);
        write_instance(g.instance, path, comments);
    };

    if (!a.suite.empty()) {
        const auto& sizes = a.suite == "full" ? full_sizes() : desk_sizes();
        fs::create_directories(a.output);
        std::size_t count = 0;
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            for (const auto& row : design_table()) {
                const auto spec = base(row, sizes[k].n, sizes[k].edges, suite_seed(a.seed, k, row.id));
                std::ostringstream name;
                name << sizes[k].id << "_row" << std::setw(2) << std::setfill('0') << row.id << ".qubo";
                emit(spec, row.id, fs::path(a.output) / name.str());
                ++count;
            }
        }
        out << "wrote " << count << " instances to " << a.output << '\n';
        return kExitOk;
    }
    if (!a.size || !a.edges || !a.row)
        throw CLI::ValidationError("generate", "--size, --edges and --design-row are required without --suite");
    const auto spec = base(design_row(*a.row), *a.size, *a.edges, a.seed);
    emit(spec, *a.row, a.output);
    out << "wrote " << a.output << '\n';
    return kExitOk;
}

// reduce

EngineOptions engine_options(const ReduceArgs& a) {
    EngineOptions o;
    o.max_passes = a.max_passes;
    o.enable_residual = !a.no_residual;
    o.emit_inequalities = a.emit_inequalities;
    return o;
}

struct ReduceOutcome {
    RunReport report;
    json document;
    QuboInstance written;
    std::vector<std::string> comments;
};

ReduceOutcome reduce_one(const std::string& input, const ReduceArgs& a) {
    const QuboInstance original = read_instance(input);
    const auto start = std::chrono::steady_clock::now();
    ReductionResult result = run_to_fixed_point(original, engine_options(a));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ReduceOutcome o{make_report(original, result, seconds), json::object(), result.reduced, {}};
    json enforced = json::array();
    if (a.enforce) {
        std::vector<EnforcedInequality> applied;
        o.written = enforce_unique_inequalities(o.written, &applied);
        for (const auto& e : applied) {
            enforced.push_back({{"kind", std::string(to_string(e.inequality.kind))},
                                {"i", e.inequality.i},
                                {"h", e.inequality.h},
                                {"rule", std::string(to_string(e.rule))},
                                {"m", e.m}});
        }
    }
    o.document = {{"format", kDocumentFormat},
                  {"input", input},
                  {"num_variables", original.num_variables()},
                  {"options",
                   {{"max_passes", a.max_passes ? json(*a.max_passes) : json(nullptr)},
                    {"residual", !a.no_residual},
                    {"emit_inequalities", a.emit_inequalities},
                    {"enforce_inequalities", a.enforce}}},
                  {"renumbered", a.renumber},
                  {"solution_map", to_json(result.map)},
                  {"log", to_json(result.log)},
                  {"report", to_json(o.report)},
                  {"enforced_inequalities", std::move(enforced)}};
    o.comments.push_back("reduced from " + fs::path(input).filename().string());
    if (a.renumber) {
        o.written = compact(o.written, result.map.survivors);
        o.document["id_translation"] = result.map.survivors;
        for (std::size_t k = 0; k < result.map.survivors.size(); ++k)
            o.comments.push_back("id " + std::to_string(k + 1) + " " +
                                 std::to_string(result.map.survivors[k]));
    }
    return o;
}

int cmd_reduce_suite(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    if (!fs::is_directory(a.suite)) throw InputError(a.suite + " is not a directory");
    for (const auto& entry : fs::directory_iterator(a.suite))
        if (entry.is_regular_file() && entry.path().extension() == ".qubo") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    const fs::path outdir = a.output.empty() ? fs::path(a.suite) / "reduced" : fs::path(a.output);
    fs::create_directories(outdir);

    std::vector<std::optional<RunReport>> reports(files.size());
    std::vector<std::string> errors(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < files.size(); k = next++) {
            try {
                auto o = reduce_one(files[k].string(), a);
                const auto stem = files[k].stem().string();
                write_instance(o.written, outdir / (stem + ".reduced.qubo"), o.comments);
                write_json(o.document, (outdir / (stem + ".json")).string());
                reports[k] = o.report;
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = kExitOk;
    double total_pct = 0.0;
    std::size_t done = 0;
    for (std::size_t k = 0; k < files.size(); ++k) {
        if (!reports[k]) {
            err << files[k].filename().string() << ": " << errors[k] << '\n';
            code = kExitUsage;
            continue;
        }
        const auto& r = *reports[k];
        out << std::left << std::setw(24) << files[k].filename().string() << std::right
            << " n=" << std::setw(6) << r.num_variables << "  survivors=" << std::setw(6)
            << r.survivors << "  reduction=" << std::fixed << std::setprecision(2)
            << r.percent_reduction << "%  passes=" << r.passes.size() << '\n';
        total_pct += r.percent_reduction;
        ++done;
    }
    if (done)
        out << "instances " << done << "  mean reduction " << std::fixed << std::setprecision(2)
            << total_pct / static_cast<double>(done) << "%\n";
    return code;
}

int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.suite.empty()) return cmd_reduce_suite(a, out, err);
    if (a.input.empty()) throw CLI::ValidationError("reduce", "an input file or --suite is required");
    auto o = reduce_one(a.input, a);
    if (!a.output.empty()) {
        write_instance(o.written, a.output, o.comments);
        write_json(o.document, a.log.empty() ? a.output + ".json" : a.log);
    } else if (!a.log.empty()) {
        write_json(o.document, a.log);
    }
    if (!a.report.empty()) write_json(o.document["report"], a.report);
    out << format_report(o.report);
    return kExitOk;
}

// verify

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const QuboInstance original = read_instance(a.original);
    QuboInstance reduced = read_instance(a.reduced);
    const json doc = read_json(a.map);
    SolutionMap map;
    try {
        map = solution_map_from_json(doc.at("solution_map"));
        if (doc.value("renumbered", false))
            reduced = expand(reduced, doc.at("id_translation").get<std::vector<Var>>(),
                             original.num_variables());
    } catch (const json::exception& e) {
        throw InputError(a.map + ": " + e.what());
    }
    const EquivalenceReport rep = check_equivalence(original, reduced, map, a.limit);
    if (!rep.ok) {
        out << "FAIL: " << rep.message << '\n';
        if (rep.counterexample) out << "counterexample " << bits(*rep.counterexample) << '\n';
        return kExitVerificationFailed;
    }
    out << "PASS: optimum " << rep.original_optimum << " on both instances; "
        << map.survivors.size() << " survivors\n";
    return kExitOk;
}

// solve

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const QuboInstance instance = read_instance(a.input);
    if (!a.preprocess) {
        const OracleResult r = brute_force_solve(instance, a.limit);
        out << "optimum " << r.optimum << '\n';
        out << "assignment " << bits(r.optima.front()) << '\n';
        if (a.all_optima) {
            out << "optima " << r.optima.size() << (r.truncated ? " (truncated)" : "") << '\n';
            for (const auto& x : r.optima) out << bits(x) << '\n';
        }
        return kExitOk;
    }
    const ReductionResult red = run_to_fixed_point(instance);
    const QuboInstance remnant = compact(red.reduced, red.map.survivors);
    const OracleResult r = brute_force_solve(remnant, a.limit);
    const Assignment x = reconstruct_solution(red.map, r.optima.front());
    out << "optimum " << r.optimum << '\n';
    out << "assignment " << bits(x) << '\n';
    out << "remnant " << remnant.num_variables() << '\n';
    if (a.all_optima) {
        out << "optima " << r.optima.size() << (r.truncated ? " (truncated)" : "") << '\n';
        for (const auto& y : r.optima) out << bits(reconstruct_solution(red.map, y)) << '\n';
    }
    return kExitOk;
}

// report

int cmd_report(const ReportArgs& a, std::ostream& out) {
    std::size_t vars = 0;
    std::size_t eliminated = 0;
    double pct = 0.0;
    for (const auto& path : a.documents) {
        const json doc = read_json(path);
        RunReport r;
        try {
            r = report_from_json(doc.contains("report") ? doc.at("report") : doc);
        } catch (const json::exception& e) {
            throw InputError(path + ": " + e.what());
        }
        if (a.documents.size() > 1) out << "== " << path << '\n';
        out << format_report(r);
        if (a.documents.size() > 1) out << '\n';
        vars += static_cast<std::size_t>(r.num_variables);
        eliminated += r.eliminated();
        pct += r.percent_reduction;
    }
    if (a.documents.size() > 1) {
        out << "documents " << a.documents.size() << "  variables " << vars << "  eliminated "
            << eliminated << "  mean reduction " << std::fixed << std::setprecision(2)
            << pct / static_cast<double>(a.documents.size()) << "%\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"QUBO preprocessing: variable fixing, substitution and pair assignment"};
    app.name("qreduce");
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate benchmark instances");
    g->add_option("--size", gen.size, "Number of variables");
    g->add_option("--edges", gen.edges, "Number of edges");
    g->add_option("--design-row", gen.row, "Row of the 16-row factor design")->check(CLI::Range(1, 16));
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--suite", gen.suite, "Generate a whole suite")->check(CLI::IsMember({"desk", "full"}));
    g->add_option("--hub-fraction", gen.hub_fraction, "Fraction of hub nodes")->check(CLI::Range(0.0, 1.0));
    g->add_option("--hub-edge-share", gen.hub_edge_share, "Share of edges touching hubs")
        ->check(CLI::Range(0.0, 1.0));
    g->add_option("-o,--output", gen.output, "Output file (directory with --suite)")->required();

    ReduceArgs red;
    auto* r = app.add_subcommand("reduce", "Reduce an instance to a fixed point");
    r->add_option("input", red.input, "Instance file");
    r->add_option("--suite", red.suite, "Reduce every .qubo file in a directory");
    r->add_option("-o,--output", red.output, "Reduced instance (directory with --suite)");
    r->add_option("--log", red.log, "Reduction document (default: <output>.json)");
    r->add_option("--report", red.report, "Write the run report as JSON");
    r->add_option("--max-passes", red.max_passes, "Cap on scan passes")->check(CLI::PositiveNumber);
    r->add_flag("--no-residual", red.no_residual, "Skip the residual substitution checks");
    r->add_flag("--emit-inequalities", red.emit_inequalities, "Record mined pair inequalities");
    r->add_flag("--renumber", red.renumber, "Renumber survivors densely");
    r->add_flag("--enforce-inequalities", red.enforce,
                "Add penalties for inequalities that hold in every optimum");
    r->add_option("--threads", red.threads, "Worker threads for --suite");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Check a reduction against the exact oracle");
    v->add_option("--original", ver.original, "Original instance")->required();
    v->add_option("--reduced", ver.reduced, "Reduced instance")->required();
    v->add_option("--map", ver.map, "Reduction document")->required();
    v->add_option("--limit", ver.limit, "Largest n the oracle enumerates");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Solve a small instance exactly");
    s->add_option("input", sol.input, "Instance file")->required();
    s->add_flag("--preprocess", sol.preprocess, "Reduce before solving");
    s->add_flag("--all-optima", sol.all_optima, "List every optimal assignment");
    s->add_option("--limit", sol.limit, "Largest n the oracle enumerates");

    ReportArgs rep;
    auto* p = app.add_subcommand("report", "Print run reports from reduction documents");
    p->add_option("documents", rep.documents, "Reduction documents")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("qreduce");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (g->parsed()) return cmd_generate(gen, out);
        if (r->parsed()) return cmd_reduce(red, out, err);
        if (v->parsed()) return cmd_verify(ver, out);
        if (s->parsed()) return cmd_solve(sol, out);
        if (p->parsed()) return cmd_report(rep, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const OracleLimitError& e) {
        err << "refusing: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qreduce
