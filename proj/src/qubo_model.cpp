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

#include "qreduce/qubo_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace qreduce {

namespace {

void canonicalize(std::vector<Interaction>& terms) {
    for (auto& t : terms) {
        if (t.i > t.j) std::swap(t.i, t.j);
    }
    std::sort(terms.begin(), terms.end(), [](const Interaction& a, const Interaction& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::size_t out = 0;
    for (std::size_t k = 0; k < terms.size();) {
        Interaction merged = terms[k];
        for (++k; k < terms.size() && terms[k].i == merged.i && terms[k].j == merged.j; ++k) {
            merged.value += terms[k].value;
        }
        if (merged.value != 0) terms[out++] = merged;
    }
    terms.resize(out);
}

std::string describe(const Triplet& t) {
    std::ostringstream s;
    s << "(" << t.i << ", " << t.j << ", " << t.value << ")";
    return s.str();
}

}  // namespace

QuboInstance::QuboInstance(Var n) : n_(n), linear_(static_cast<std::size_t>(n), 0) {
    if (n < 0) throw ModelError("variable count must be non-negative");
}

QuboInstance QuboInstance::from_triplets(Var n, std::span<const Triplet> entries, Coeff offset) {
    if (n < 0) throw ModelError("variable count must be non-negative");
    std::vector<Coeff> linear(static_cast<std::size_t>(n), 0);
    std::vector<Interaction> quadratic;
    for (const auto& t : entries) {
        if (t.i < 1 || t.i > n || t.j < 1 || t.j > n) {
            throw ModelError("entry " + describe(t) + " has an index outside 1.." +
                             std::to_string(n));
        }
        if (t.i == t.j) {
            linear[static_cast<std::size_t>(t.i - 1)] += t.value;
        } else {
            quadratic.push_back({t.i, t.j, t.value});
        }
    }
    return from_parts(n, std::move(linear), std::move(quadratic), offset);
}

QuboInstance QuboInstance::from_parts(Var n, std::vector<Coeff> linear,
                                      std::vector<Interaction> interactions, Coeff offset) {
    if (n < 0) throw ModelError("variable count must be non-negative");
    if (linear.size() != static_cast<std::size_t>(n)) {
        throw ModelError("linear coefficient vector must have one entry per variable");
    }
    for (const auto& t : interactions) {
        if (t.i < 1 || t.i > n || t.j < 1 || t.j > n || t.i == t.j) {
            throw ModelError("interaction (" + std::to_string(t.i) + ", " +
                             std::to_string(t.j) + ") is not a pair of distinct variables in 1.." +
                             std::to_string(n));
        }
    }
    canonicalize(interactions);

    QuboInstance q;
    q.n_ = n;
    q.offset_ = offset;
    q.linear_ = std::move(linear);
    q.quadratic_ = std::move(interactions);
    return q;
}

Coeff QuboInstance::quadratic(Var i, Var j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(quadratic_.begin(), quadratic_.end(), std::pair{i, j},
                               [](const Interaction& t, const std::pair<Var, Var>& key) {
                                   return t.i != key.first ? t.i < key.first : t.j < key.second;
                               });
    if (it != quadratic_.end() && it->i == i && it->j == j) return it->value;
    return 0;
}

std::size_t QuboInstance::num_nonzero_linear() const {
    return static_cast<std::size_t>(
            std::count_if(linear_.begin(), linear_.end(), [](Coeff c) { return c != 0; }));
}

Coeff evaluate(const QuboInstance& instance, std::span<const std::uint8_t> x) {
    const auto n = static_cast<std::size_t>(instance.num_variables());
    if (x.size() != n) {
        throw ModelError("assignment has " + std::to_string(x.size()) + " values, expected " +
                         std::to_string(n));
    }
    Coeff total = instance.offset();
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k] > 1) throw ModelError("assignment values must be 0 or 1");
        if (x[k]) total += instance.linear_terms()[k];
    }
    for (const auto& t : instance.interactions()) {
        if (x[static_cast<std::size_t>(t.i - 1)] && x[static_cast<std::size_t>(t.j - 1)]) {
            total += t.value;
        }
    }
    return total;
}

QuboInstance ising_to_qubo(Var n, std::span<const Coeff> fields,
                           std::span<const Triplet> couplings) {
    if (fields.size() != static_cast<std::size_t>(n)) {
        throw ModelError("expected one field per spin");
    }
    // h s = 2h x - h;  J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J
    std::vector<Coeff> linear(static_cast<std::size_t>(n), 0);
    std::vector<Interaction> quadratic;
    Coeff offset = 0;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        linear[k] += 2 * fields[k];
        offset -= fields[k];
    }
    for (const auto& t : couplings) {
        if (t.i < 1 || t.i > n || t.j < 1 || t.j > n) {
            throw ModelError("coupling " + describe(t) + " has an index outside 1.." +
                             std::to_string(n));
        }
        if (t.i == t.j) {
            throw ModelError("coupling " + describe(t) + " lies on the diagonal");
        }
        quadratic.push_back({t.i, t.j, 4 * t.value});
        linear[static_cast<std::size_t>(t.i - 1)] -= 2 * t.value;
        linear[static_cast<std::size_t>(t.j - 1)] -= 2 * t.value;
        offset += t.value;
    }
    return QuboInstance::from_parts(n, std::move(linear), std::move(quadratic), offset);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
        if (k >= line.size()) break;
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
        fields.push_back(line.substr(start, k - start));
    }
    return fields;
}

template <class Int>
Int parse_int(std::string_view text, std::size_t line, const char* what) {
    Int value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

QuboInstance read_instance(std::istream& in, DuplicatePolicy duplicates) {
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    Var n = 0;
    Coeff offset = 0;
    std::vector<Coeff> linear;
    std::vector<Interaction> quadratic;
    std::vector<std::size_t> quadratic_lines;

    auto check_index = [&](Var v, std::size_t line) {
        if (v < 1 || v > n) {
            throw ParseError(line, "variable " + std::to_string(v) + " outside 1.." +
                                           std::to_string(n));
        }
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (!have_header) {
            if (fields.size() != 3 || fields[0] != "p" || fields[1] != "qubo") {
                throw ParseError(line_no, "expected header 'p qubo <n>'");
            }
            n = parse_int<Var>(fields[2], line_no, "variable count");
            if (n < 0) throw ParseError(line_no, "variable count must be non-negative");
            linear.assign(static_cast<std::size_t>(n), 0);
            have_header = true;
            continue;
        }

        const auto tag = fields[0];
        if (tag == "o" && fields.size() == 2) {
            offset += parse_int<Coeff>(fields[1], line_no, "offset");
        } else if (tag == "l" && fields.size() == 3) {
            Var i = parse_int<Var>(fields[1], line_no, "index");
            check_index(i, line_no);
            linear[static_cast<std::size_t>(i - 1)] += parse_int<Coeff>(fields[2], line_no, "value");
        } else if (tag == "q" && fields.size() == 4) {
            Var i = parse_int<Var>(fields[1], line_no, "index");
            Var j = parse_int<Var>(fields[2], line_no, "index");
            check_index(i, line_no);
            check_index(j, line_no);
            if (i == j) throw ParseError(line_no, "quadratic term on the diagonal; use 'l'");
            Coeff value = parse_int<Coeff>(fields[3], line_no, "value");
            quadratic.push_back({std::min(i, j), std::max(i, j), value});
            quadratic_lines.push_back(line_no);
        } else if (tag == "p") {
            throw ParseError(line_no, "repeated header");
        } else {
            throw ParseError(line_no, "malformed line '" + std::string(line) + "'");
        }
    }
    if (!have_header) throw ParseError(line_no, "missing header 'p qubo <n>'");

    if (duplicates == DuplicatePolicy::Reject) {
        std::vector<std::size_t> order(quadratic.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = quadratic[a];
            const auto& y = quadratic[b];
            return x.i != y.i ? x.i < y.i : x.j < y.j;
        });
        for (std::size_t k = 1; k < order.size(); ++k) {
            const auto& prev = quadratic[order[k - 1]];
            const auto& cur = quadratic[order[k]];
            if (prev.i == cur.i && prev.j == cur.j) {
                throw ParseError(quadratic_lines[order[k]],
                                 "duplicate pair (" + std::to_string(cur.i) + ", " +
                                         std::to_string(cur.j) + ")");
            }
        }
    }
    return QuboInstance::from_parts(n, std::move(linear), std::move(quadratic), offset);
}

QuboInstance read_instance(const std::filesystem::path& path, DuplicatePolicy duplicates) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open '" + path.string() + "'");
    return read_instance(in, duplicates);
}

void write_instance(const QuboInstance& instance, std::ostream& out,
                    std::span<const std::string> comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "p qubo " << instance.num_variables() << '\n';
    out << "o " << instance.offset() << '\n';
    const auto linear = instance.linear_terms();
    for (std::size_t k = 0; k < linear.size(); ++k) {
        if (linear[k] != 0) out << "l " << (k + 1) << ' ' << linear[k] << '\n';
    }
    for (const auto& t : instance.interactions()) {
        out << "q " << t.i << ' ' << t.j << ' ' << t.value << '\n';
    }
}

void write_instance(const QuboInstance& instance, const std::filesystem::path& path,
                    std::span<const std::string> comments) {
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write '" + path.string() + "'");
    write_instance(instance, out, comments);
    if (!out) throw ModelError("write to '" + path.string() + "' failed");
}

QuboInstance compact(const QuboInstance& instance, std::span<const Var> keep) {
    const auto n = instance.num_variables();
    std::vector<Var> new_id(static_cast<std::size_t>(n) + 1, 0);
    Var next = 0;
    for (Var v : keep) {
        if (v < 1 || v > n) throw ModelError("compact: variable out of range");
        if (new_id[static_cast<std::size_t>(v)] != 0) throw ModelError("compact: repeated variable");
        new_id[static_cast<std::size_t>(v)] = ++next;
    }
    std::vector<Coeff> linear(keep.size(), 0);
    for (Var v = 1; v <= n; ++v) {
        Coeff c = instance.linear(v);
        if (c == 0) continue;
        if (new_id[static_cast<std::size_t>(v)] == 0) {
            throw ModelError("compact: variable " + std::to_string(v) +
                             " has a linear term but is not kept");
        }
        linear[static_cast<std::size_t>(new_id[static_cast<std::size_t>(v)] - 1)] = c;
    }
    std::vector<Interaction> quadratic;
    quadratic.reserve(instance.num_interactions());
    for (const auto& t : instance.interactions()) {
        Var a = new_id[static_cast<std::size_t>(t.i)];
        Var b = new_id[static_cast<std::size_t>(t.j)];
        if (a == 0 || b == 0) {
            throw ModelError("compact: interaction (" + std::to_string(t.i) + ", " +
                             std::to_string(t.j) + ") touches a variable that is not kept");
        }
        quadratic.push_back({a, b, t.value});
    }
    return QuboInstance::from_parts(next, std::move(linear), std::move(quadratic),
                                    instance.offset());
}

}  // namespace qreduce
