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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qreduce {

/// Variables are numbered 1..n throughout the library and in every file format.
using Var = std::int32_t;

/// Exact integer coefficient type. Wide enough for sums of |coefficients| of
/// every generated instance (and any sane hand-written one).
using Coeff = std::int64_t;

/// A total 0/1 assignment; element k holds the value of variable k + 1.
using Assignment = std::vector<std::uint8_t>;

class ModelError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ModelError {
 public:
    ParseError(std::size_t line, const std::string& what)
            : ModelError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

 private:
    std::size_t line_;
};

/// One raw Q-matrix entry. Diagonal entries are linear terms.
struct Triplet {
    Var i;
    Var j;
    Coeff value;
};

/// A combined quadratic coefficient d_ij = c_ij + c_ji stored once with i < j.
struct Interaction {
    Var i;
    Var j;
    Coeff value;

    friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Sparse maximization QUBO: offset + sum c_i x_i + sum_{i<j} d_ij x_i x_j.
///
/// Instances are immutable once built. Interactions are kept sorted by (i, j)
/// with i < j, and zero coefficients are never stored.
class QuboInstance {
 public:
    QuboInstance() = default;

    /// All-zero instance over n variables.
    explicit QuboInstance(Var n);

    /// Accumulates raw entries: (i, i) into c_i, (i, j) and (j, i) into d_ij.
    /// Throws ModelError naming the first entry with an index outside 1..n.
    static QuboInstance from_triplets(Var n, std::span<const Triplet> entries,
                                      Coeff offset = 0);

    /// Builds directly from canonical pieces. `linear` has n entries; the
    /// interactions may be unsorted and repeated and are canonicalized.
    static QuboInstance from_parts(Var n, std::vector<Coeff> linear,
                                   std::vector<Interaction> interactions, Coeff offset = 0);

    Var num_variables() const noexcept { return n_; }
    Coeff offset() const noexcept { return offset_; }

    Coeff linear(Var i) const { return linear_.at(static_cast<std::size_t>(i - 1)); }
    std::span<const Coeff> linear_terms() const noexcept { return linear_; }

    /// d_ij for the unordered pair {i, j}; 0 when absent.
    Coeff quadratic(Var i, Var j) const;
    std::span<const Interaction> interactions() const noexcept { return quadratic_; }
    std::size_t num_interactions() const noexcept { return quadratic_.size(); }

    /// Number of variables with a nonzero linear coefficient.
    std::size_t num_nonzero_linear() const;

    friend bool operator==(const QuboInstance&, const QuboInstance&) = default;

 private:
    Var n_ = 0;
    Coeff offset_ = 0;
    std::vector<Coeff> linear_;
    std::vector<Interaction> quadratic_;
};

inline QuboInstance build_from_triplets(Var n, std::span<const Triplet> entries) {
    return QuboInstance::from_triplets(n, entries);
}

/// Objective value of a total assignment, offset included.
/// Throws ModelError if `x` is not a 0/1 vector of length n.
Coeff evaluate(const QuboInstance& instance, std::span<const std::uint8_t> x);

/// Maximization Ising model sum h_i s_i + sum_{i<j} J_ij s_i s_j over s in {-1, 1}^n,
/// rewritten with s_i = 2 x_i - 1. `couplings` lists each unordered pair once
/// (repeats accumulate); a diagonal coupling is an error.
QuboInstance ising_to_qubo(Var n, std::span<const Coeff> fields,
                           std::span<const Triplet> couplings);

/// How the reader treats a `q` line whose canonical pair was already seen.
enum class DuplicatePolicy { Accumulate, Reject };

// Text format:
//   p qubo <n>        (first non-comment line)
//   o <offset>
//   l <i> <value>
//   q <i> <j> <value>
// '#' starts a comment; values are signed decimal integers.

QuboInstance read_instance(std::istream& in,
                           DuplicatePolicy duplicates = DuplicatePolicy::Accumulate);
QuboInstance read_instance(const std::filesystem::path& path,
                           DuplicatePolicy duplicates = DuplicatePolicy::Accumulate);

/// Writes `p`, then `o`, then `l` lines ascending, then `q` lines ascending.
/// Each string in `comments` is emitted as a leading "# " line.
void write_instance(const QuboInstance& instance, std::ostream& out,
                    std::span<const std::string> comments = {});
void write_instance(const QuboInstance& instance, const std::filesystem::path& path,
                    std::span<const std::string> comments = {});

/// Restriction of `instance` to `keep` (ascending ids), renumbered 1..keep.size().
/// Terms touching any other variable must be absent; otherwise ModelError.
QuboInstance compact(const QuboInstance& instance, std::span<const Var> keep);

}  // namespace qreduce
