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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qreduce/qubo_model.hpp"

namespace qreduce {

class InternalError : public std::logic_error {
 public:
    using std::logic_error::logic_error;
};

enum class VarStatus : std::uint8_t { Free, FixedZero, FixedOne, SameAs, ComplementOf };

struct StatusEntry {
    VarStatus kind = VarStatus::Free;
    Var ref = 0;  // referent of SameAs / ComplementOf

    friend bool operator==(const StatusEntry&, const StatusEntry&) = default;
};

/// Largest positive (or smallest negative) coupling on a row and the neighbor
/// that carries it. Ties go to the smallest neighbor id.
struct EdgeExtreme {
    Coeff value;
    Var neighbor;

    friend bool operator==(const EdgeExtreme&, const EdgeExtreme&) = default;
};

/// Positions into the node list. Both groups are half-open ranges:
/// the h-Group is [h_loc1, h_loc_end) and the i-Group is [i_loc, i_loc_end).
struct ScanCursor {
    static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

    std::size_t i_loc = 0;
    std::size_t i_loc_end = 0;
    std::size_t h_loc1 = 0;
    std::size_t h_loc_end = 0;
    /// A pass stops once i_loc reaches end_loc.
    std::size_t end_loc = kUnbounded;
    /// h_loc_end at the latest drop of the running pass; kUnbounded if none yet.
    std::size_t next_end_loc = kUnbounded;
};

/// Ordered list of live nodes split into an h-Group followed (at higher
/// positions) by the i-Group still to be scanned in the current pass.
class NodeList {
 public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    NodeList() = default;
    explicit NodeList(Var n);

    const ScanCursor& cursor() const noexcept { return cursor_; }

    bool has_current() const noexcept { return cursor_.i_loc < cursor_.i_loc_end; }
    Var current() const { return list_.at(cursor_.i_loc); }

    /// Moves the current i-Group node to the end of the h-Group.
    void transfer_current();

    /// Drops a live node. The current i advances the i-Group cursor; an
    /// h-Group node is overwritten by the first h-Group node; any other
    /// i-Group node is erased in place. Records the drop for early termination.
    void remove(Var v);

    /// Makes the surviving nodes (h-Group, then the rest of the i-Group) the
    /// i-Group of a new pass. With `full` the whole pass is scanned; otherwise
    /// the pass may stop at the position recorded by the last drop.
    void begin_pass(bool full);

    /// Records the current end of the h-Group as the early-termination boundary.
    void mark_drop_boundary();

    bool reached_end() const noexcept { return cursor_.i_loc >= cursor_.end_loc; }

    bool in_h_group(Var v) const;
    std::size_t position(Var v) const { return pos_.at(static_cast<std::size_t>(v)); }

    std::span<const Var> h_group() const {
        return std::span<const Var>(list_).subspan(cursor_.h_loc1,
                                                   cursor_.h_loc_end - cursor_.h_loc1);
    }
    std::span<const Var> i_group() const {
        return std::span<const Var>(list_).subspan(cursor_.i_loc,
                                                   cursor_.i_loc_end - cursor_.i_loc);
    }

    /// Live nodes in list order.
    std::vector<Var> members() const;
    std::size_t size() const noexcept {
        return (cursor_.h_loc_end - cursor_.h_loc1) + (cursor_.i_loc_end - cursor_.i_loc);
    }

 private:
    std::vector<Var> list_;
    std::vector<std::size_t> pos_;  // indexed by variable id
    ScanCursor cursor_;
};

/// Test hooks. Production code never changes these.
struct StateOptions {
    /// When false, replacing x_h by 1 - x_i skips the c_j += d_hj update of
    /// h's other neighbors. Only useful to demonstrate that the update is needed.
    bool complement_updates_neighbor_linear = true;
};

/// One elimination in the order it was applied.
struct Elimination {
    Var var;
    StatusEntry status;
};

/// The working problem during reduction.
///
/// Holds c_i, d_ij and c_o for the live variables together with
/// D_i^- / D_i^+ (sums of negative / positive couplings on row i) and the
/// extreme couplings of every row. All apply_* operations keep these exact.
class ReductionState {
 public:
    using Row = std::unordered_map<Var, Coeff>;

    explicit ReductionState(const QuboInstance& instance, StateOptions options = {});

    Var num_variables() const noexcept { return n_; }
    std::size_t num_free() const noexcept { return free_count_; }
    bool is_free(Var v) const { return status(v).kind == VarStatus::Free; }
    const StatusEntry& status(Var v) const { return status_.at(index(v)); }

    Coeff offset() const noexcept { return offset_; }
    Coeff linear(Var v) const { return linear_.at(index(v)); }
    /// d_ih between two live variables; 0 when there is no edge.
    Coeff coupling(Var i, Var h) const;
    const Row& neighbors(Var v) const { return rows_.at(index(v)); }

    Coeff d_minus(Var v) const { return d_minus_.at(index(v)); }
    Coeff d_plus(Var v) const { return d_plus_.at(index(v)); }
    const std::optional<EdgeExtreme>& max_d(Var v) const { return max_d_.at(index(v)); }
    const std::optional<EdgeExtreme>& min_d(Var v) const { return min_d_.at(index(v)); }

    const NodeList& nodes() const noexcept { return nodes_; }
    NodeList& nodes() noexcept { return nodes_; }

    /// Number of eliminations applied so far; serves as a change stamp.
    std::uint64_t event_count() const noexcept { return events_; }
    std::span<const Elimination> eliminations() const noexcept { return eliminations_; }

    /// Sets x_i = value and folds it into the remaining problem.
    void apply_fix(Var i, bool value);

    /// Replaces x_h by 1 - x_i and drops h.
    void apply_substitution_complement(Var i, Var h);

    /// Replaces x_h by x_i and drops h.
    void apply_substitution_equal(Var i, Var h);

    void recompute_row_extremes(Var j);

    /// The current working problem over the original ids. Eliminated variables
    /// carry no terms.
    QuboInstance snapshot() const;

    /// Live variables in ascending id order.
    std::vector<Var> free_variables() const;

    /// Recomputes every derived quantity from the rows and compares. Returns a
    /// description of the first mismatch, or nothing when consistent.
    std::optional<std::string> check_consistency() const;

 private:
    std::size_t index(Var v) const {
        if (v < 1 || v > n_) throw InternalError("variable " + std::to_string(v) + " out of range");
        return static_cast<std::size_t>(v);
    }
    void require_free(Var v, const char* op) const;
    void set_row_entry(Var j, Var k, Coeff old_value, Coeff new_value);
    void eliminate(Var v, StatusEntry status);

    Var n_ = 0;
    StateOptions options_;
    Coeff offset_ = 0;
    std::vector<Coeff> linear_;
    std::vector<Row> rows_;
    std::vector<Coeff> d_minus_;
    std::vector<Coeff> d_plus_;
    std::vector<std::optional<EdgeExtreme>> max_d_;
    std::vector<std::optional<EdgeExtreme>> min_d_;
    std::vector<StatusEntry> status_;
    NodeList nodes_;
    std::size_t free_count_ = 0;
    std::uint64_t events_ = 0;
    std::vector<Elimination> eliminations_;
};

}  // namespace qreduce
