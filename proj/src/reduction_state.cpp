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

#include "qreduce/reduction_state.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <utility>

namespace qreduce {

// NodeList

NodeList::NodeList(Var n)
        : list_(static_cast<std::size_t>(n)), pos_(static_cast<std::size_t>(n) + 1, npos) {
    for (Var v = 1; v <= n; ++v) {
        list_[static_cast<std::size_t>(v - 1)] = v;
        pos_[static_cast<std::size_t>(v)] = static_cast<std::size_t>(v - 1);
    }
    cursor_.i_loc_end = list_.size();
}

void NodeList::transfer_current() {
    if (!has_current()) throw InternalError("transfer_current: i-Group is exhausted");
    Var i = list_[cursor_.i_loc];
    list_[cursor_.h_loc_end] = i;
    pos_[static_cast<std::size_t>(i)] = cursor_.h_loc_end;
    ++cursor_.h_loc_end;
    ++cursor_.i_loc;
}

bool NodeList::in_h_group(Var v) const {
    std::size_t p = pos_.at(static_cast<std::size_t>(v));
    return p != npos && p >= cursor_.h_loc1 && p < cursor_.h_loc_end;
}

void NodeList::remove(Var v) {
    const std::size_t p = pos_.at(static_cast<std::size_t>(v));
    if (p == npos) throw InternalError("NodeList::remove: node " + std::to_string(v) + " not listed");

    if (p == cursor_.i_loc && has_current()) {
        ++cursor_.i_loc;
    } else if (p >= cursor_.h_loc1 && p < cursor_.h_loc_end) {
        Var first = list_[cursor_.h_loc1];
        list_[p] = first;
        pos_[static_cast<std::size_t>(first)] = p;
        ++cursor_.h_loc1;
    } else if (p > cursor_.i_loc && p < cursor_.i_loc_end) {
        for (std::size_t k = p; k + 1 < cursor_.i_loc_end; ++k) {
            list_[k] = list_[k + 1];
            pos_[static_cast<std::size_t>(list_[k])] = k;
        }
        --cursor_.i_loc_end;
        if (cursor_.end_loc != ScanCursor::kUnbounded && cursor_.end_loc > p) --cursor_.end_loc;
    } else {
        throw InternalError("NodeList::remove: node " + std::to_string(v) +
                            " sits outside both groups");
    }
    pos_[static_cast<std::size_t>(v)] = npos;
    cursor_.next_end_loc = cursor_.h_loc_end;
    cursor_.end_loc = ScanCursor::kUnbounded;
}

void NodeList::mark_drop_boundary() { cursor_.next_end_loc = cursor_.h_loc_end; }

void NodeList::begin_pass(bool full) {
    std::size_t stop = ScanCursor::kUnbounded;
    if (!full && cursor_.next_end_loc != ScanCursor::kUnbounded) {
        stop = cursor_.next_end_loc - cursor_.h_loc1;
    }
    std::vector<Var> survivors = members();
    std::copy(survivors.begin(), survivors.end(), list_.begin());
    for (std::size_t k = 0; k < survivors.size(); ++k) {
        pos_[static_cast<std::size_t>(survivors[k])] = k;
    }
    cursor_ = ScanCursor{};
    cursor_.i_loc_end = survivors.size();
    cursor_.end_loc = stop;
}

std::vector<Var> NodeList::members() const {
    std::vector<Var> out;
    out.reserve(size());
    auto h = h_group();
    auto i = i_group();
    out.insert(out.end(), h.begin(), h.end());
    out.insert(out.end(), i.begin(), i.end());
    return out;
}

// ReductionState

ReductionState::ReductionState(const QuboInstance& instance, StateOptions options)
        : n_(instance.num_variables()),
          options_(options),
          offset_(instance.offset()),
          linear_(static_cast<std::size_t>(n_) + 1, 0),
          rows_(static_cast<std::size_t>(n_) + 1),
          d_minus_(static_cast<std::size_t>(n_) + 1, 0),
          d_plus_(static_cast<std::size_t>(n_) + 1, 0),
          max_d_(static_cast<std::size_t>(n_) + 1),
          min_d_(static_cast<std::size_t>(n_) + 1),
          status_(static_cast<std::size_t>(n_) + 1),
          nodes_(n_),
          free_count_(static_cast<std::size_t>(n_)) {
    for (Var v = 1; v <= n_; ++v) linear_[static_cast<std::size_t>(v)] = instance.linear(v);
    for (const auto& t : instance.interactions()) {
        rows_[static_cast<std::size_t>(t.i)].emplace(t.j, t.value);
        rows_[static_cast<std::size_t>(t.j)].emplace(t.i, t.value);
        for (Var v : {t.i, t.j}) {
            if (t.value < 0) {
                d_minus_[static_cast<std::size_t>(v)] += t.value;
            } else {
                d_plus_[static_cast<std::size_t>(v)] += t.value;
            }
        }
    }
    for (Var v = 1; v <= n_; ++v) recompute_row_extremes(v);
}

Coeff ReductionState::coupling(Var i, Var h) const {
    const auto& row = rows_.at(index(i));
    auto it = row.find(h);
    return it == row.end() ? 0 : it->second;
}

void ReductionState::require_free(Var v, const char* op) const {
    if (!is_free(v)) {
        throw InternalError(std::string(op) + ": variable " + std::to_string(v) + " is not free");
    }
}

namespace {

std::pair<std::optional<EdgeExtreme>, std::optional<EdgeExtreme>> scan_extremes(
        const ReductionState::Row& row) {
    std::optional<EdgeExtreme> best_max;
    std::optional<EdgeExtreme> best_min;
    for (const auto& [k, d] : row) {
        if (d > 0 && (!best_max || d > best_max->value ||
                      (d == best_max->value && k < best_max->neighbor))) {
            best_max = EdgeExtreme{d, k};
        }
        if (d < 0 && (!best_min || d < best_min->value ||
                      (d == best_min->value && k < best_min->neighbor))) {
            best_min = EdgeExtreme{d, k};
        }
    }
    return {best_max, best_min};
}

}  // namespace

void ReductionState::recompute_row_extremes(Var j) {
    require_free(j, "recompute_row_extremes");
    const auto jj = index(j);
    std::tie(max_d_[jj], min_d_[jj]) = scan_extremes(rows_[jj]);
}

// Changes d_jk on row j only: the map entry, D_j^-/D_j^+, and the row extremes.
// A row is rescanned only when its stored extreme edge got worse or vanished.
void ReductionState::set_row_entry(Var j, Var k, Coeff old_value, Coeff new_value) {
    const auto jj = static_cast<std::size_t>(j);
    auto& row = rows_[jj];
    if (new_value == 0) {
        row.erase(k);
    } else {
        row[k] = new_value;
    }

    if (old_value < 0) {
        d_minus_[jj] -= old_value;
    } else if (old_value > 0) {
        d_plus_[jj] -= old_value;
    }
    if (new_value < 0) {
        d_minus_[jj] += new_value;
    } else if (new_value > 0) {
        d_plus_[jj] += new_value;
    }

    bool rescan = false;
    auto& mx = max_d_[jj];
    if (mx && mx->neighbor == k) {
        if (new_value > 0 && new_value >= mx->value) {
            mx->value = new_value;
        } else {
            rescan = true;
        }
    } else if (new_value > 0 &&
               (!mx || new_value > mx->value || (new_value == mx->value && k < mx->neighbor))) {
        mx = EdgeExtreme{new_value, k};
    }
    auto& mn = min_d_[jj];
    if (mn && mn->neighbor == k) {
        if (new_value < 0 && new_value <= mn->value) {
            mn->value = new_value;
        } else {
            rescan = true;
        }
    } else if (new_value < 0 &&
               (!mn || new_value < mn->value || (new_value == mn->value && k < mn->neighbor))) {
        mn = EdgeExtreme{new_value, k};
    }
    if (rescan) recompute_row_extremes(j);
}

void ReductionState::eliminate(Var v, StatusEntry status) {
    const auto vv = static_cast<std::size_t>(v);
    rows_[vv].clear();
    d_minus_[vv] = 0;
    d_plus_[vv] = 0;
    max_d_[vv].reset();
    min_d_[vv].reset();
    status_[vv] = status;
    nodes_.remove(v);
    --free_count_;
    ++events_;
    eliminations_.push_back({v, status});
}

void ReductionState::apply_fix(Var i, bool value) {
    require_free(i, "apply_fix");
    const auto ii = static_cast<std::size_t>(i);
    if (value) offset_ += linear_[ii];
    for (const auto& [j, d] : rows_[ii]) {
        if (value) linear_[static_cast<std::size_t>(j)] += d;
        set_row_entry(j, i, d, 0);
    }
    eliminate(i, {value ? VarStatus::FixedOne : VarStatus::FixedZero, 0});
}

void ReductionState::apply_substitution_complement(Var i, Var h) {
    require_free(i, "apply_substitution_complement");
    require_free(h, "apply_substitution_complement");
    if (i == h) throw InternalError("apply_substitution_complement: i == h");
    const auto ii = static_cast<std::size_t>(i);
    const auto hh = static_cast<std::size_t>(h);

    // c_h (1 - x_i)           -> c_o += c_h, c_i -= c_h
    // d_ih x_i (1 - x_i)      -> 0
    // d_hj (1 - x_i) x_j      -> c_j += d_hj, d_ij -= d_hj
    const Coeff c_h = linear_[hh];
    offset_ += c_h;
    linear_[ii] -= c_h;
    for (const auto& [j, d_hj] : rows_[hh]) {
        if (j == i) continue;
        if (options_.complement_updates_neighbor_linear) {
            linear_[static_cast<std::size_t>(j)] += d_hj;
        }
        const Coeff old_ij = coupling(i, j);
        const Coeff new_ij = old_ij - d_hj;
        set_row_entry(j, h, d_hj, 0);
        set_row_entry(j, i, old_ij, new_ij);
        set_row_entry(i, j, old_ij, new_ij);
    }
    if (auto it = rows_[ii].find(h); it != rows_[ii].end()) set_row_entry(i, h, it->second, 0);
    eliminate(h, {VarStatus::ComplementOf, i});
}

void ReductionState::apply_substitution_equal(Var i, Var h) {
    require_free(i, "apply_substitution_equal");
    require_free(h, "apply_substitution_equal");
    if (i == h) throw InternalError("apply_substitution_equal: i == h");
    const auto ii = static_cast<std::size_t>(i);
    const auto hh = static_cast<std::size_t>(h);

    const Coeff d_ih = coupling(i, h);
    linear_[ii] += linear_[hh] + d_ih;
    for (const auto& [j, d_hj] : rows_[hh]) {
        if (j == i) continue;
        const Coeff old_ij = coupling(i, j);
        const Coeff new_ij = old_ij + d_hj;
        set_row_entry(j, h, d_hj, 0);
        set_row_entry(j, i, old_ij, new_ij);
        set_row_entry(i, j, old_ij, new_ij);
    }
    if (d_ih != 0) set_row_entry(i, h, d_ih, 0);
    eliminate(h, {VarStatus::SameAs, i});
}

QuboInstance ReductionState::snapshot() const {
    std::vector<Coeff> linear(static_cast<std::size_t>(n_), 0);
    std::vector<Interaction> quadratic;
    for (Var v = 1; v <= n_; ++v) {
        if (!is_free(v)) continue;
        linear[static_cast<std::size_t>(v - 1)] = linear_[static_cast<std::size_t>(v)];
        for (const auto& [j, d] : rows_[static_cast<std::size_t>(v)]) {
            if (v < j) quadratic.push_back({v, j, d});
        }
    }
    return QuboInstance::from_parts(n_, std::move(linear), std::move(quadratic), offset_);
}

std::vector<Var> ReductionState::free_variables() const {
    std::vector<Var> out;
    out.reserve(free_count_);
    for (Var v = 1; v <= n_; ++v) {
        if (is_free(v)) out.push_back(v);
    }
    return out;
}

std::optional<std::string> ReductionState::check_consistency() const {
    std::ostringstream err;
    std::size_t live = 0;
    for (Var v = 1; v <= n_; ++v) {
        const auto vv = static_cast<std::size_t>(v);
        if (!is_free(v)) {
            if (!rows_[vv].empty()) {
                err << "eliminated variable " << v << " still has edges";
                return err.str();
            }
            continue;
        }
        ++live;
        Coeff minus = 0;
        Coeff plus = 0;
        for (const auto& [j, d] : rows_[vv]) {
            if (d == 0) {
                err << "zero coupling stored on row " << v;
                return err.str();
            }
            if (!is_free(j)) {
                err << "row " << v << " references eliminated variable " << j;
                return err.str();
            }
            if (coupling(j, v) != d) {
                err << "asymmetric coupling between " << v << " and " << j;
                return err.str();
            }
            (d < 0 ? minus : plus) += d;
        }
        if (minus != d_minus_[vv] || plus != d_plus_[vv]) {
            err << "D sums of row " << v << " are (" << d_minus_[vv] << ", " << d_plus_[vv]
                << "), expected (" << minus << ", " << plus << ")";
            return err.str();
        }
        if (scan_extremes(rows_[vv]) != std::pair{max_d_[vv], min_d_[vv]}) {
            err << "row extremes of " << v << " are stale";
            return err.str();
        }
    }
    if (live != free_count_) return std::string("free count mismatch");
    auto members = nodes_.members();
    if (members.size() != live) return std::string("node list size differs from the free count");
    for (Var v : members) {
        if (!is_free(v)) {
            err << "node list holds eliminated variable " << v;
            return err.str();
        }
    }
    return std::nullopt;
}

}  // namespace qreduce
