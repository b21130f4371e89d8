// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcd/noise_sim.hpp"
#include "tcd/reliable_products.hpp"
#include "tcd/surface_code.hpp"
#include "tcd/tableau.hpp"

namespace tcd {

struct CheckEvent {
    uint32_t block = 0;
    char basis = 'Z';
    uint32_t instr = 0;
    // true when the event is a transversal data measurement
    bool data = false;
    bool operator==(const CheckEvent &o) const {
        return block == o.block && basis == o.basis && instr == o.instr && data == o.data;
    }
};

struct Check {
    uint32_t id = 0;
    // measurement ordinals whose parity is the check
    std::vector<uint32_t> meas;
    // reference parity; a noiseless shot has parity == flip
    bool flip = false;
    // events of the most recent constituents
    std::vector<CheckEvent> latest;
    // formed by combining first-round stabilizers of random-basis initializations
    bool product = false;
};

struct CheckSet {
    std::vector<Check> checks;
    size_t size() const { return checks.size(); }
    std::vector<std::vector<uint32_t>> measurement_sets() const;
};

CheckSet build_checks(const PhysicalCircuit &pc, const Reference &ref);

// Raw measurement ordinals of each reliable column (one observable per reliable column).
struct ProductObservables {
    std::vector<uint32_t> columns;
    std::vector<std::vector<uint32_t>> meas;
};
ProductObservables product_observables(const PhysicalCircuit &pc, const ReliableBasis &v);

// Checks whose latest event matches the instantaneous product operator.
std::vector<uint32_t> subgraph_checks(const CheckSet &checks, const ProductPath &path);

struct SubgraphEdge {
    // local node ids, one or two; a single node connects to the boundary
    std::vector<uint32_t> nodes;
    bool observable = false;
    double probability = 0.0;
    double weight = 0.0;
    // merged mechanisms and the representative committed for this edge
    std::vector<uint32_t> mechanisms;
    uint32_t representative = 0;
    bool timelike = false;
};

struct DecodingSubgraph {
    std::vector<uint32_t> checks;
    std::vector<SubgraphEdge> edges;
    uint32_t observable = 0;
    size_t max_edge_degree = 0;
    // mechanisms whose restriction has more than two checks and could not be decomposed
    std::vector<uint32_t> unmatchable;
    // mechanisms whose restriction has more than two checks and was decomposed
    std::vector<uint32_t> decomposed;
    // mechanisms flipping the observable but no subgraph check
    std::vector<uint32_t> undetectable;
    size_t max_vertex_degree() const;
    std::string dump() const;
};

struct SubgraphOptions {
    // throw when an edge restricts to more than two checks and is not decomposed
    bool strict = true;
    // split such edges into graph-like edges already present in the subgraph, preserving the
    // observable parity
    bool decompose = false;
    // mechanisms to skip (indexed by mechanism id), empty for none
    const std::vector<bool> *excluded = nullptr;
};

DecodingSubgraph extract_subgraph(const std::vector<uint32_t> &checks, const ErrorModel &em, uint32_t observable,
                                  const SubgraphOptions &opt = {});

double edge_weight(double p);

// Merges checks that share an omitted stabilizer measurement into their product and re-merges
// the edges. Measurements are raw ordinals; each must lie in exactly two subgraph checks. A merged
// node keeps its smallest check id.
DecodingSubgraph merge_checks_for_reduced_se(const DecodingSubgraph &sg, const CheckSet &checks,
                                             const std::vector<uint32_t> &removed_meas);

// Mechanisms available to sequential decoding: the error model followed by virtual mechanisms.
struct CommitState {
    ErrorModel model;
    size_t num_base = 0;
    // mechanisms already assigned by an earlier decoding step
    std::vector<bool> fixed;
    explicit CommitState(const ErrorModel &em);
    bool is_virtual(uint32_t id) const { return id >= num_base; }
};

// Marks every unfixed mechanism that flips a check of the subgraph (or, with include_observable,
// its observable) as fixed.
void fix_subgraph(CommitState &st, const DecodingSubgraph &sg, bool include_observable = true);

// Per-shot check values and predicted observable flips under commitment.
struct CommitValues {
    std::vector<uint8_t> checks;
    std::vector<uint8_t> observables;
};

// Lifts each matched subgraph edge to its representative mechanism and applies its flips. With
// local_timelike, time-like mechanisms only flip checks of the subgraph.
void commit(const ErrorModel &model, const std::vector<bool> &fixed, const DecodingSubgraph &sg,
            const std::vector<uint32_t> &edges, CommitValues &v, bool local_timelike = false);

// Fundamental cycles (lists of subgraph edge ids) of the time-like edges, boundary included as a
// vertex. Cycles flipping the subgraph observable are combined pairwise so every loop is even.
std::vector<std::vector<uint32_t>> find_timelike_loops(const DecodingSubgraph &sg);

// Appends one virtual mechanism per loop with the loop's out-of-subgraph flips and probability
// prod(sqrt(p_e)). Loops with no outside flips add nothing. Returns the new mechanism ids.
std::vector<uint32_t> add_virtual_edges(CommitState &st, const DecodingSubgraph &sg,
                                        const std::vector<std::vector<uint32_t>> &loops);

}  // namespace tcd
