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
#include <vector>

#include "tcd/decoding_graph.hpp"

namespace tcd {

struct WeightedEdge {
    size_t u = 0;
    size_t v = 0;
    int64_t w = 0;
};

// Maximum-weight matching on a general graph with integer weights. Returns the mate of each
// vertex or -1. With max_cardinality, the result is a maximum-weight matching among those of
// maximum cardinality.
std::vector<int64_t> max_weight_matching(size_t num_vertices, const std::vector<WeightedEdge> &edges,
                                         bool max_cardinality);

constexpr double kWeightScale = 1024.0;
constexpr uint32_t kBoundary = UINT32_MAX;

// Integer-weighted matching graph; an edge with v == kBoundary connects to the boundary.
struct MatchingGraph {
    struct Edge {
        uint32_t u = 0;
        uint32_t v = kBoundary;
        int64_t w = 1;
        bool observable = false;
    };
    size_t num_nodes = 0;
    std::vector<Edge> edges;
    // incident edge ids per node, ascending
    std::vector<std::vector<uint32_t>> adj;

    void add_edge(uint32_t u, uint32_t v, int64_t w, bool observable);
    static MatchingGraph from_subgraph(const DecodingSubgraph &sg);
};

int64_t integer_weight(double w);

struct Correction {
    std::vector<uint32_t> edges;
    bool observable = false;
    int64_t weight = 0;
    // optimum also reachable with the other observable parity (oracles only)
    bool tie = false;
};

struct MatcherOptions {
    // precompute all-pairs distances when the graph has at most table_max_nodes nodes
    bool distance_table = true;
    size_t table_max_nodes = 3072;
};

// Minimum-weight perfect matching decoder. Defects are local node ids. An optional mask
// disables edges (false = removed); masked decodes always search the graph directly.
class Matcher {
public:
    explicit Matcher(const MatchingGraph &g, const MatcherOptions &opt = {});
    bool has_table() const { return !table_.empty(); }
    Correction decode(const std::vector<uint32_t> &defects, const std::vector<bool> *mask = nullptr) const;
    const MatchingGraph &graph() const { return g_; }

private:
    struct Tree {
        std::vector<int64_t> dist;
        std::vector<int32_t> pred;
    };
    void boundary_tree(const std::vector<bool> *mask, Tree &t) const;
    void source_tree(uint32_t s, int64_t limit, const std::vector<bool> *mask, Tree &t,
                     std::vector<uint32_t> &touched) const;

    void table_path(uint32_t from, uint32_t to, std::vector<uint32_t> &edges) const;

    MatchingGraph g_;
    Tree boundary_;
    // row-major node-to-node distances, or empty
    std::vector<int32_t> table_;
};

// Exact optimum via all-pairs shortest paths and a subset dynamic program over defects.
Correction decode_pairing_oracle(const MatchingGraph &g, const std::vector<uint32_t> &defects,
                                 const std::vector<bool> *mask = nullptr);
constexpr size_t kPairingOracleMaxDefects = 16;

// Exact optimum by enumerating all edge subsets.
Correction decode_enumeration_oracle(const MatchingGraph &g, const std::vector<uint32_t> &defects,
                                     const std::vector<bool> *mask = nullptr);
constexpr size_t kEnumerationOracleMaxEdges = 24;

}  // namespace tcd
