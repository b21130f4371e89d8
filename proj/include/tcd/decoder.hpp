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

#include "tcd/decoding_graph.hpp"
#include "tcd/matcher.hpp"

namespace tcd {

enum class DecodeMode : uint8_t { Parallel, Commit, IterativeCopy };

const char *mode_name(DecodeMode m);
DecodeMode parse_mode(const std::string &s);

struct DecoderOptions {
    DecodeMode mode = DecodeMode::Parallel;
    // commit order over observables; empty means measurement order
    std::vector<uint32_t> order;
    // block order of iterative copy; empty means ascending
    std::vector<uint32_t> block_order;
    bool decompose = true;
    bool virtual_edges = true;
    // iterative copy: also copy measurement-error corrections to other blocks
    bool copy_timelike = false;
};

struct DecodeStep {
    DecodingSubgraph subgraph;
    Matcher matcher;
    // fixed mechanisms when the subgraph was extracted
    std::vector<bool> fixed;
    // decoded observable, or UINT32_MAX for a per-block step
    uint32_t observable = UINT32_MAX;
    uint32_t block = 0;
    char basis = 'Z';
    // checks of the product subgraph already decoded by earlier steps
    size_t overlap = 0;
    size_t loops = 0;
    size_t virtual_added = 0;
    // virtual mechanisms left out because they restrict to more than two checks
    std::vector<uint32_t> virtual_unmatchable;
};

struct DecoderDiagnostics {
    size_t unmatchable = 0;
    size_t decomposed = 0;
    size_t undetectable = 0;
    size_t loops = 0;
    size_t virtual_added = 0;
    size_t virtual_unmatchable = 0;
};

// Precomputed decoding plan for one circuit. product_checks[o] lists the subgraph checks of
// observable o (ascending).
class Decoder {
public:
    Decoder(const CheckSet &checks, const ErrorModel &em, const std::vector<std::vector<uint32_t>> &product_checks,
            size_t num_blocks, const DecoderOptions &opt = {});

    // Flipped checks of one shot in, predicted flip per observable out. With step_ns, the
    // wall time of each step's matching is stored there.
    std::vector<uint8_t> decode(const std::vector<uint32_t> &flipped, std::vector<int64_t> *step_ns = nullptr) const;

    const std::vector<DecodeStep> &steps() const { return steps_; }
    const ErrorModel &model() const { return model_; }
    DecoderDiagnostics diagnostics() const;
    DecodeMode mode() const { return opt_.mode; }
    size_t num_observables() const { return num_obs_; }

private:
    void build_parallel(const std::vector<std::vector<uint32_t>> &product_checks);
    void build_commit(const std::vector<std::vector<uint32_t>> &product_checks);
    void build_iterative(const CheckSet &checks, size_t num_blocks);

    DecoderOptions opt_;
    size_t num_checks_ = 0;
    size_t num_obs_ = 0;
    ErrorModel model_;
    std::vector<DecodeStep> steps_;
    // (step, local node) memberships of each check
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> member_;
};

}  // namespace tcd
