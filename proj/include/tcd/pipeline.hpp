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
#include <memory>
#include <vector>

#include "tcd/decoder.hpp"
#include "tcd/decoding_graph.hpp"
#include "tcd/noise_sim.hpp"
#include "tcd/reliable_products.hpp"
#include "tcd/surface_code.hpp"

namespace tcd {

struct PipelineConfig {
    LayoutKind layout = LayoutKind::Rotated;
    size_t distance = 3;
    NoiseModel noise;
    DecoderOptions decoder;
    SelectionRule rule = SelectionRule::Sparsest;
    CompileOptions compile;
    // decoding model splits each Pauli component into independent X and Z parts
    bool split_xz = true;
};

struct ShotCounts {
    uint64_t shots = 0;
    // shots with at least one reliable product decoded wrongly
    uint64_t failures = 0;
    std::vector<uint64_t> observable_failures;
    void merge(const ShotCounts &o);
};

// Per-lane decoder inputs of a sampled batch.
struct Syndromes {
    std::vector<std::vector<uint32_t>> flipped;
    // actual flip of each observable, per lane
    std::vector<std::vector<uint8_t>> actual;
};

// Compiled circuit, checks, reliable products, decoding model and decoder for one branch-free
// logical circuit.
class Pipeline {
public:
    Pipeline(const LogicalCircuit &c, const PipelineConfig &cfg);
    Pipeline(const Pipeline &) = delete;
    Pipeline &operator=(const Pipeline &) = delete;

    // Shots are drawn in batches of 256; batch b uses the stream (seed, first_batch + b).
    ShotCounts run(uint64_t seed, uint64_t shots, uint64_t first_batch = 0) const;
    Syndromes syndromes(const ShotBatch &b) const;
    // Decodes every lane and accumulates failures. With step_ns, per-step matching times are
    // summed there.
    void evaluate(const ShotBatch &b, ShotCounts &counts, std::vector<int64_t> *step_ns = nullptr) const;

    const PipelineConfig &config() const { return cfg_; }
    const PhysicalCircuit &physical() const { return *pc_; }
    const Reference &reference() const { return ref_; }
    const CheckSet &checks() const { return checks_; }
    const ReliableBasis &basis() const { return basis_; }
    const BackPropMatrix &backprop() const { return bp_; }
    const ProductObservables &observables() const { return obs_; }
    const std::vector<std::vector<uint32_t>> &product_checks() const { return product_checks_; }
    const FrameSampler &sampler() const { return *sampler_; }
    const FrameSampler &model_sampler() const { return *model_sampler_; }
    const ErrorModel &error_model() const { return em_; }
    const Decoder &decoder() const { return *decoder_; }

private:
    PipelineConfig cfg_;
    std::unique_ptr<PhysicalCircuit> pc_;
    Reference ref_;
    CheckSet checks_;
    ReliableBasis basis_;
    BackPropMatrix bp_;
    ProductObservables obs_;
    std::vector<std::vector<uint32_t>> product_checks_;
    std::unique_ptr<FrameSampler> sampler_;
    std::unique_ptr<FrameSampler> model_sampler_;
    ErrorModel em_;
    std::unique_ptr<Decoder> decoder_;
};

}  // namespace tcd
