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

#include "tcd/pipeline.hpp"

#include <stdexcept>

namespace tcd {

void ShotCounts::merge(const ShotCounts &o) {
    shots += o.shots;
    failures += o.failures;
    if (observable_failures.size() < o.observable_failures.size()) observable_failures.resize(o.observable_failures.size());
    for (size_t i = 0; i < o.observable_failures.size(); i++) observable_failures[i] += o.observable_failures[i];
}

Pipeline::Pipeline(const LogicalCircuit &c, const PipelineConfig &cfg) : cfg_(cfg) {
    if (count_clifford_feed_forward(c) > 0) throw std::invalid_argument("Pipeline: resolve Clifford feed-forward first");
    pc_ = std::make_unique<PhysicalCircuit>(compile_circuit(c, make_layout(cfg.layout, cfg.distance), cfg.compile));
    ref_ = compute_reference(*pc_, 1);
    checks_ = build_checks(*pc_, ref_);
    ReliableTracker tracker(pc_->logical, cfg.rule);
    tracker.extend_all();
    basis_ = tracker.basis();
    bp_ = tracker.matrix();
    obs_ = product_observables(*pc_, basis_);
    for (uint32_t col : obs_.columns) {
        auto path = product_path(bp_, basis_.columns[col], pc_->logical.num_qubits());
        product_checks_.push_back(subgraph_checks(checks_, path));
    }
    sampler_ = std::make_unique<FrameSampler>(*pc_, cfg.noise);
    model_sampler_ = std::make_unique<FrameSampler>(
        *pc_, cfg.split_xz ? decompose_components(sampler_->components(), false) : sampler_->components());
    em_ = extract_error_model(*model_sampler_, checks_.measurement_sets(), obs_.meas);
    decoder_ = std::make_unique<Decoder>(checks_, em_, product_checks_, pc_->num_blocks, cfg.decoder);
}

Syndromes Pipeline::syndromes(const ShotBatch &b) const {
    Syndromes s;
    s.flipped.assign(b.lanes, {});
    s.actual.assign(b.lanes, std::vector<uint8_t>(obs_.meas.size(), 0));
    auto parity = [&](const std::vector<uint32_t> &meas, uint64_t *w) {
        for (size_t k = 0; k < kLaneWords; k++) w[k] = 0;
        for (uint32_t m : meas) {
            const uint64_t *r = b.err_row(m);
            for (size_t k = 0; k < kLaneWords; k++) w[k] ^= r[k];
        }
    };
    uint64_t w[kLaneWords];
    for (const auto &ch : checks_.checks) {
        parity(ch.meas, w);
        for (size_t k = 0; k < kLaneWords; k++) {
            for (uint64_t x = w[k]; x; x &= x - 1) {
                size_t lane = k * 64 + (size_t)__builtin_ctzll(x);
                if (lane < b.lanes) s.flipped[lane].push_back(ch.id);
            }
        }
    }
    for (size_t o = 0; o < obs_.meas.size(); o++) {
        parity(obs_.meas[o], w);
        for (size_t k = 0; k < kLaneWords; k++) {
            for (uint64_t x = w[k]; x; x &= x - 1) {
                size_t lane = k * 64 + (size_t)__builtin_ctzll(x);
                if (lane < b.lanes) s.actual[lane][o] = 1;
            }
        }
    }
    return s;
}

void Pipeline::evaluate(const ShotBatch &b, ShotCounts &counts, std::vector<int64_t> *step_ns) const {
    Syndromes s = syndromes(b);
    const size_t nobs = obs_.meas.size();
    counts.observable_failures.resize(nobs, 0);
    std::vector<int64_t> ns;
    if (step_ns) step_ns->resize(decoder_->steps().size(), 0);
    for (size_t lane = 0; lane < b.lanes; lane++) {
        std::vector<uint8_t> pred = decoder_->decode(s.flipped[lane], step_ns ? &ns : nullptr);
        bool fail = false;
        for (size_t o = 0; o < nobs; o++) {
            if (pred[o] != s.actual[lane][o]) {
                counts.observable_failures[o]++;
                fail = true;
            }
        }
        counts.failures += fail;
        counts.shots++;
        if (step_ns) {
            for (size_t i = 0; i < ns.size(); i++) (*step_ns)[i] += ns[i];
        }
    }
}

ShotCounts Pipeline::run(uint64_t seed, uint64_t shots, uint64_t first_batch) const {
    ShotCounts counts;
    counts.observable_failures.assign(obs_.meas.size(), 0);
    for (uint64_t b = 0; b * kLanes < shots; b++) {
        size_t lanes = (size_t)std::min<uint64_t>(kLanes, shots - b * kLanes);
        ShotBatch batch = sampler_->sample(seed, first_batch + b, lanes, false);
        evaluate(batch, counts);
    }
    return counts;
}

}  // namespace tcd
