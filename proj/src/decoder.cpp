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

#include "tcd/decoder.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace tcd {

const char *mode_name(DecodeMode m) {
    switch (m) {
        case DecodeMode::Parallel: return "parallel";
        case DecodeMode::Commit: return "commit";
        case DecodeMode::IterativeCopy: return "iterative";
    }
    return "?";
}

DecodeMode parse_mode(const std::string &s) {
    if (s == "parallel") return DecodeMode::Parallel;
    if (s == "commit") return DecodeMode::Commit;
    if (s == "iterative" || s == "iterative-copy") return DecodeMode::IterativeCopy;
    throw std::invalid_argument("unknown decode mode: " + s);
}

namespace {

DecodeStep make_step(DecodingSubgraph sg, std::vector<bool> fixed) {
    MatchingGraph g = MatchingGraph::from_subgraph(sg);
    return DecodeStep{std::move(sg), Matcher(g), std::move(fixed)};
}

}  // namespace

Decoder::Decoder(const CheckSet &checks, const ErrorModel &em, const std::vector<std::vector<uint32_t>> &product_checks,
                 size_t num_blocks, const DecoderOptions &opt)
    : opt_(opt), num_checks_(em.num_checks), num_obs_(em.num_observables), model_(em) {
    if (product_checks.size() != num_obs_) throw std::invalid_argument("Decoder: one check list per observable");
    switch (opt_.mode) {
        case DecodeMode::Parallel: build_parallel(product_checks); break;
        case DecodeMode::Commit: build_commit(product_checks); break;
        case DecodeMode::IterativeCopy: build_iterative(checks, num_blocks); break;
    }
    member_.assign(num_checks_, {});
    for (uint32_t s = 0; s < steps_.size(); s++) {
        const auto &c = steps_[s].subgraph.checks;
        for (uint32_t l = 0; l < c.size(); l++) member_[c[l]].push_back({s, l});
    }
}

void Decoder::build_parallel(const std::vector<std::vector<uint32_t>> &product_checks) {
    SubgraphOptions so;
    so.strict = false;
    so.decompose = opt_.decompose;
    for (uint32_t o = 0; o < num_obs_; o++) {
        steps_.push_back(make_step(extract_subgraph(product_checks[o], model_, o, so), {}));
        steps_.back().observable = o;
    }
}

void Decoder::build_commit(const std::vector<std::vector<uint32_t>> &product_checks) {
    std::vector<uint32_t> order = opt_.order;
    if (order.empty()) {
        for (uint32_t o = 0; o < num_obs_; o++) order.push_back(o);
    }
    std::vector<uint32_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (uint32_t i = 0; i < sorted.size(); i++) {
        if (sorted[i] != i || sorted.size() != num_obs_) throw std::invalid_argument("Decoder: order must be a permutation");
    }
    CommitState st(model_);
    std::vector<bool> decoded(num_checks_, false);
    for (uint32_t o : order) {
        std::vector<uint32_t> checks;
        size_t overlap = 0;
        for (uint32_t c : product_checks[o]) {
            if (decoded[c]) {
                overlap++;
            } else {
                checks.push_back(c);
            }
        }
        std::vector<bool> in(num_checks_, false);
        for (uint32_t c : checks) in[c] = true;
        std::vector<bool> excluded = st.fixed;
        std::vector<uint32_t> vbad;
        for (size_t v = st.num_base; v < st.model.mechanisms.size(); v++) {
            if (st.fixed[v]) continue;
            size_t cnt = 0;
            for (uint32_t c : st.model.mechanisms[v].checks) cnt += in[c];
            if (cnt > 2) {
                excluded[v] = true;
                vbad.push_back((uint32_t)v);
            }
        }
        SubgraphOptions so;
        so.strict = false;
        so.decompose = opt_.decompose;
        so.excluded = &excluded;
        DecodingSubgraph sg = extract_subgraph(checks, st.model, o, so);
        steps_.push_back(make_step(sg, st.fixed));
        DecodeStep &step = steps_.back();
        step.observable = o;
        step.overlap = overlap;
        step.virtual_unmatchable = vbad;
        fix_subgraph(st, sg);
        for (uint32_t c : checks) decoded[c] = true;
        if (opt_.virtual_edges) {
            auto loops = find_timelike_loops(sg);
            step.loops = loops.size();
            step.virtual_added = add_virtual_edges(st, sg, loops).size();
        }
    }
    model_ = st.model;
}

void Decoder::build_iterative(const CheckSet &checks, size_t num_blocks) {
    std::vector<uint32_t> order = opt_.block_order;
    if (order.empty()) {
        for (uint32_t b = 0; b < num_blocks; b++) order.push_back(b);
    }
    std::vector<int32_t> pos(num_blocks, -1);
    for (uint32_t i = 0; i < order.size(); i++) pos.at(order[i]) = (int32_t)i;
    // A check belongs to the latest block in decode order among its most recent events.
    std::vector<std::vector<uint32_t>> owned(2 * num_blocks);
    for (const auto &ch : checks.checks) {
        const CheckEvent *best = nullptr;
        for (const auto &e : ch.latest) {
            if (pos.at(e.block) < 0) throw std::invalid_argument("Decoder: block missing from block order");
            if (best == nullptr || pos[e.block] > pos[best->block]) best = &e;
        }
        if (best == nullptr) continue;
        owned[2 * best->block + (best->basis == 'X')].push_back(ch.id);
    }
    CommitState st(model_);
    SubgraphOptions so;
    so.strict = false;
    so.decompose = opt_.decompose;
    so.excluded = &st.fixed;
    for (uint32_t b : order) {
        for (int x = 0; x < 2; x++) {
            auto &cs = owned[2 * b + x];
            if (cs.empty()) continue;
            std::sort(cs.begin(), cs.end());
            DecodingSubgraph sg = extract_subgraph(cs, st.model, UINT32_MAX, so);
            steps_.push_back(make_step(sg, st.fixed));
            steps_.back().block = b;
            steps_.back().basis = x ? 'X' : 'Z';
            fix_subgraph(st, sg, false);
        }
    }
}

std::vector<uint8_t> Decoder::decode(const std::vector<uint32_t> &flipped, std::vector<int64_t> *step_ns) const {
    using clock = std::chrono::steady_clock;
    if (step_ns) step_ns->assign(steps_.size(), 0);
    std::vector<uint8_t> pred(num_obs_, 0);
    if (opt_.mode == DecodeMode::Parallel) {
        std::vector<std::vector<uint32_t>> defects(steps_.size());
        for (uint32_t c : flipped) {
            for (auto [s, l] : member_.at(c)) defects[s].push_back(l);
        }
        for (size_t s = 0; s < steps_.size(); s++) {
            auto t0 = clock::now();
            if (!defects[s].empty()) pred[steps_[s].observable] = steps_[s].matcher.decode(defects[s]).observable;
            if (step_ns) (*step_ns)[s] = (clock::now() - t0).count();
        }
        return pred;
    }
    CommitValues v;
    v.checks.assign(num_checks_, 0);
    v.observables.assign(num_obs_, 0);
    for (uint32_t c : flipped) v.checks.at(c) ^= 1;
    const bool local = opt_.mode == DecodeMode::IterativeCopy && !opt_.copy_timelike;
    std::vector<uint32_t> defects;
    for (size_t s = 0; s < steps_.size(); s++) {
        const auto &step = steps_[s];
        auto t0 = clock::now();
        defects.clear();
        const auto &cs = step.subgraph.checks;
        for (uint32_t l = 0; l < cs.size(); l++) {
            if (v.checks[cs[l]]) defects.push_back(l);
        }
        if (!defects.empty()) {
            Correction corr = step.matcher.decode(defects);
            commit(model_, step.fixed, step.subgraph, corr.edges, v, local);
        }
        if (step_ns) (*step_ns)[s] = (clock::now() - t0).count();
    }
    return v.observables;
}

DecoderDiagnostics Decoder::diagnostics() const {
    DecoderDiagnostics d;
    for (const auto &s : steps_) {
        d.unmatchable += s.subgraph.unmatchable.size();
        d.decomposed += s.subgraph.decomposed.size();
        d.undetectable += s.subgraph.undetectable.size();
        d.loops += s.loops;
        d.virtual_added += s.virtual_added;
        d.virtual_unmatchable += s.virtual_unmatchable.size();
    }
    return d;
}

}  // namespace tcd
