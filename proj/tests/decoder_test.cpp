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
#include "tcd/pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <cmath>
#include <map>
#include <set>

using namespace tcd;

namespace {

PipelineConfig config(size_t d, NoiseKind k, double p, DecodeMode mode, LayoutKind layout = LayoutKind::Rotated) {
    PipelineConfig cfg;
    cfg.distance = d;
    cfg.noise = {k, p};
    cfg.decoder.mode = mode;
    cfg.layout = layout;
    return cfg;
}

// Injects every true noise component alone and counts shots with a wrong prediction.
size_t single_fault_failures(const Pipeline &pl) {
    const size_t n = pl.sampler().components().size();
    size_t fails = 0;
    for (size_t c0 = 0; c0 < n; c0 += kLanes) {
        const size_t lanes = std::min<size_t>(kLanes, n - c0);
        std::vector<std::pair<uint32_t, uint32_t>> hits;
        for (uint32_t l = 0; l < lanes; l++) hits.push_back({(uint32_t)(c0 + l), l});
        auto s = pl.syndromes(pl.sampler().inject(hits, lanes));
        for (size_t l = 0; l < lanes; l++) fails += pl.decoder().decode(s.flipped[l]) != s.actual[l];
    }
    return fails;
}

size_t random_pair_failures(const Pipeline &pl, size_t batches, uint64_t seed) {
    const size_t n = pl.sampler().components().size();
    std::mt19937_64 rng(seed);
    size_t fails = 0;
    for (size_t b = 0; b < batches; b++) {
        std::vector<std::pair<uint32_t, uint32_t>> hits;
        for (uint32_t l = 0; l < kLanes; l++) {
            hits.push_back({(uint32_t)(rng() % n), l});
            hits.push_back({(uint32_t)(rng() % n), l});
        }
        auto s = pl.syndromes(pl.sampler().inject(hits, kLanes));
        for (size_t l = 0; l < kLanes; l++) fails += pl.decoder().decode(s.flipped[l]) != s.actual[l];
    }
    return fails;
}

std::vector<uint32_t> xor_sets(std::vector<uint32_t> a, const std::vector<uint32_t> &b) {
    for (uint32_t x : b) {
        auto it = std::lower_bound(a.begin(), a.end(), x);
        if (it != a.end() && *it == x) a.erase(it);
        else a.insert(it, x);
    }
    return a;
}

size_t count_in(const std::vector<uint32_t> &xs, const std::vector<uint32_t> &sorted) {
    size_t n = 0;
    for (uint32_t x : xs) n += std::binary_search(sorted.begin(), sorted.end(), x);
    return n;
}

ErrorMechanism mech(uint32_t id, std::vector<uint32_t> checks, std::vector<uint32_t> obs, bool timelike, double p) {
    ErrorMechanism m;
    m.id = id;
    m.checks = std::move(checks);
    m.observables = std::move(obs);
    m.timelike = timelike;
    m.probability = p;
    return m;
}

SubgraphEdge edge(std::vector<uint32_t> nodes, bool obs, uint32_t rep, double p = 0.01) {
    SubgraphEdge e;
    e.nodes = std::move(nodes);
    e.observable = obs;
    e.representative = rep;
    e.mechanisms = {rep};
    e.timelike = true;
    e.probability = p;
    e.weight = edge_weight(p);
    return e;
}

// Time-like cycle over the subgraph plus boundary: every vertex has even degree.
bool is_even_cycle(const DecodingSubgraph &sg, const std::vector<uint32_t> &loop) {
    std::vector<int> deg(sg.checks.size() + 1, 0);
    bool obs = false;
    for (uint32_t e : loop) {
        const auto &E = sg.edges.at(e);
        if (!E.timelike) return false;
        deg[E.nodes[0]]++;
        deg[E.nodes.size() == 2 ? E.nodes[1] : sg.checks.size()]++;
        obs ^= E.observable;
    }
    for (int x : deg) {
        if (x % 2) return false;
    }
    return !obs && !loop.empty();
}

// CNOT from 2 to 1, one SE round, CNOT from 2 to 1 again (0-indexed qubits 1 -> 0).
LogicalCircuit sandwiched_round() {
    LogicalCircuit c(2);
    c.init_z({0, 1});
    c.se();
    c.se();
    c.cnot({1, 0});
    c.se();
    c.cnot({1, 0});
    c.se();
    c.se();
    c.measure_z({0, 1});
    return c;
}

// Four blocks where decoding Z1 first leaves a time-like loop touching blocks 2, 3 and 4.
LogicalCircuit four_block_loop() {
    LogicalCircuit c(4);
    c.init_z({0, 1, 2, 3});
    c.se();
    c.se();
    c.cnot({2, 1});
    c.se();
    c.cnot({2, 0, 1, 3});
    c.se();
    c.cnot({1, 0});
    c.se();
    c.se();
    c.measure_z({0, 1, 2, 3});
    return c;
}

}  // namespace

TEST(decoder, mode_names) {
    EXPECT_EQ(parse_mode("parallel"), DecodeMode::Parallel);
    EXPECT_EQ(parse_mode("commit"), DecodeMode::Commit);
    EXPECT_EQ(parse_mode("iterative"), DecodeMode::IterativeCopy);
    EXPECT_EQ(parse_mode(mode_name(DecodeMode::IterativeCopy)), DecodeMode::IterativeCopy);
    EXPECT_THROW(parse_mode("bogus"), std::invalid_argument);
}

TEST(commit_engine, fix_and_commit_on_small_model) {
    ErrorModel em;
    em.num_checks = 4;
    em.num_observables = 1;
    em.mechanisms = {mech(0, {0, 1}, {}, false, 0.01), mech(1, {1, 2, 3}, {0}, true, 0.01),
                     mech(2, {3}, {}, false, 0.01)};
    DecodingSubgraph sg = extract_subgraph({0, 1, 2}, em, 0);
    ASSERT_EQ(sg.edges.size(), 2u);
    uint32_t hyper = sg.edges[0].representative == 1 ? 0 : 1;
    ASSERT_EQ(sg.edges[hyper].nodes, (std::vector<uint32_t>{1, 2}));

    CommitState st(em);
    CommitValues v{{0, 0, 0, 0}, {0}};
    commit(st.model, st.fixed, sg, {}, v);
    EXPECT_EQ(v.checks, (std::vector<uint8_t>{0, 0, 0, 0}));

    commit(st.model, st.fixed, sg, {hyper}, v);
    EXPECT_EQ(v.checks, (std::vector<uint8_t>{0, 1, 1, 1}));
    EXPECT_EQ(v.observables, (std::vector<uint8_t>{1}));

    CommitValues local{{0, 0, 0, 0}, {0}};
    commit(st.model, st.fixed, sg, {hyper}, local, true);
    EXPECT_EQ(local.checks, (std::vector<uint8_t>{0, 1, 1, 0}));

    fix_subgraph(st, sg);
    EXPECT_EQ(st.fixed, (std::vector<bool>{true, true, false}));
    EXPECT_THROW(commit(st.model, st.fixed, sg, {hyper}, v), std::logic_error);
}

TEST(commit_engine, timelike_loops_are_an_even_cycle_basis) {
    DecodingSubgraph sg;
    sg.checks = {10, 11, 12};
    sg.edges = {edge({0, 1}, false, 0), edge({1, 2}, false, 1), edge({0, 2}, false, 2), edge({0}, true, 3),
                edge({2}, false, 4)};
    // one even triangle; the single odd cycle through the boundary has no partner
    auto loops = find_timelike_loops(sg);
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0], (std::vector<uint32_t>{0, 1, 2}));

    sg.edges.push_back(edge({1}, true, 5));
    loops = find_timelike_loops(sg);
    ASSERT_EQ(loops.size(), 2u);
    for (const auto &l : loops) EXPECT_TRUE(is_even_cycle(sg, l));
    EXPECT_NE(loops[0], loops[1]);

    sg.edges[0].timelike = false;
    sg.edges[1].timelike = false;
    for (const auto &l : find_timelike_loops(sg)) EXPECT_TRUE(is_even_cycle(sg, l));
}

TEST(commit_engine, virtual_edges_from_loops) {
    ErrorModel em;
    em.num_checks = 6;
    em.num_observables = 1;
    em.mechanisms = {mech(0, {0, 1, 3}, {}, true, 0.04), mech(1, {1, 2}, {}, true, 0.01),
                     mech(2, {0, 2, 4}, {0}, true, 0.09), mech(3, {0, 2}, {}, true, 0.01),
                     mech(4, {0, 1}, {}, true, 0.01)};
    DecodingSubgraph sg;
    sg.checks = {0, 1, 2};
    sg.edges = {edge({0, 1}, false, 0, 0.04), edge({1, 2}, false, 1, 0.01), edge({0, 2}, false, 2, 0.09),
                edge({0, 2}, false, 3, 0.01), edge({0, 1}, false, 4, 0.01)};
    CommitState st(em);
    EXPECT_TRUE(add_virtual_edges(st, sg, {}).empty());
    // the second loop flips nothing outside the subgraph
    auto ids = add_virtual_edges(st, sg, {{0, 1, 2}, {1, 3, 4}});
    ASSERT_EQ(ids.size(), 1u);
    EXPECT_EQ(ids[0], 5u);
    EXPECT_TRUE(st.is_virtual(5));
    EXPECT_FALSE(st.is_virtual(4));
    const auto &v = st.model.mechanisms[5];
    EXPECT_EQ(v.checks, (std::vector<uint32_t>{3, 4}));
    EXPECT_EQ(v.observables, (std::vector<uint32_t>{0}));
    EXPECT_NEAR(v.probability, 0.2 * 0.1 * 0.3, 1e-12);
    EXPECT_EQ(st.fixed.size(), 6u);
}

TEST(commit_engine, memory_has_no_timelike_loops) {
    for (size_t d : {3, 5}) {
        Pipeline pl(build_memory(d), config(d, NoiseKind::Phenomenological, 0.01, DecodeMode::Commit));
        for (const auto &s : pl.decoder().steps()) {
            EXPECT_EQ(s.loops, 0u);
            EXPECT_EQ(s.virtual_added, 0u);
        }
    }
}

TEST(commit_engine, cnot_hyperedge_transfers_one_check) {
    LogicalCircuit c(2);
    c.init_z({0, 1});
    c.se();
    c.se();
    c.cnot({0, 1});
    c.se();
    c.measure_z({0, 1});
    Pipeline pl(c, config(3, NoiseKind::Phenomenological, 0.01, DecodeMode::Commit));
    const auto &steps = pl.decoder().steps();
    ASSERT_EQ(steps.size(), 2u);
    const auto &first = steps[0].subgraph;
    const auto &second = steps[1].subgraph.checks;
    size_t transferred = 0;
    for (uint32_t e = 0; e < first.edges.size(); e++) {
        const auto &m = pl.decoder().model().mechanisms[first.edges[e].representative];
        if (m.checks.size() != 3 || !m.timelike) continue;
        CommitValues v{std::vector<uint8_t>(pl.checks().size(), 0), std::vector<uint8_t>(2, 0)};
        commit(pl.decoder().model(), steps[0].fixed, first, {e}, v);
        std::vector<uint32_t> outside;
        for (uint32_t k = 0; k < v.checks.size(); k++) {
            if (v.checks[k] && !std::binary_search(first.checks.begin(), first.checks.end(), k)) outside.push_back(k);
        }
        ASSERT_EQ(outside.size(), 1u);
        EXPECT_TRUE(std::binary_search(second.begin(), second.end(), outside[0]));
        transferred++;
    }
    // one per Z stabilizer of the control block
    EXPECT_EQ(transferred, 4u);
    // Z2 back-propagates to Z1Z2 before the CNOT, so both pre-gate rounds of block 1 are shared
    EXPECT_EQ(steps[1].overlap, 8u);
}

TEST(commit_engine, sandwiched_round_gives_weight_two_virtual_edges) {
    const double p = 0.01;
    Pipeline pl(sandwiched_round(), config(3, NoiseKind::Phenomenological, p, DecodeMode::Commit));
    const auto &steps = pl.decoder().steps();
    ASSERT_EQ(steps.size(), 2u);
    EXPECT_EQ(steps[0].loops, 4u);
    EXPECT_EQ(steps[0].virtual_added, 4u);
    EXPECT_TRUE(steps[1].virtual_unmatchable.empty());
    const auto &model = pl.decoder().model();
    const size_t base = pl.error_model().mechanisms.size();
    ASSERT_EQ(model.mechanisms.size(), base + 4);
    for (size_t i = base; i < model.mechanisms.size(); i++) {
        const auto &v = model.mechanisms[i];
        EXPECT_EQ(v.checks.size(), 2u);
        EXPECT_EQ(count_in(v.checks, steps[1].subgraph.checks), 2u);
        // three measurement flips around the loop
        EXPECT_NEAR(v.probability, std::pow(p, 1.5), 1e-12);
    }
    bool used = false;
    for (const auto &e : steps[1].subgraph.edges) used = used || e.representative >= base;
    EXPECT_TRUE(used);

    // decoding the other observable first sees no loop
    auto cfg = config(3, NoiseKind::Phenomenological, p, DecodeMode::Commit);
    cfg.decoder.order = {1, 0};
    Pipeline rev(sandwiched_round(), cfg);
    EXPECT_EQ(rev.decoder().diagnostics().loops, 0u);
}

TEST(commit_engine, weight_four_virtual_edge_is_reported) {
    Pipeline pl(four_block_loop(), config(3, NoiseKind::Phenomenological, 0.01, DecodeMode::Commit));
    const auto &model = pl.decoder().model();
    const size_t base = pl.error_model().mechanisms.size();
    ASSERT_GT(model.mechanisms.size(), base);
    std::vector<uint32_t> m;
    for (uint32_t col : pl.observables().columns) {
        ASSERT_EQ(pl.basis().columns[col].size(), 1u);
        m.push_back(pl.basis().columns[col][0]);
    }
    ASSERT_EQ(m.size(), 4u);
    auto product = [&](std::vector<uint32_t> sup) {
        std::sort(sup.begin(), sup.end());
        return subgraph_checks(pl.checks(), product_path(pl.backprop(), sup, 4));
    };
    auto z23 = product({m[1], m[2]}), z4 = product({m[3]}), z234 = product({m[1], m[2], m[3]});
    size_t weight_four = 0;
    for (size_t i = base; i < model.mechanisms.size(); i++) {
        const auto &v = model.mechanisms[i];
        if (v.checks.size() != 4) continue;
        if (count_in(v.checks, z23) == 2 && count_in(v.checks, z4) == 2 && count_in(v.checks, z234) == 4) weight_four++;
    }
    EXPECT_GT(weight_four, 0u);

    // decoding Z1 then Z2Z3Z4 must report the virtual edge as unmatchable
    auto sets = pl.checks().measurement_sets();
    ErrorModel em = extract_error_model(pl.model_sampler(), sets, {{m[0]}, {m[1], m[2], m[3]}});
    auto z1 = product({m[0]});
    DecoderOptions opt;
    opt.mode = DecodeMode::Commit;
    Decoder joint(pl.checks(), em, {z1, z234}, 4, opt);
    ASSERT_EQ(joint.steps().size(), 2u);
    EXPECT_GT(joint.steps()[0].virtual_added, 0u);
    EXPECT_FALSE(joint.steps()[1].virtual_unmatchable.empty());

    ErrorModel split = extract_error_model(pl.model_sampler(), sets, {{m[0]}, {m[1], m[2]}, {m[3]}});
    Decoder separate(pl.checks(), split, {z1, z23, z4}, 4, opt);
    EXPECT_EQ(separate.diagnostics().virtual_unmatchable, 0u);
    EXPECT_GT(separate.diagnostics().virtual_added, 0u);
}

TEST(commit_engine, reduced_se_merges_checks) {
    const size_t d = 3;
    Pipeline pl(build_memory(d), config(d, NoiseKind::Phenomenological, 0.01, DecodeMode::Parallel));
    const auto &sg = pl.decoder().steps().at(0).subgraph;
    auto same = merge_checks_for_reduced_se(sg, pl.checks(), {});
    EXPECT_EQ(same.checks, sg.checks);
    EXPECT_EQ(same.edges.size(), sg.edges.size());

    // stabilizer measurements of one bulk round that lie in two subgraph checks
    std::map<uint32_t, size_t> uses;
    for (uint32_t c : sg.checks) {
        for (uint32_t m : pl.checks().checks[c].meas) uses[m]++;
    }
    const auto &tags = pl.physical().meas;
    uint32_t round = UINT32_MAX;
    for (auto [m, n] : uses) {
        if (n == 2 && tags[m].kind == MeasKind::Stabilizer) round = std::min(round, tags[m].logical_instr);
    }
    ASSERT_NE(round, UINT32_MAX);
    std::vector<uint32_t> removed;
    for (auto [m, n] : uses) {
        if (n == 2 && tags[m].kind == MeasKind::Stabilizer && tags[m].logical_instr == round + 1) removed.push_back(m);
    }
    ASSERT_EQ(removed.size(), (d * d - 1) / 2);
    auto merged = merge_checks_for_reduced_se(sg, pl.checks(), removed);
    EXPECT_EQ(merged.checks.size(), sg.checks.size() - removed.size());
    EXPECT_LE(merged.max_edge_degree, 2u);
    EXPECT_LE(merged.max_vertex_degree(), 12u);
    EXPECT_GE(merged.max_vertex_degree(), sg.max_vertex_degree());

    Matcher mm(MatchingGraph::from_subgraph(merged));
    for (uint32_t k = 0; k < merged.checks.size(); k++) EXPECT_FALSE(mm.decode({k}).edges.empty());
    EXPECT_THROW(merge_checks_for_reduced_se(sg, pl.checks(), {UINT32_MAX - 1}), std::invalid_argument);
}

TEST(decoder, empty_syndrome_predicts_nothing) {
    for (auto mode : {DecodeMode::Parallel, DecodeMode::Commit, DecodeMode::IterativeCopy}) {
        Pipeline pl(build_ghz_comparison(), config(3, NoiseKind::CircuitLevel, 0.003, mode));
        auto pred = pl.decoder().decode({});
        EXPECT_EQ(pred, std::vector<uint8_t>(pl.decoder().num_observables(), 0));
    }
}

TEST(decoder, noiseless_runs_never_fail) {
    for (auto mode : {DecodeMode::Parallel, DecodeMode::Commit, DecodeMode::IterativeCopy}) {
        Pipeline pl(build_random_clifford(3, {4, 4, true}),
                    config(3, NoiseKind::CircuitLevel, 0.0, mode, LayoutKind::Unrotated));
        auto r = pl.run(1, 512);
        EXPECT_EQ(r.shots, 512u);
        EXPECT_EQ(r.failures, 0u);
    }
}

TEST(decoder, single_elementary_faults_are_corrected) {
    for (auto mode : {DecodeMode::Parallel, DecodeMode::Commit}) {
        {
            Pipeline pl(build_ghz_comparison(), config(3, NoiseKind::Phenomenological, 0.01, mode));
            EXPECT_EQ(single_fault_failures(pl), 0u) << mode_name(mode);
        }
        {
            Pipeline pl(build_memory(3), config(3, NoiseKind::Phenomenological, 0.01, mode));
            EXPECT_EQ(single_fault_failures(pl), 0u) << mode_name(mode);
        }
        for (bool branch : {false, true}) {
            Pipeline pl(build_small_angle_example(branch),
                        config(3, NoiseKind::Phenomenological, 0.01, mode, LayoutKind::Unrotated));
            EXPECT_EQ(single_fault_failures(pl), 0u) << mode_name(mode) << " branch " << branch;
        }
        for (uint64_t seed = 0; seed < 6; seed++) {
            Pipeline pl(build_random_clifford(seed, {4, 4, true}),
                        config(3, NoiseKind::Phenomenological, 0.01, mode, LayoutKind::Unrotated));
            EXPECT_EQ(single_fault_failures(pl), 0u) << mode_name(mode) << " seed " << seed;
        }
    }
}

TEST(decoder, single_circuit_faults_without_fold_gates) {
    for (auto mode : {DecodeMode::Parallel, DecodeMode::Commit}) {
        for (size_t d : {3, 5}) {
            Pipeline ghz(build_ghz_comparison(), config(d, NoiseKind::CircuitLevel, 0.003, mode));
            EXPECT_EQ(single_fault_failures(ghz), 0u) << mode_name(mode) << " d=" << d;
            Pipeline mem(build_memory(d), config(d, NoiseKind::CircuitLevel, 0.003, mode));
            EXPECT_EQ(single_fault_failures(mem), 0u) << mode_name(mode) << " d=" << d;
        }
    }
}

TEST(decoder, distance_five_corrects_fault_pairs) {
    for (auto mode : {DecodeMode::Parallel, DecodeMode::Commit}) {
        for (auto kind : {NoiseKind::Phenomenological, NoiseKind::CircuitLevel}) {
            Pipeline ghz(build_ghz_comparison(), config(5, kind, 0.003, mode));
            EXPECT_EQ(random_pair_failures(ghz, 40, 11), 0u) << mode_name(mode);
            Pipeline mem(build_memory(5), config(5, kind, 0.003, mode));
            EXPECT_EQ(random_pair_failures(mem, 40, 12), 0u) << mode_name(mode);
        }
    }
}

TEST(pipeline, runs_are_reproducible_and_split_by_batch) {
    Pipeline pl(build_ghz_comparison(), config(3, NoiseKind::CircuitLevel, 0.01, DecodeMode::Parallel));
    auto a = pl.run(9, 1024);
    auto b = pl.run(9, 1024);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.observable_failures, b.observable_failures);
    EXPECT_GT(a.failures, 0u);
    auto lo = pl.run(9, 512, 0);
    auto hi = pl.run(9, 512, 2);
    lo.merge(hi);
    EXPECT_EQ(lo.shots, a.shots);
    EXPECT_EQ(lo.failures, a.failures);
    EXPECT_EQ(lo.observable_failures, a.observable_failures);
    EXPECT_NE(pl.run(10, 1024).observable_failures, std::vector<uint64_t>{});
}

TEST(pipeline, rejects_clifford_feed_forward) {
    auto cfg = config(3, NoiseKind::CircuitLevel, 0.001, DecodeMode::Parallel, LayoutKind::Unrotated);
    EXPECT_THROW(Pipeline(build_small_angle_example_ir(), cfg), std::invalid_argument);
}

TEST(pipeline, split_and_whole_models_flag_the_same_checks) {
    auto cfg = config(3, NoiseKind::CircuitLevel, 0.003, DecodeMode::Parallel);
    Pipeline split(build_ghz_comparison(), cfg);
    cfg.split_xz = false;
    Pipeline whole(build_ghz_comparison(), cfg);
    EXPECT_LT(split.error_model().mechanisms.size(), whole.error_model().mechanisms.size());
    std::set<uint32_t> flagged_split, flagged_whole;
    for (const auto &m : split.error_model().mechanisms) flagged_split.insert(m.checks.begin(), m.checks.end());
    for (const auto &m : whole.error_model().mechanisms) flagged_whole.insert(m.checks.begin(), m.checks.end());
    EXPECT_EQ(flagged_split, flagged_whole);
}
