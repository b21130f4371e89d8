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

#include "tcd/decoding_graph.hpp"

#include <gtest/gtest.h>

using namespace tcd;

namespace {

struct Ctx {
    PhysicalCircuit pc;
    Reference ref;
    CheckSet checks;
    ReliableTracker *tracker = nullptr;
    ReliableBasis basis;
    BackPropMatrix bp;
    ProductObservables obs;
};

Ctx make_ctx(const LogicalCircuit &c, LayoutKind k, size_t d) {
    Ctx x;
    x.pc = compile_circuit(c, make_layout(k, d));
    x.ref = compute_reference(x.pc, 3);
    x.checks = build_checks(x.pc, x.ref);
    ReliableTracker t(x.pc.logical);
    t.extend_all();
    x.basis = t.basis();
    x.bp = t.matrix();
    x.obs = product_observables(x.pc, x.basis);
    return x;
}

std::vector<DecodingSubgraph> all_subgraphs(const Ctx &x, const ErrorModel &em, bool strict) {
    std::vector<DecodingSubgraph> out;
    for (uint32_t o = 0; o < x.obs.columns.size(); o++) {
        auto path = product_path(x.bp, x.basis.columns[x.obs.columns[o]], x.pc.logical.num_qubits());
        SubgraphOptions opt;
        opt.strict = strict;
        out.push_back(extract_subgraph(subgraph_checks(x.checks, path), em, o, opt));
    }
    return out;
}

LogicalCircuit cnot_block() {
    LogicalCircuit c(2);
    c.init_z({0, 1});
    c.se();
    c.se();
    c.cnot({0, 1});
    c.se();
    c.measure_z({0, 1});
    return c;
}

// Tableau run with one noise component forced on.
BitVector tableau_with_component(const PhysicalCircuit &pc, const std::vector<NoiseComponent> &comps, size_t forced,
                                 std::mt19937_64 &rng) {
    Tableau t(pc.num_qubits);
    BitVector bits(pc.num_measurements());
    int flip = -1;
    auto noise = [&](uint32_t op, bool before) {
        const auto &c = comps[forced];
        if (c.op != op || c.before != before) return;
        if (c.kind == ComponentKind::MeasFlip) {
            flip = (int)c.meas;
            return;
        }
        auto apply = [&](uint32_t q, uint8_t code) {
            if (code == 1) t.x(q);
            if (code == 2) t.z(q);
            if (code == 3) t.y(q);
        };
        apply(c.q0, c.p0);
        if (c.q1 != UINT32_MAX) apply(c.q1, c.p1);
    };
    for (uint32_t i = 0; i < pc.ops.size(); i++) {
        const PhysOp &op = pc.ops[i];
        noise(i, true);
        const auto &g = op.targets;
        switch (op.kind) {
            case OpKind::R:
                for (auto q : g) t.reset_z(q, rng);
                break;
            case OpKind::RX:
                for (auto q : g) t.reset_x(q, rng);
                break;
            case OpKind::H:
                for (auto q : g) t.h(q);
                break;
            case OpKind::S:
                for (auto q : g) t.s(q);
                break;
            case OpKind::S_DAG:
                for (auto q : g) t.s_dag(q);
                break;
            case OpKind::CX:
                for (size_t k = 0; k < g.size(); k += 2) t.cx(g[k], g[k + 1]);
                break;
            case OpKind::CZ:
                for (size_t k = 0; k < g.size(); k += 2) t.cz(g[k], g[k + 1]);
                break;
            case OpKind::M:
                for (size_t k = 0; k < g.size(); k++) bits.set(op.first_measurement + k, t.measure_z(g[k], rng));
                break;
            case OpKind::MX:
                for (size_t k = 0; k < g.size(); k++) bits.set(op.first_measurement + k, t.measure_x(g[k], rng));
                break;
            case OpKind::MPP:
                for (uint32_t k = 0; k < op.product_count; k++) {
                    bits.set(op.first_measurement + k, t.measure(pc.products[op.product_begin + k], rng));
                }
                break;
            case OpKind::PREP:
                for (auto q : g) t.reset_z(q, rng);
                for (uint32_t k = 0; k < op.product_count; k++) {
                    t.measure(pc.products[op.product_begin + k], rng, nullptr, false);
                }
                break;
            case OpKind::PAULI:
                for (uint32_t k = 0; k < op.product_count; k++) {
                    const auto &p = pc.products[op.product_begin + k];
                    for (size_t j = 0; j < p.qubits.size(); j++) {
                        char ch = p.paulis[j];
                        if (ch == 'X') t.x(p.qubits[j]);
                        if (ch == 'Y') t.y(p.qubits[j]);
                        if (ch == 'Z') t.z(p.qubits[j]);
                    }
                }
                break;
            default:
                break;
        }
        noise(i, false);
    }
    if (flip >= 0) bits.flip((size_t)flip);
    return bits;
}

}  // namespace

TEST(decoding_graph, noiseless_checks_hold) {
    std::vector<LogicalCircuit> circuits = {build_memory(3), build_ghz_comparison(), build_small_angle_example(false),
                                            build_small_angle_example(true), cnot_block()};
    for (uint64_t s = 0; s < 6; s++) circuits.push_back(build_random_clifford(s, {4, 6, true}));
    DistillationLayout lay;
    circuits.push_back(build_distillation(&lay));
    for (size_t ci = 0; ci < circuits.size(); ci++) {
        for (size_t d : {3, 5}) {
            bool fold = false;
            for (const auto &ins : circuits[ci].instructions()) {
                fold |= ins.kind == InstructionKind::FoldH || ins.kind == InstructionKind::FoldS ||
                        ins.kind == InstructionKind::FoldSDagger;
            }
            auto x = make_ctx(circuits[ci], fold ? LayoutKind::Unrotated : LayoutKind::Rotated, d);
            ASSERT_GT(x.checks.size(), 0u);
            FrameSampler fs(x.pc, NoiseModel{});
            auto b = fs.sample(1, 0, 256);
            for (const auto &ch : x.checks.checks) {
                // a transversal data readout contributes one inferred stabilizer value
                size_t stab = 0, data = 0;
                for (auto m : ch.meas) (x.pc.meas[m].kind == MeasKind::Data ? data : stab)++;
                EXPECT_LE(stab + (data > 0), ch.product ? 64u : 3u) << "circuit " << ci;
                for (size_t l = 0; l < 256; l += 17) {
                    bool v = false;
                    for (auto m : ch.meas) v ^= b.measurement_bit(x.ref, m, l);
                    ASSERT_EQ(v, ch.flip) << "circuit " << ci << " check " << ch.id;
                }
            }
        }
    }
}

TEST(decoding_graph, memory_checks) {
    auto x = make_ctx(build_memory(3), LayoutKind::Rotated, 3);
    // 4 first-round Z checks, 8 per later round pair, 4 final data checks
    EXPECT_EQ(x.checks.size(), 4u + 2 * 8 + 4);
    FrameSampler fs(x.pc, NoiseModel{NoiseKind::Phenomenological, 0.01});
    auto em = extract_error_model(fs, x.checks.measurement_sets(), x.obs.meas);
    auto sub = all_subgraphs(x, em, true);
    ASSERT_EQ(sub.size(), 1u);
    EXPECT_EQ(sub[0].max_edge_degree, 2u);
    // Z product keeps only Z checks
    for (uint32_t c : sub[0].checks) EXPECT_EQ(x.checks.checks[c].latest[0].basis, 'Z');
    EXPECT_EQ(sub[0].checks.size(), 4u + 8 + 4);
    size_t data_two = 0;
    for (const auto &m : em.mechanisms) {
        if (!m.timelike && m.checks.size() == 2) data_two++;
    }
    EXPECT_GT(data_two, 0u);
}

TEST(decoding_graph, cnot_measurement_error_weights) {
    auto x = make_ctx(cnot_block(), LayoutKind::Rotated, 3);
    FrameSampler fs(x.pc, NoiseModel{NoiseKind::Phenomenological, 0.01});
    auto em = extract_error_model(fs, x.checks.measurement_sets(), x.obs.meas);
    // flip of a Z stabilizer of block 0 in the round just before the CNOT
    const auto &rec = x.pc.se_records[1];
    uint32_t target = rec.z_meas[0][1];
    const ErrorMechanism *found = nullptr;
    for (const auto &m : em.mechanisms) {
        for (uint32_t comp : m.components) {
            const auto &c = fs.components()[comp];
            if (c.kind == ComponentKind::MeasFlip && c.meas == target) found = &m;
        }
    }
    ASSERT_NE(found, nullptr);
    EXPECT_EQ(found->checks.size(), 3u);
    size_t three = 0;
    for (const auto &ch : x.checks.checks) three += ch.meas.size() == 3;
    EXPECT_GT(three, 0u);
    auto sub = all_subgraphs(x, em, true);
    ASSERT_EQ(sub.size(), 2u);
    for (const auto &g : sub) {
        EXPECT_LE(g.max_edge_degree, 2u);
        std::vector<uint32_t> in;
        for (uint32_t c : found->checks) {
            if (std::binary_search(g.checks.begin(), g.checks.end(), c)) in.push_back(c);
        }
        if (!in.empty()) EXPECT_EQ(in.size(), 2u);
    }
}

TEST(decoding_graph, hypergraph_matches_tableau_injection) {
    for (auto kind : {NoiseKind::CircuitLevel, NoiseKind::Phenomenological}) {
        auto x = make_ctx(build_ghz_comparison(), LayoutKind::Rotated, 3);
        FrameSampler fs(x.pc, NoiseModel{kind, 0.01});
        auto em = extract_error_model(fs, x.checks.measurement_sets(), x.obs.meas);
        std::vector<int32_t> mech_of(fs.components().size(), -1);
        for (const auto &m : em.mechanisms) {
            for (uint32_t c : m.components) mech_of[c] = (int32_t)m.id;
        }
        std::mt19937_64 rng(2);
        for (size_t comp = 0; comp < fs.components().size(); comp++) {
            auto bits = tableau_with_component(x.pc, fs.components(), comp, rng);
            std::vector<uint32_t> flipped, oflipped;
            for (const auto &ch : x.checks.checks) {
                bool v = ch.flip;
                for (auto m : ch.meas) v ^= bits.get(m);
                if (v) flipped.push_back(ch.id);
            }
            for (uint32_t o = 0; o < x.obs.meas.size(); o++) {
                bool v = false;
                for (auto m : x.obs.meas[o]) v ^= bits.get(m) ^ x.ref.bits.get(m);
                if (v) oflipped.push_back(o);
            }
            if (mech_of[comp] < 0) {
                EXPECT_TRUE(flipped.empty() && oflipped.empty()) << "component " << comp;
            } else {
                EXPECT_EQ(flipped, em.mechanisms[mech_of[comp]].checks) << "component " << comp;
                EXPECT_EQ(oflipped, em.mechanisms[mech_of[comp]].observables) << "component " << comp;
            }
        }
    }
}

TEST(decoding_graph, random_circuits_matchable_and_complete) {
    for (uint64_t s = 0; s < 40; s++) {
        auto x = make_ctx(build_random_clifford(s, {4, 6, true}), LayoutKind::Unrotated, 3);
        FrameSampler fs(x.pc, NoiseModel{NoiseKind::Phenomenological, 0.001});
        auto em = extract_error_model(fs, x.checks.measurement_sets(), x.obs.meas);
        auto sub = all_subgraphs(x, em, false);
        for (const auto &g : sub) {
            EXPECT_LE(g.max_edge_degree, 2u) << "seed " << s;
            EXPECT_TRUE(g.undetectable.empty()) << "seed " << s;
            EXPECT_LE(g.max_vertex_degree(), 12u);
        }
    }
}

TEST(decoding_graph, circuit_level_decomposes) {
    size_t decomposed = 0, unmatchable = 0, total = 0;
    for (uint64_t s = 0; s < 20; s++) {
        auto x = make_ctx(build_random_clifford(s, {4, 6, true}), LayoutKind::Unrotated, 3);
        FrameSampler fs(x.pc, decompose_components(enumerate_noise(x.pc, {NoiseKind::CircuitLevel, 0.001}), false));
        auto em = extract_error_model(fs, x.checks.measurement_sets(), x.obs.meas);
        for (uint32_t o = 0; o < x.obs.columns.size(); o++) {
            auto path = product_path(x.bp, x.basis.columns[x.obs.columns[o]], 4);
            SubgraphOptions opt;
            opt.strict = false;
            opt.decompose = true;
            auto g = extract_subgraph(subgraph_checks(x.checks, path), em, o, opt);
            decomposed += g.decomposed.size();
            unmatchable += g.unmatchable.size();
            total += g.edges.size();
            for (const auto &e : g.edges) EXPECT_LE(e.nodes.size(), 2u);
        }
    }
    EXPECT_GT(decomposed, 0u);
    EXPECT_EQ(unmatchable, 0u);
    EXPECT_GT(total, 0u);
}

TEST(decoding_graph, ghz_subgraph_spans_both_blocks) {
    auto x = make_ctx(build_ghz_comparison(), LayoutKind::Rotated, 3);
    ASSERT_EQ(x.obs.columns.size(), 2u);
    auto path = product_path(x.bp, x.basis.columns[x.obs.columns[1]], 3);
    auto in = subgraph_checks(x.checks, path);
    std::set<uint32_t> blocks;
    for (uint32_t c : in) {
        for (const auto &e : x.checks.checks[c].latest) {
            EXPECT_EQ(e.basis, 'Z');
            blocks.insert(e.block);
        }
    }
    EXPECT_TRUE(blocks.count(1) && blocks.count(2));
}
