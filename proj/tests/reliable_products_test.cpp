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

#include "tcd/reliable_products.hpp"

#include <gtest/gtest.h>

#include "tcd/tableau.hpp"

using namespace tcd;

namespace {

LogicalCircuit random_measured_circuit(uint64_t seed, size_t n, size_t layers) {
    std::mt19937_64 rng(seed);
    LogicalCircuit c(n);
    for (uint32_t q = 0; q < n; q++) (rng() & 1) ? c.init_z({q}) : c.init_x({q});
    std::vector<uint32_t> live(n);
    for (uint32_t q = 0; q < n; q++) live[q] = q;
    for (size_t l = 0; l < layers; l++) {
        std::shuffle(live.begin(), live.end(), rng);
        switch (rng() % 4) {
            case 0:
                if (live.size() >= 2) c.cnot({live[0], live[1]});
                break;
            case 1: c.fold_h({live[0]}); break;
            case 2: c.fold_s({live[0]}); break;
            case 3:
                if (live.size() > 1) {
                    (rng() & 1) ? c.measure_z({live.back()}) : c.measure_x({live.back()});
                    live.pop_back();
                }
                break;
        }
        c.se();
    }
    for (uint32_t q : live) (rng() & 1) ? c.measure_z({q}) : c.measure_x({q});
    return c;
}

struct LogicalRun {
    std::vector<bool> bits;
    std::vector<bool> deterministic;
};

LogicalRun run_logical(const LogicalCircuit &c, uint64_t seed) {
    Tableau t(c.num_qubits());
    std::mt19937_64 rng(seed);
    LogicalRun out;
    for (const auto &ins : c.instructions()) {
        const auto &g = ins.targets;
        auto record = [&](bool b, bool det) {
            out.bits.push_back(b);
            out.deterministic.push_back(det);
        };
        switch (ins.kind) {
            case InstructionKind::InitZ:
                for (auto q : g) t.reset_z(q, rng);
                break;
            case InstructionKind::InitX:
                for (auto q : g) t.reset_x(q, rng);
                break;
            case InstructionKind::TransversalCNOT:
                for (size_t k = 0; k < g.size(); k += 2) t.cx(g[k], g[k + 1]);
                break;
            case InstructionKind::FoldH:
                for (auto q : g) t.h(q);
                break;
            case InstructionKind::FoldS:
                for (auto q : g) t.s(q);
                break;
            case InstructionKind::FoldSDagger:
                for (auto q : g) t.s_dag(q);
                break;
            case InstructionKind::MeasureZ:
                for (auto q : g) {
                    bool det;
                    bool b = t.measure_z(q, rng, &det);
                    record(b, det);
                }
                break;
            case InstructionKind::MeasureX:
                for (auto q : g) {
                    bool det;
                    bool b = t.measure_x(q, rng, &det);
                    record(b, det);
                }
                break;
            case InstructionKind::MeasurePauli: {
                SparsePauli p;
                for (uint32_t q = 0; q < c.num_qubits(); q++) {
                    char ch = ins.product.get(q);
                    if (ch != 'I') p.push(q, ch);
                }
                bool det;
                bool b = t.measure(p, rng, &det);
                record(b, det);
                break;
            }
            default:
                break;
        }
    }
    return out;
}

}  // namespace

TEST(reliable_products, ghz_classification) {
    auto c = build_ghz_comparison();
    ReliableTracker t(c);
    t.extend_all();
    const auto &v = t.basis();
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v.tags[0], ColumnTag::Random);
    EXPECT_FALSE(is_reliable({0}, t.matrix(), t.init()));
    EXPECT_TRUE(is_reliable({1, 2}, t.matrix(), t.init()));
    EXPECT_TRUE(is_reliable({}, t.matrix(), t.init()));
    EXPECT_EQ(v.tags[1], ColumnTag::Reliable);
    EXPECT_EQ(v.tags[2], ColumnTag::Reliable);
    EXPECT_EQ(v.columns[2], (std::vector<uint32_t>{1, 2}));
    EXPECT_NE(t.to_json().find("reliable"), std::string::npos);
}

TEST(reliable_products, small_angle_branches) {
    // branch bit 1 (outcome -1) applies the S correction
    auto minus = classify_measurements(build_small_angle_example(true));
    ASSERT_EQ(minus.size(), 2u);
    EXPECT_EQ(minus.tags[0], ColumnTag::Random);
    EXPECT_EQ(minus.tags[1], ColumnTag::Reliable);
    EXPECT_EQ(minus.columns[1], (std::vector<uint32_t>{0, 1}));
    auto plus = classify_measurements(build_small_angle_example(false));
    EXPECT_EQ(plus.tags[0], ColumnTag::Random);
    EXPECT_EQ(plus.tags[1], ColumnTag::Reliable);
    EXPECT_EQ(plus.columns[1], (std::vector<uint32_t>{1}));
    std::mt19937_64 rng(1);
    // Z3 bit = decoded(Z2 Z3) ^ assigned(Z2)
    auto bits = assign_measurements(minus, {1, 1}, rng);
    EXPECT_EQ(bits[0], true);
    EXPECT_EQ(bits[1], false);
}

TEST(reliable_products, matches_logical_tableau) {
    size_t reliable = 0, random = 0;
    for (uint64_t seed = 0; seed < 60; seed++) {
        auto c = random_measured_circuit(seed, 4, 12);
        for (auto rule : {SelectionRule::Sparsest, SelectionRule::FirstFound}) {
            ReliableTracker t(c, rule);
            t.extend_all();
            const auto &v = t.basis();
            auto run0 = run_logical(c, 1000 + seed);
            ASSERT_EQ(run0.bits.size(), v.size());
            // tagged reliable iff deterministic given earlier outcomes
            for (size_t j = 0; j < v.size(); j++) {
                EXPECT_EQ(v.tags[j] == ColumnTag::Reliable, run0.deterministic[j]) << "seed " << seed << " j " << j;
                (v.tags[j] == ColumnTag::Reliable ? reliable : random)++;
            }
            EXPECT_EQ(v.matrix().transposed().num_rows(), v.size());
            EXPECT_EQ(row_reduce(v.matrix()).rank, v.size());
            // reliable products take the same value in every run
            std::vector<int> first;
            for (uint64_t s = 0; s < 8; s++) {
                auto run = run_logical(c, s);
                std::vector<int> values(v.size(), -1);
                for (size_t j = 0; j < v.size(); j++) {
                    bool p = false;
                    for (uint32_t i : v.columns[j]) p ^= run.bits[i];
                    if (v.tags[j] == ColumnTag::Reliable) {
                        if (s == 0) first.push_back(p);
                        values[j] = p;
                    } else {
                        values[j] = p;
                    }
                }
                size_t k = 0;
                for (size_t j = 0; j < v.size(); j++) {
                    if (v.tags[j] == ColumnTag::Reliable) EXPECT_EQ(values[j], first[k++]);
                }
                std::mt19937_64 rng(s);
                EXPECT_EQ(assign_measurements(v, values, rng), run.bits);
            }
            // reliable vectors form a linear space
            for (size_t a = 0; a < v.size(); a++) {
                for (size_t b = a + 1; b < v.size(); b++) {
                    if (v.tags[a] != ColumnTag::Reliable || v.tags[b] != ColumnTag::Reliable) continue;
                    std::vector<uint32_t> sum;
                    std::set_symmetric_difference(v.columns[a].begin(), v.columns[a].end(), v.columns[b].begin(),
                                                  v.columns[b].end(), std::back_inserter(sum));
                    EXPECT_TRUE(is_reliable(sum, t.matrix(), t.init()));
                }
            }
        }
    }
    EXPECT_GT(reliable, 50u);
    EXPECT_GT(random, 50u);
}

TEST(reliable_products, random_clifford_final_products_reliable) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        auto c = build_random_clifford(seed, {6, 8, true});
        auto v = classify_measurements(c);
        for (size_t j = 0; j < v.size(); j++) {
            EXPECT_EQ(v.tags[j], ColumnTag::Reliable);
            EXPECT_EQ(v.columns[j], std::vector<uint32_t>{(uint32_t)j});
        }
    }
}

TEST(reliable_products, missing_reliable_value_throws) {
    auto v = classify_measurements(build_ghz_comparison());
    std::mt19937_64 rng(0);
    EXPECT_THROW(assign_measurements(v, {}, rng), std::invalid_argument);
    auto a = assign_measurements(v, {-1, 0, 0}, rng);
    EXPECT_EQ(a[0], a[1]);
    EXPECT_EQ(a[1], a[2]);
}

TEST(reliable_products, product_path_ghz) {
    auto c = build_ghz_comparison();
    ReliableTracker t(c);
    t.extend_all();
    auto p = product_path(t.matrix(), {1, 2}, 3);
    // Z2 Z3 before the measurements, Z2 Z3 -> Z3 only... after both CNOTs the product is ZZ on 1,2
    EXPECT_EQ(p.ops[p.end - 1].str(), "IZZ");
}
