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

#include "tcd/surface_code.hpp"

#include <gtest/gtest.h>

#include <set>

#include "tcd/tableau.hpp"

using namespace tcd;

namespace {

size_t overlap(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    size_t k = 0;
    for (uint32_t x : a) k += std::count(b.begin(), b.end(), x);
    return k;
}

// Minimum weight of an operator of the given type commuting with the opposite stabilizers
// and not in the span of same-type stabilizers, by enumeration up to max_w.
size_t min_logical_weight(const CodeLayout &L, char type, size_t max_w) {
    const auto &opp = L.stabs(type == 'X' ? 'Z' : 'X');
    const auto &same = L.stabs(type);
    size_t n = L.num_data();
    std::vector<BitVector> rows;
    for (const auto &s : same) {
        BitVector v(n);
        for (uint32_t p : s.support()) v.set(p, true);
        rows.push_back(v);
    }
    SpanSolver span(rows, n);
    std::vector<uint32_t> pick;
    size_t best = SIZE_MAX;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!pick.empty()) {
            bool ok = true;
            for (const auto &s : opp) {
                if (overlap(pick, s.support()) % 2) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                BitVector v(n);
                for (uint32_t p : pick) v.set(p, true);
                if (!span.contains(v)) best = std::min(best, pick.size());
            }
        }
        if (pick.size() == max_w) return;
        for (size_t q = start; q < n; q++) {
            pick.push_back((uint32_t)q);
            rec(q + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

}  // namespace

TEST(surface_code, layout_counts) {
    auto r3 = make_layout(LayoutKind::Rotated, 3);
    EXPECT_EQ(r3.num_data(), 9u);
    EXPECT_EQ(r3.x_stabs.size(), 4u);
    EXPECT_EQ(r3.z_stabs.size(), 4u);
    auto u3 = make_layout(LayoutKind::Unrotated, 3);
    EXPECT_EQ(u3.num_data(), 13u);
    EXPECT_EQ(u3.x_stabs.size(), 6u);
    EXPECT_EQ(u3.z_stabs.size(), 6u);
    EXPECT_THROW(make_layout(LayoutKind::Rotated, 4), std::invalid_argument);
    EXPECT_NE(u3.to_json().find("x_stabilizers"), std::string::npos);
}

TEST(surface_code, layout_invariants) {
    for (auto kind : {LayoutKind::Rotated, LayoutKind::Unrotated}) {
        for (size_t d : {3, 5, 7}) {
            auto L = make_layout(kind, d);
            for (const auto &x : L.x_stabs)
                for (const auto &z : L.z_stabs) EXPECT_EQ(overlap(x.support(), z.support()) % 2, 0u);
            for (const auto &z : L.z_stabs) EXPECT_EQ(overlap(L.logical_x, z.support()) % 2, 0u);
            for (const auto &x : L.x_stabs) EXPECT_EQ(overlap(L.logical_z, x.support()) % 2, 0u);
            EXPECT_EQ(overlap(L.logical_x, L.logical_z), 1u);
            EXPECT_EQ(L.logical_x.size(), d);
            EXPECT_EQ(L.logical_z.size(), d);
            // stabilizer count: data - 1 independent generators
            EXPECT_EQ(L.x_stabs.size() + L.z_stabs.size() + 1, L.num_data());
        }
    }
    for (auto kind : {LayoutKind::Rotated, LayoutKind::Unrotated}) {
        auto L = make_layout(kind, 3);
        EXPECT_EQ(min_logical_weight(L, 'X', 3), 3u);
        EXPECT_EQ(min_logical_weight(L, 'Z', 3), 3u);
    }
    auto L5 = make_layout(LayoutKind::Rotated, 5);
    EXPECT_EQ(min_logical_weight(L5, 'X', 5), 5u);
}

TEST(surface_code, transpose_is_involution_and_preserves_code) {
    auto L = make_layout(LayoutKind::Unrotated, 5);
    for (uint32_t p = 0; p < L.num_data(); p++) EXPECT_EQ(L.transpose_data[L.transpose_data[p]], p);
    for (uint32_t i = 0; i < L.x_stabs.size(); i++) {
        std::set<uint32_t> img;
        for (uint32_t p : L.x_stabs[i].support()) img.insert(L.transpose_data[p]);
        auto zs = L.z_stabs[L.transpose_x_to_z[i]].support();
        EXPECT_EQ(img, std::set<uint32_t>(zs.begin(), zs.end()));
        EXPECT_EQ(L.transpose_z_to_x[L.transpose_x_to_z[i]], i);
    }
}

namespace {

Reference run_noiseless(const LogicalCircuit &c, LayoutKind k, size_t d, uint64_t seed = 1) {
    auto pc = compile_circuit(c, make_layout(k, d));
    return compute_reference(pc, seed);
}

}  // namespace

TEST(surface_code, se_round_after_init) {
    for (auto kind : {LayoutKind::Rotated, LayoutKind::Unrotated}) {
        LogicalCircuit c(1);
        c.init_z({0});
        c.se({}, true);
        c.se({}, true);
        auto pc = compile_circuit(c, make_layout(kind, 5));
        auto ref = compute_reference(pc, 3);
        const auto &r1 = pc.se_records[0], &r2 = pc.se_records[1];
        size_t random_x = 0;
        for (size_t i = 0; i < r1.z_meas[0].size(); i++) {
            EXPECT_FALSE(ref.random.get(r1.z_meas[0][i]));
            EXPECT_FALSE(ref.bits.get(r1.z_meas[0][i]));
        }
        for (size_t i = 0; i < r1.x_meas[0].size(); i++) {
            random_x += ref.random.get(r1.x_meas[0][i]);
            EXPECT_FALSE(ref.random.get(r2.x_meas[0][i]));
            EXPECT_EQ(ref.bits.get(r1.x_meas[0][i]), ref.bits.get(r2.x_meas[0][i]));
        }
        EXPECT_EQ(random_x, r1.x_meas[0].size());
        for (size_t i = 0; i < r2.z_meas[0].size(); i++) {
            EXPECT_FALSE(ref.random.get(r2.z_meas[0][i]));
            EXPECT_FALSE(ref.bits.get(r2.z_meas[0][i]));
        }
    }
}

TEST(surface_code, logical_actions_on_tableau) {
    auto det_mpp = [](const LogicalCircuit &c, LayoutKind k) {
        auto pc = compile_circuit(c, make_layout(k, 3));
        auto ref = compute_reference(pc, 5);
        std::vector<int> out;
        for (const auto &lm : pc.logical_meas) {
            ASSERT_EQ(lm.size(), 1u);
            EXPECT_FALSE(ref.random.get(lm[0]));
        }
    };
    // S maps X to Y
    {
        LogicalCircuit c(1);
        c.init_x({0});
        c.se({}, true);
        c.fold_s({0});
        c.se({}, true);
        c.measure_pauli(PauliString::from_string("Y"));
        det_mpp(c, LayoutKind::Unrotated);
    }
    // H maps Z to X, twice is identity
    {
        LogicalCircuit c(1);
        c.init_z({0});
        c.se({}, true);
        c.fold_h({0});
        c.se({}, true);
        c.measure_pauli(PauliString::from_string("X"));
        det_mpp(c, LayoutKind::Unrotated);
        LogicalCircuit c2(1);
        c2.init_z({0});
        c2.fold_h({0});
        c2.se({}, true);
        c2.fold_h({0});
        c2.se({}, true);
        c2.measure_pauli(PauliString::from_string("Z"));
        det_mpp(c2, LayoutKind::Unrotated);
    }
    // CNOT makes a Bell pair
    for (auto k : {LayoutKind::Rotated, LayoutKind::Unrotated}) {
        LogicalCircuit c(2);
        c.init_x({0});
        c.init_z({1});
        c.cnot({0, 1});
        c.se({}, true);
        c.measure_pauli(PauliString::from_string("XX"));
        c.measure_pauli(PauliString::from_string("ZZ"));
        det_mpp(c, k);
    }
    // magic init is a Y eigenstate, S-dagger fold returns it to X after S
    {
        LogicalCircuit c(1);
        c.init_magic({0});
        c.se({}, true);
        c.measure_pauli(PauliString::from_string("Y"));
        det_mpp(c, LayoutKind::Rotated);
        LogicalCircuit c2(1);
        c2.init_x({0});
        c2.fold_s({0});
        c2.se({}, true);
        c2.fold_s_dagger({0});
        c2.se({}, true);
        c2.measure_pauli(PauliString::from_string("X"));
        det_mpp(c2, LayoutKind::Unrotated);
    }
    LogicalCircuit bad(1);
    bad.init_z({0});
    bad.fold_h({0});
    EXPECT_THROW(compile_circuit(bad, make_layout(LayoutKind::Rotated, 3)), std::invalid_argument);
}

TEST(surface_code, noiseless_stabilizers_deterministic_after_first_round) {
    // every stabilizer measurement after the first round of each block is deterministic
    for (uint64_t seed = 0; seed < 5; seed++) {
        auto c = build_random_clifford(seed, {4, 6, true});
        auto pc = compile_circuit(c, make_layout(LayoutKind::Unrotated, 3));
        auto ref = compute_reference(pc, seed);
        for (size_t r = 1; r < pc.se_records.size(); r++) {
            for (auto &v : pc.se_records[r].x_meas)
                for (auto m : v) EXPECT_FALSE(ref.random.get(m));
            for (auto &v : pc.se_records[r].z_meas)
                for (auto m : v) EXPECT_FALSE(ref.random.get(m));
        }
        for (const auto &lm : pc.logical_meas) EXPECT_FALSE(ref.random.get(lm[0]));
    }
}

TEST(surface_code, ghz_and_distillation_references) {
    auto ghz = build_ghz_comparison();
    auto pc = compile_circuit(ghz, make_layout(LayoutKind::Rotated, 3));
    for (uint64_t s = 0; s < 5; s++) {
        auto ref = compute_reference(pc, s);
        bool z2 = false, z3 = false;
        for (auto m : pc.logical_meas[1]) z2 ^= ref.bits.get(m);
        for (auto m : pc.logical_meas[2]) z3 ^= ref.bits.get(m);
        EXPECT_EQ(z2, z3);
    }
    DistillationLayout lay;
    auto dc = build_distillation(&lay);
    auto dpc = compile_circuit(dc, make_layout(LayoutKind::Rotated, 3));
    auto ref = compute_reference(dpc, 2);
    EXPECT_FALSE(ref.random.get(dpc.logical_meas[lay.stage_measurements[2][0]][0]));
}
