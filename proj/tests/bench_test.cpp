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


#include <gtest/gtest.h>

#include "tcd/bench.hpp"

using namespace tcd;

TEST(bench, config_round_trips_through_json) {
    auto c = default_config("distill");
    c.seed = 7;
    c.p = {0.001, 0.004};
    c.circuit.seed = 9;
    auto back = parse_config(config_to_json(c), default_config("run"));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_EQ(back.mode, DecodeMode::Commit);
    EXPECT_EQ(back.layout, LayoutKind::Rotated);
}

TEST(bench, config_rejects_bad_input) {
    auto base = default_config("run");
    EXPECT_THROW(parse_config("[1]", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"shotz\": 3}", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"shots\": \"many\"}", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"mode\": \"fast\"}", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"p\": [1.5]}", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"distances\": []}", base), std::invalid_argument);
    EXPECT_THROW(parse_config("{\"circuit\": {\"kind\": \"toffoli\"}}", base), std::invalid_argument);
    EXPECT_THROW(default_config("plot"), std::invalid_argument);
}

TEST(bench, point_seeds_differ_across_points) {
    EXPECT_NE(point_seed(1, 3, 0), point_seed(1, 5, 0));
    EXPECT_NE(point_seed(1, 3, 0), point_seed(1, 3, 1));
    EXPECT_NE(point_seed(1, 3, 0), point_seed(2, 3, 0));
    EXPECT_EQ(point_seed(1, 3, 0), point_seed(1, 3, 0));
}

TEST(bench, thread_count_does_not_change_counts) {
    auto cfg = default_config("run");
    cfg.circuit.depth = 2;
    LogicalCircuit c = build_circuit(cfg.circuit, 3);
    Pipeline pl(c, pipeline_config(cfg, 3, 0.006));
    auto a = run_shots(pl, 11, 2000, 1);
    auto b = run_shots(pl, 11, 2000, 3);
    auto direct = pl.run(11, 2000);
    EXPECT_EQ(a.shots, 2000u);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.observable_failures, b.observable_failures);
    EXPECT_EQ(a.failures, direct.failures);
    EXPECT_GT(a.failures, 0u);
}

TEST(bench, noiseless_sweeps_never_fail) {
    for (const char *e : {"threshold", "distill"}) {
        auto cfg = default_config(e);
        cfg.distances = {3};
        cfg.p = {0.0};
        cfg.shots = 512;
        auto r = run_experiment(cfg);
        EXPECT_TRUE(r.violations.empty()) << e;
        ASSERT_EQ(r.rows.size(), 1u);
        EXPECT_EQ(r.rows[0][3], "0") << e;
    }
}

TEST(bench, ghz_modes_exact_without_noise) {
    auto cfg = default_config("ghz-compare");
    cfg.p = {0.0};
    cfg.shots = 512;
    for (auto &m : run_ghz_comparison(cfg)) EXPECT_EQ(m.point.failures, 0u) << mode_name(m.mode);
}

TEST(bench, distillation_stages_shrink_and_probe_reuses_nothing) {
    auto cfg = default_config("distill");
    cfg.distances = {3};
    cfg.p = {0.002};
    cfg.shots = 256;
    auto res = run_distillation(cfg);
    ASSERT_EQ(res.size(), 1u);
    const auto &st = res[0].stages;
    ASSERT_EQ(st.size(), 3u);
    EXPECT_LT(st[2].volume, st[0].volume);
    EXPECT_LT(st[2].volume, st[1].volume);
    EXPECT_EQ(st[0].steps + st[1].steps + st[2].steps, 15u);
    EXPECT_EQ(res[0].redecoded_at_probe, 0u);
    EXPECT_LE(res[0].probe_failures, res[0].point.failures);
    cfg.mode = DecodeMode::Parallel;
    EXPECT_THROW(run_distillation(cfg), std::invalid_argument);
}

TEST(bench, csv_is_versioned) {
    auto r = run_experiment(default_config("surgery-estimate"));
    auto csv = r.csv();
    EXPECT_EQ(csv.rfind("# tcd-csv v1 surgery-estimate\nkind,num_qubits,depth,work_T0,latency_T0\n", 0), 0u);
    EXPECT_NE(r.summary_json.find("\"work_T0\":92"), std::string::npos);
}

TEST(bench, sweeps_are_reproducible) {
    auto cfg = default_config("run");
    cfg.circuit.kind = CircuitKind::Memory;
    cfg.layout = LayoutKind::Rotated;
    cfg.distances = {3};
    cfg.p = {0.004, 0.008};
    cfg.shots = 1024;
    auto a = run_experiment(cfg).csv();
    cfg.threads = 2;
    EXPECT_EQ(run_experiment(cfg).csv(), a);
}
