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

#include "tcd/logical_circuit.hpp"
#include "tcd/pipeline.hpp"
#include "tcd/stats.hpp"

namespace tcd {

enum class CircuitKind : uint8_t { RandomClifford, Memory, Ghz, Distillation, SmallAngle };

const char *circuit_kind_name(CircuitKind k);
CircuitKind parse_circuit_kind(const std::string &s);

struct CircuitSpec {
    CircuitKind kind = CircuitKind::RandomClifford;
    uint64_t seed = 1;
    size_t num_qubits = 4;
    size_t depth = 6;
    // memory rounds; 0 means d rounds
    size_t rounds = 0;
    // small-angle feed-forward branch
    bool branch = false;
};

LogicalCircuit build_circuit(const CircuitSpec &spec, size_t distance);

struct ExperimentConfig {
    std::string experiment = "run";
    CircuitSpec circuit;
    LayoutKind layout = LayoutKind::Unrotated;
    std::vector<size_t> distances{3, 5, 7};
    std::vector<double> p{0.003};
    uint64_t shots = 100000;
    uint64_t seed = 1;
    DecodeMode mode = DecodeMode::Parallel;
    NoiseKind noise = NoiseKind::CircuitLevel;
    size_t threads = 0;
    size_t bootstrap = 1000;
    // failure rates per layer of circuit.depth over circuit.num_qubits qubits
    bool per_layer = false;
    // surgery-estimate: "distillation" or "clifford"
    std::string surgery = "distillation";
    std::string out;
};

// Defaults of each CLI experiment.
ExperimentConfig default_config(const std::string &experiment);
// Overlays a JSON object on base; unknown keys and bad values throw std::invalid_argument.
ExperimentConfig parse_config(const std::string &json_text, const ExperimentConfig &base);
std::string config_to_json(const ExperimentConfig &cfg);

// Seed of the (distance, p) point with index i of a sweep.
uint64_t point_seed(uint64_t seed, size_t distance, size_t p_index);

// Runs shots on the given pipeline, batches spread over threads and summed in batch order.
ShotCounts run_shots(const Pipeline &pl, uint64_t seed, uint64_t shots, size_t threads);

PipelineConfig pipeline_config(const ExperimentConfig &cfg, size_t distance, double p);

// Failure counts at every (d, p) of the config.
std::vector<RatePoint> run_sweep(const ExperimentConfig &cfg);

ThresholdOptions threshold_options(const ExperimentConfig &cfg);

struct ModeRate {
    DecodeMode mode = DecodeMode::Parallel;
    RatePoint point;
};

// Subgraph (parallel) and iterative-copy decoding of the GHZ circuit at cfg.p[0].
std::vector<ModeRate> run_ghz_comparison(const ExperimentConfig &cfg);

struct StageReport {
    size_t steps = 0;
    // checks matched by the stage's steps
    size_t volume = 0;
    double ns_per_shot = 0.0;
};

struct DistillationPoint {
    RatePoint point;
    uint64_t probe_failures = 0;
    std::vector<StageReport> stages;
    // probe-step checks that an earlier step already matched
    size_t redecoded_at_probe = 0;
};

// Commit-mode decoding of the distillation circuit with per-stage volume and timing.
std::vector<DistillationPoint> run_distillation(const ExperimentConfig &cfg);

struct VolumeSample {
    size_t distance = 0;
    uint32_t observable = 0;
    size_t volume = 0;
    double ns_per_shot = 0.0;
};

// Per-step matching volume and single-threaded wall time at cfg.p[0] for every distance.
std::vector<VolumeSample> measure_volume_runtime(const ExperimentConfig &cfg);

struct Report {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string summary_json;
    std::vector<std::string> violations;
    // versioned CSV with a leading "# tcd-csv v1 <experiment>" line
    std::string csv() const;
};

constexpr int kCsvVersion = 1;

Report run_experiment(const ExperimentConfig &cfg);

}  // namespace tcd
