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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tcd {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for k failures in n shots.
Interval wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

// Failure probability per layer from the total over `depth` layers, with P_max = 1 - 2^-n.
double per_layer_rate(double total, size_t depth, size_t num_qubits);
double max_failure_rate(size_t num_qubits);

struct RatePoint {
    size_t distance = 0;
    double p = 0.0;
    uint64_t shots = 0;
    uint64_t failures = 0;
    double rate() const { return shots ? (double)failures / (double)shots : 0.0; }
};

struct ThresholdOptions {
    size_t bootstrap = 1000;
    uint64_t seed = 1;
    // per-layer normalization when num_qubits > 0
    size_t depth = 1;
    size_t num_qubits = 0;
    double confidence = 0.95;
};

struct Crossing {
    size_t small = 0;
    size_t large = 0;
    bool found = false;
    // +1: larger distance better over the whole range, -1: worse over the whole range
    int side = 0;
    double p = 0.0;
};

struct SlopeFit {
    size_t distance = 0;
    size_t points = 0;
    double exponent = 0.0;
    double intercept = 0.0;
    int expected = 0;
};

struct ThresholdResult {
    bool bounded = false;
    double p_th = 0.0;
    Interval ci;
    std::vector<Crossing> crossings;
    std::vector<SlopeFit> slopes;
};

// Rate used for fitting: per-layer if requested, zero counts replaced by half a failure.
double fit_rate(const RatePoint &pt, const ThresholdOptions &opt);

// Pairwise crossings of log-rate curves (log-p interpolation), median estimate, parametric
// bootstrap interval and power-law slopes at p <= p_th / 2.
ThresholdResult estimate_threshold(const std::vector<RatePoint> &points, const ThresholdOptions &opt = {});

// Least-squares fit of log rate against log p.
SlopeFit fit_slope(const std::vector<RatePoint> &points, size_t distance, double p_max, const ThresholdOptions &opt);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y);

// Decoding work and latency of lattice-surgery baselines, in units of one d^3 memory decode.
struct SurgeryEstimate {
    double work = 0.0;
    double latency = 0.0;
};
// Edges decoded with half-width buffers, then vertices; each edge is covered twice.
SurgeryEstimate surgery_factory(size_t edges, size_t max_vertex_degree);
// The factory of the distillation benchmark: 46 edges, maximal vertex degree 7.
SurgeryEstimate surgery_distillation();
// Transversal gates separated by d rounds: every block-layer is decoded once per stage, and the
// gate stage decodes the two blocks of a CNOT in order.
SurgeryEstimate surgery_clifford(size_t num_qubits, size_t depth);

}  // namespace tcd
