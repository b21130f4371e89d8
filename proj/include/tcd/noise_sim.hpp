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
#include <utility>
#include <vector>

#include "tcd/surface_code.hpp"
#include "tcd/tableau.hpp"

namespace tcd {

enum class NoiseKind : uint8_t { CircuitLevel, Phenomenological };

struct NoiseModel {
    NoiseKind kind = NoiseKind::CircuitLevel;
    double p = 0.0;
};

enum class ComponentKind : uint8_t { Pauli, MeasFlip };

// One independent elementary error. Pauli codes use bit 0 = X, bit 1 = Z.
struct NoiseComponent {
    ComponentKind kind = ComponentKind::Pauli;
    uint32_t op = 0;
    bool before = false;
    uint32_t q0 = 0;
    uint32_t q1 = UINT32_MAX;
    uint8_t p0 = 0;
    uint8_t p1 = 0;
    uint32_t meas = 0;
    double prob = 0.0;
};

// Components in execution order: all "before" components of an op precede its "after" components.
std::vector<NoiseComponent> enumerate_noise(const PhysicalCircuit &pc, const NoiseModel &noise);

// Splits each Pauli component into its X part and Z part, and with split_qubits also into
// single-qubit parts. Each part is an independent component with the original probability.
// Used for decoding models; the dropped correlations remain in the sampled noise.
std::vector<NoiseComponent> decompose_components(const std::vector<NoiseComponent> &comps, bool split_qubits = true);

constexpr size_t kLanes = 256;
constexpr size_t kLaneWords = kLanes / 64;

// Measurement flips of up to 256 shots. err = flips caused by errors, rnd = flips from
// re-randomising non-deterministic outcomes. Measured bit = reference ^ err ^ rnd.
struct ShotBatch {
    size_t lanes = 0;
    size_t num_meas = 0;
    std::vector<uint64_t> err;
    std::vector<uint64_t> rnd;

    bool err_bit(size_t m, size_t lane) const { return (err[m * kLaneWords + lane / 64] >> (lane % 64)) & 1; }
    bool rnd_bit(size_t m, size_t lane) const { return (rnd[m * kLaneWords + lane / 64] >> (lane % 64)) & 1; }
    const uint64_t *err_row(size_t m) const { return &err[m * kLaneWords]; }
    const uint64_t *rnd_row(size_t m) const { return &rnd[m * kLaneWords]; }
    bool measurement_bit(const Reference &ref, size_t m, size_t lane) const {
        return ref.bits.get(m) ^ err_bit(m, lane) ^ rnd_bit(m, lane);
    }
};

class FrameSampler {
public:
    FrameSampler(const PhysicalCircuit &pc, const NoiseModel &noise);
    FrameSampler(const PhysicalCircuit &pc, std::vector<NoiseComponent> comps);

    // Random batch; stream depends only on (seed, batch_index).
    ShotBatch sample(uint64_t seed, uint64_t batch_index, size_t lanes, bool randomize = true) const;
    // Deterministic batch with the given (component, lane) hits and no randomisation.
    ShotBatch inject(std::vector<std::pair<uint32_t, uint32_t>> hits, size_t lanes) const;

    const std::vector<NoiseComponent> &components() const { return comps_; }
    const PhysicalCircuit &circuit() const { return pc_; }

private:
    ShotBatch run(std::vector<std::pair<uint32_t, uint32_t>> &hits, size_t lanes, uint64_t seed, uint64_t batch,
                  bool randomize) const;

    const PhysicalCircuit &pc_;
    std::vector<NoiseComponent> comps_;
    // probability classes: distinct probability -> component indices
    std::vector<std::pair<double, std::vector<uint32_t>>> classes_;
};

// Measurement-flip signature of every component, in component order.
struct MeasurementSignature {
    std::vector<uint32_t> meas;
};
std::vector<MeasurementSignature> measurement_signatures(const FrameSampler &sampler);

struct ErrorMechanism {
    uint32_t id = 0;
    double probability = 0.0;
    std::vector<uint32_t> checks;
    std::vector<uint32_t> observables;
    // (logical instruction index, physical qubit) of the first merged component
    uint32_t time_index = 0;
    uint32_t site = 0;
    // every merged component flips exactly one stabilizer measurement
    bool timelike = false;
    // indices of merged components
    std::vector<uint32_t> components;
};

struct ErrorModel {
    size_t num_checks = 0;
    size_t num_observables = 0;
    std::vector<ErrorMechanism> mechanisms;
    std::string dump() const;
};

// Checks and observables are given as sets of measurement ordinals whose parity they are.
ErrorModel extract_error_model(const FrameSampler &sampler, const std::vector<std::vector<uint32_t>> &checks,
                               const std::vector<std::vector<uint32_t>> &observables, double prune_below = 0.0);

double compose_probability(double a, double b);

}  // namespace tcd
