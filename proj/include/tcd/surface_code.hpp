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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcd/logical_circuit.hpp"

namespace tcd {

enum class LayoutKind : uint8_t { Unrotated, Rotated };

struct Coord {
    int r = 0;
    int c = 0;
    bool operator==(const Coord &o) const { return r == o.r && c == o.c; }
};

struct StabilizerGeometry {
    Coord ancilla;
    // Data position touched at each of the four schedule steps, -1 when absent.
    std::array<int32_t, 4> steps{-1, -1, -1, -1};
    std::vector<uint32_t> support() const;
};

struct CodeLayout {
    LayoutKind kind = LayoutKind::Unrotated;
    size_t d = 0;
    std::vector<Coord> data;
    std::vector<StabilizerGeometry> x_stabs;
    std::vector<StabilizerGeometry> z_stabs;
    std::vector<uint32_t> logical_x;
    std::vector<uint32_t> logical_z;
    uint32_t logical_overlap = 0;
    // Unrotated only: reflection about the diagonal.
    std::vector<uint32_t> transpose_data;
    std::vector<uint32_t> transpose_x_to_z;
    std::vector<uint32_t> transpose_z_to_x;
    std::vector<uint32_t> diagonal;

    size_t num_data() const { return data.size(); }
    const std::vector<StabilizerGeometry> &stabs(char basis) const { return basis == 'X' ? x_stabs : z_stabs; }
    bool supports_fold() const { return kind == LayoutKind::Unrotated; }
    std::string to_json() const;
};

CodeLayout make_layout(LayoutKind kind, size_t d);

enum class OpKind : uint8_t {
    R,
    RX,
    H,
    S,
    S_DAG,
    CX,
    CZ,
    M,
    MX,
    MPP,     // noiseless Pauli product measurement
    PREP,    // noiseless stabilizer state preparation: reset targets, then force each product to +1
    PAULI,   // noiseless Pauli applied to the reference only
    IDLE,    // depolarizing idle location
    INJECT,  // injected error location on magic-state data
    SE_DATA, // phenomenological data-noise location at the start of an SE round
};

const char *op_name(OpKind k);

struct SparsePauli {
    std::vector<uint32_t> qubits;
    std::vector<char> paulis;
    void push(uint32_t q, char p) {
        qubits.push_back(q);
        paulis.push_back(p);
    }
};

struct PhysOp {
    OpKind kind = OpKind::R;
    bool noiseless = false;
    std::vector<uint32_t> targets;
    // MPP / PREP / PAULI: range into PhysicalCircuit::products.
    uint32_t product_begin = 0;
    uint32_t product_count = 0;
    uint32_t first_measurement = 0;
    uint32_t logical_instr = 0;
};

enum class MeasKind : uint8_t { Stabilizer, Data, Product };

struct MeasurementTag {
    MeasKind kind = MeasKind::Stabilizer;
    uint32_t block = 0;
    char basis = 'Z';
    // stabilizer index or data position
    uint32_t index = 0;
    uint32_t logical_instr = 0;
    bool noiseless = false;
};

struct SERecord {
    uint32_t logical_instr = 0;
    bool noiseless = false;
    std::vector<uint32_t> blocks;
    // [block slot][stab index] -> measurement ordinal
    std::vector<std::vector<uint32_t>> x_meas;
    std::vector<std::vector<uint32_t>> z_meas;
};

struct DataMeasRecord {
    uint32_t logical_instr = 0;
    uint32_t block = 0;
    char basis = 'Z';
    std::vector<uint32_t> ordinal_by_position;
};

struct CompileOptions {
    // Depolarizing idle location on the data before every SE round (memory baseline).
    bool idle_before_se = false;
};

struct PhysicalCircuit {
    CodeLayout layout;
    size_t num_blocks = 0;
    size_t qubits_per_block = 0;
    size_t num_qubits = 0;
    std::vector<PhysOp> ops;
    std::vector<SparsePauli> products;
    std::vector<MeasurementTag> meas;
    // [begin, end) op span of each logical instruction
    std::vector<std::pair<size_t, size_t>> instr_ops;
    // position -> physical qubit, per block, after each logical instruction
    std::vector<std::vector<std::vector<uint32_t>>> data_map_after;
    std::vector<SERecord> se_records;
    std::vector<DataMeasRecord> data_meas;
    // raw measurement ordinals whose XOR is each logical measurement outcome
    std::vector<std::vector<uint32_t>> logical_meas;
    LogicalCircuit logical;

    size_t num_measurements() const { return meas.size(); }
    uint32_t x_ancilla(uint32_t block, uint32_t i) const {
        return (uint32_t)(block * qubits_per_block + layout.num_data() + i);
    }
    uint32_t z_ancilla(uint32_t block, uint32_t i) const {
        return (uint32_t)(block * qubits_per_block + layout.num_data() + layout.x_stabs.size() + i);
    }
    // Physical stabilizer operator of a block at a point in the program.
    SparsePauli stabilizer(uint32_t block, char basis, uint32_t index, const std::vector<uint32_t> &map) const;
    // Physical logical representative ('X', 'Y' or 'Z').
    SparsePauli logical_rep(char p, const std::vector<uint32_t> &map) const;
};

PhysicalCircuit compile_circuit(const LogicalCircuit &c, const CodeLayout &layout, const CompileOptions &opt = {});

}  // namespace tcd
