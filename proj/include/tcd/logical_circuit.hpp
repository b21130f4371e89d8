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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tcd/pauli.hpp"

namespace tcd {

enum class InstructionKind : uint8_t {
    InitZ,
    InitX,
    InitMagic,
    TransversalCNOT,
    FoldH,
    FoldS,
    FoldSDagger,
    PauliGate,
    SERound,
    MeasureZ,
    MeasureX,
    MeasurePauli,
    FeedForward,
};

const char *instruction_name(InstructionKind k);

struct LogicalInstruction {
    InstructionKind kind = InstructionKind::SERound;
    // CNOT targets are (control, target) pairs. Empty SERound targets mean every live qubit.
    std::vector<uint32_t> targets;
    // PauliGate, or a Pauli feed-forward gate: 'X', 'Y' or 'Z'.
    char pauli = 0;
    // MeasurePauli only.
    PauliString product;
    // FeedForward only: the gate applied when the referenced measurement reads 1 (-1 eigenvalue).
    InstructionKind ff_kind = InstructionKind::PauliGate;
    std::optional<size_t> condition;
    bool noiseless = false;
    size_t time_index = 0;

    bool is_gate() const;
    bool is_init() const;
    bool is_measurement() const;
    bool is_pauli_feed_forward() const { return kind == InstructionKind::FeedForward && ff_kind == InstructionKind::PauliGate; }
    bool operator==(const LogicalInstruction &o) const;
};

class LogicalCircuit {
   public:
    LogicalCircuit() = default;
    explicit LogicalCircuit(size_t n) : num_qubits_(n) {}

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<LogicalInstruction> &instructions() const { return instructions_; }
    size_t size() const { return instructions_.size(); }
    const LogicalInstruction &operator[](size_t i) const { return instructions_[i]; }

    // Instruction index of each measurement ordinal.
    const std::vector<size_t> &measurement_instructions() const { return meas_instr_; }
    // Qubit measured by each ordinal (num_qubits() for MeasurePauli).
    const std::vector<uint32_t> &measurement_qubits() const { return meas_qubit_; }
    size_t num_measurements() const { return meas_instr_.size(); }
    // Measured logical operator of a measurement ordinal.
    PauliString measured_operator(size_t ordinal) const;
    // First measurement ordinal produced by instruction i.
    size_t first_measurement_of(size_t instr) const;

    size_t append(LogicalInstruction ins);
    void init_z(std::vector<uint32_t> q);
    void init_x(std::vector<uint32_t> q);
    void init_magic(std::vector<uint32_t> q);
    void cnot(std::vector<uint32_t> pairs);
    void fold_h(std::vector<uint32_t> q);
    void fold_s(std::vector<uint32_t> q);
    void fold_s_dagger(std::vector<uint32_t> q);
    void pauli(char p, std::vector<uint32_t> q);
    void se(std::vector<uint32_t> q = {}, bool noiseless = false);
    void measure_z(std::vector<uint32_t> q);
    void measure_x(std::vector<uint32_t> q);
    void measure_pauli(const PauliString &p);
    void feed_forward(InstructionKind gate, std::vector<uint32_t> q, size_t condition, char pauli = 0);

    std::string to_text() const;
    static LogicalCircuit from_text(const std::string &text);

    bool operator==(const LogicalCircuit &o) const {
        return num_qubits_ == o.num_qubits_ && instructions_ == o.instructions_;
    }

   private:
    size_t num_qubits_ = 0;
    std::vector<LogicalInstruction> instructions_;
    std::vector<size_t> meas_instr_;
    std::vector<uint32_t> meas_qubit_;
};

enum class ValidationCode : uint8_t {
    TargetOutOfRange,
    UseBeforeInit,
    DoubleInit,
    UseAfterMeasure,
    MeasureTwice,
    DanglingCondition,
    DuplicateTarget,
    MissingSERound,
    GateAfterMeasurePauli,
    BadFeedForward,
    BadProduct,
};

struct ValidationError {
    ValidationCode code;
    size_t instruction;
    std::string message;
};

struct ValidationOptions {
    // SE rounds required on a qubit between consecutive transversal gates touching it.
    size_t min_se_between_gates = 1;
    bool allow_unmeasured = true;
};

std::vector<ValidationError> validate_circuit(const LogicalCircuit &c, const ValidationOptions &opt = {});

// Operator on the logical qubits just after each instruction, walking back from a measurement.
struct PropagationPath {
    // ops[t] is the instantaneous operator after instruction t, for t < from_time.
    std::vector<PauliString> ops;
    size_t from_time = 0;
    // Initialization support: x[i] / z[i] components found at qubit i's init.
    PauliString init_support;
};

// Non-Pauli feed-forward must be resolved (see resolve_branches) before calling.
PropagationPath back_propagate(const LogicalCircuit &c, const PauliString &product, size_t from_time);

// Conjugates p forward through instructions [from, to).
PauliString forward_propagate(const LogicalCircuit &c, PauliString p, size_t from, size_t to);

// Replaces each non-Pauli FeedForward with its gate when branch bit is 1, drops it otherwise.
// branch[k] is the bit of the k-th non-Pauli FeedForward in program order.
LogicalCircuit resolve_branches(const LogicalCircuit &c, const std::vector<bool> &branch);
size_t count_clifford_feed_forward(const LogicalCircuit &c);

struct RandomCliffordOptions {
    size_t num_qubits = 10;
    size_t depth = 14;
    // Final measurement as noiseless MPPs of the forward-propagated init stabilizers.
    bool final_products = true;
};
LogicalCircuit build_random_clifford(uint64_t seed, const RandomCliffordOptions &opt = {});

LogicalCircuit build_ghz_comparison();

struct DistillationLayout {
    std::vector<uint32_t> code_qubits;           // 4
    uint32_t output = 0;
    std::vector<uint32_t> odd_ancillas;          // stage 1
    std::vector<uint32_t> even_ancillas;         // stage 2
    // Measurement ordinals of each decoding stage.
    std::vector<std::vector<size_t>> stage_measurements;
};
LogicalCircuit build_distillation(DistillationLayout *layout = nullptr);

LogicalCircuit build_memory(size_t rounds);

// Both feed-forward branches resolved: branch_bit 1 means the first measurement read -1 and S was applied.
LogicalCircuit build_small_angle_example(bool branch_bit);
// Unresolved form with the Clifford feed-forward kept in the IR.
LogicalCircuit build_small_angle_example_ir();

}  // namespace tcd
