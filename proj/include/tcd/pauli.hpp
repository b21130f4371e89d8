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

#include "tcd/gf2.hpp"

namespace tcd {

// Phase-free Pauli operator on n qubits; x and z both set means Y.
struct PauliString {
    BitVector x;
    BitVector z;

    PauliString() = default;
    explicit PauliString(size_t n) : x(n), z(n) {}
    // "XIZY" style, one character per qubit.
    static PauliString from_string(const std::string &s);
    // Sparse form "X0*Z3*Y5" on n qubits.
    static PauliString from_sparse(const std::string &s, size_t n);

    size_t num_qubits() const { return x.size(); }
    char get(size_t q) const;
    void set(size_t q, char p);
    size_t weight() const;
    bool is_identity() const { return x.none() && z.none(); }
    PauliString &operator*=(const PauliString &other);
    bool operator==(const PauliString &other) const { return x == other.x && z == other.z; }
    bool operator<(const PauliString &other) const {
        return x < other.x || (x == other.x && z < other.z);
    }
    std::string str() const;
    std::string sparse_str() const;
};

// True iff a and b commute.
bool symplectic_commutes(const PauliString &a, const PauliString &b);

enum class GateKind : uint8_t { X, Y, Z, H, S, S_DAG, CNOT, CZ, PERMUTE };

enum class Direction : uint8_t { FORWARD, BACKWARD };

// Conjugates p through one gate. Two-qubit gates take support pairs
// (control, target); single-qubit gates apply to every support qubit.
// PERMUTE sends qubit support[2k] to support[2k+1] when going forward.
void conjugate_through_gate(PauliString &p, GateKind gate, const std::vector<uint32_t> &support, Direction dir);

}  // namespace tcd
