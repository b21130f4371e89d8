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
#include <random>
#include <string>
#include <vector>

#include "tcd/gf2.hpp"
#include "tcd/logical_circuit.hpp"

namespace tcd {

// Columns are 2n-bit init supports: bits [0, n) are X components, [n, 2n) Z components.
struct BackPropMatrix {
    size_t n = 0;
    std::vector<BitVector> columns;
    std::vector<PropagationPath> paths;
    // instruction index of each measurement
    std::vector<size_t> times;
    BitVector mul(const std::vector<uint32_t> &support) const;
};

// Rows are unit vectors e_{x,i} / e_{z,i}; `allowed` is their union.
struct InitBasisSet {
    size_t n = 0;
    BitVector allowed;
    std::vector<BitVector> rows() const;
};

InitBasisSet init_basis(const LogicalCircuit &c);

enum class ColumnTag : uint8_t { Reliable, Random };
enum class SelectionRule : uint8_t { Sparsest, FirstFound };

struct ReliableBasis {
    // column j: measurement ordinals (ascending, ending in j) whose outcome parity is the product
    std::vector<std::vector<uint32_t>> columns;
    std::vector<ColumnTag> tags;
    size_t size() const { return columns.size(); }
    BitMatrix matrix() const;
};

bool is_reliable(const std::vector<uint32_t> &v, const BackPropMatrix &m, const InitBasisSet &b);

class ReliableTracker {
public:
    explicit ReliableTracker(const LogicalCircuit &c, SelectionRule rule = SelectionRule::Sparsest);

    // Processes the next measurement ordinal and returns its column tag.
    ColumnTag extend();
    void extend_all();

    const BackPropMatrix &matrix() const { return m_; }
    const InitBasisSet &init() const { return b_; }
    const ReliableBasis &basis() const { return v_; }
    std::string to_json() const;

private:
    const LogicalCircuit &c_;
    SelectionRule rule_;
    BackPropMatrix m_;
    InitBasisSet b_;
    ReliableBasis v_;
};

ReliableBasis classify_measurements(const LogicalCircuit &c, SelectionRule rule = SelectionRule::Sparsest);

// Individual outcome bits from per-column values: x_j = y_j ^ XOR of x_i over the rest of column j.
// Random columns take values from `rng` when `values` does not provide them.
std::vector<bool> assign_measurements(const ReliableBasis &v, const std::vector<int> &values, std::mt19937_64 &rng);

// Instantaneous operator of a measurement-set product after each instruction t < end.
struct ProductPath {
    std::vector<PauliString> ops;
    size_t end = 0;
};
ProductPath product_path(const BackPropMatrix &m, const std::vector<uint32_t> &support, size_t num_qubits);

}  // namespace tcd
