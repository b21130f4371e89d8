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

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace tcd {

BitVector BackPropMatrix::mul(const std::vector<uint32_t> &support) const {
    BitVector out(2 * n);
    for (uint32_t j : support) out ^= columns.at(j);
    return out;
}

std::vector<BitVector> InitBasisSet::rows() const {
    std::vector<BitVector> out;
    for (size_t i : allowed.ones()) {
        BitVector e(2 * n);
        e.set(i, true);
        out.push_back(e);
    }
    return out;
}

InitBasisSet init_basis(const LogicalCircuit &c) {
    InitBasisSet b;
    b.n = c.num_qubits();
    b.allowed = BitVector(2 * b.n);
    for (const auto &ins : c.instructions()) {
        for (uint32_t q : ins.targets) {
            switch (ins.kind) {
                case InstructionKind::InitZ: b.allowed.set(b.n + q, true); break;
                case InstructionKind::InitX: b.allowed.set(q, true); break;
                case InstructionKind::InitMagic:
                    b.allowed.set(q, true);
                    b.allowed.set(b.n + q, true);
                    break;
                default: break;
            }
        }
    }
    return b;
}

BitMatrix ReliableBasis::matrix() const {
    BitMatrix m(size(), size());
    for (size_t j = 0; j < size(); j++) {
        for (uint32_t i : columns[j]) m.set(i, j, true);
    }
    return m;
}

bool is_reliable(const std::vector<uint32_t> &v, const BackPropMatrix &m, const InitBasisSet &b) {
    return in_span(m.mul(v), b.rows());
}

ReliableTracker::ReliableTracker(const LogicalCircuit &c, SelectionRule rule) : c_(c), rule_(rule) {
    m_.n = c.num_qubits();
    b_ = init_basis(c);
}

ColumnTag ReliableTracker::extend() {
    const uint32_t j = (uint32_t)v_.size();
    if (j >= c_.num_measurements()) {
        throw std::out_of_range("extend: no more measurements");
    }
    const size_t n = m_.n;
    size_t t = c_.measurement_instructions()[j];
    PropagationPath path = back_propagate(c_, c_.measured_operator(j), t);
    BitVector col(2 * n);
    for (size_t q = 0; q < n; q++) {
        col.set(q, path.init_support.x.get(q));
        col.set(n + q, path.init_support.z.get(q));
    }
    m_.columns.push_back(col);
    m_.paths.push_back(std::move(path));
    m_.times.push_back(t);

    // Solve M_U x = M_U e_j over the earlier columns, U = coordinates outside span B.
    std::vector<size_t> unreliable;
    for (size_t i = 0; i < 2 * n; i++) {
        if (!b_.allowed.get(i)) unreliable.push_back(i);
    }
    BitMatrix a(unreliable.size(), j);
    BitVector rhs(unreliable.size());
    for (size_t r = 0; r < unreliable.size(); r++) {
        for (uint32_t k = 0; k < j; k++) a.set(r, k, m_.columns[k].get(unreliable[r]));
        rhs.set(r, col.get(unreliable[r]));
    }
    std::optional<BitVector> x;
    if (rhs.none()) {
        x = BitVector(j);
    } else if (j > 0) {
        x = rule_ == SelectionRule::Sparsest ? solve_sparsest(a, rhs) : solve(a, rhs);
    }
    std::vector<uint32_t> support;
    ColumnTag tag = ColumnTag::Random;
    if (x) {
        for (size_t k : x->ones()) support.push_back((uint32_t)k);
        tag = ColumnTag::Reliable;
    }
    support.push_back(j);
    v_.columns.push_back(std::move(support));
    v_.tags.push_back(tag);
    return tag;
}

void ReliableTracker::extend_all() {
    while (v_.size() < c_.num_measurements()) extend();
}

std::string ReliableTracker::to_json() const {
    nlohmann::json j;
    j["num_qubits"] = m_.n;
    j["init_allowed"] = b_.allowed.str();
    auto &cols = j["columns"] = nlohmann::json::array();
    for (size_t k = 0; k < v_.size(); k++) {
        cols.push_back({{"support", v_.columns[k]},
                        {"tag", v_.tags[k] == ColumnTag::Reliable ? "reliable" : "random"},
                        {"init_support", m_.columns[k].str()},
                        {"time", m_.times[k]}});
    }
    return j.dump(2);
}

ReliableBasis classify_measurements(const LogicalCircuit &c, SelectionRule rule) {
    ReliableTracker t(c, rule);
    t.extend_all();
    return t.basis();
}

std::vector<bool> assign_measurements(const ReliableBasis &v, const std::vector<int> &values, std::mt19937_64 &rng) {
    std::vector<bool> x(v.size());
    for (size_t j = 0; j < v.size(); j++) {
        int y = j < values.size() ? values[j] : -1;
        if (y < 0) {
            if (v.tags[j] == ColumnTag::Reliable) {
                throw std::invalid_argument("assign_measurements: missing value for a reliable column");
            }
            y = (int)(rng() & 1);
        }
        bool b = y & 1;
        for (uint32_t i : v.columns[j]) {
            if (i != j) b ^= x[i];
        }
        x[j] = b;
    }
    return x;
}

ProductPath product_path(const BackPropMatrix &m, const std::vector<uint32_t> &support, size_t num_qubits) {
    ProductPath p;
    for (uint32_t j : support) p.end = std::max(p.end, m.times.at(j));
    p.ops.assign(p.end, PauliString(num_qubits));
    for (uint32_t j : support) {
        const auto &ops = m.paths[j].ops;
        for (size_t t = 0; t < ops.size(); t++) p.ops[t] *= ops[t];
    }
    return p;
}

}  // namespace tcd
