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
#include <vector>

#include "tcd/gf2.hpp"
#include "tcd/surface_code.hpp"

namespace tcd {

// Stabilizer tableau with destabilizers, tracking signs.
class Tableau {
   public:
    explicit Tableau(size_t n);

    size_t num_qubits() const { return n_; }
    void h(uint32_t q);
    void s(uint32_t q);
    void s_dag(uint32_t q);
    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);
    void cx(uint32_t c, uint32_t t);
    void cz(uint32_t a, uint32_t b);

    // Measures a Hermitian Pauli product (sign +). Returns the outcome bit (1 = -1 eigenvalue).
    // forced chooses the outcome when it is random; a forced deterministic mismatch throws.
    bool measure(const SparsePauli &p, std::mt19937_64 &rng, bool *deterministic = nullptr,
                 std::optional<bool> forced = std::nullopt);
    bool measure_z(uint32_t q, std::mt19937_64 &rng, bool *deterministic = nullptr);
    bool measure_x(uint32_t q, std::mt19937_64 &rng, bool *deterministic = nullptr);
    void reset_z(uint32_t q, std::mt19937_64 &rng);
    void reset_x(uint32_t q, std::mt19937_64 &rng);
    // Expectation sign of a Pauli product: +1, -1, or 0 when not in the stabilizer group.
    int expectation(const SparsePauli &p) const;

   private:
    bool gx(size_t row, uint32_t q) const { return (xs_[row * w_ + (q >> 6)] >> (q & 63)) & 1; }
    bool gz(size_t row, uint32_t q) const { return (zs_[row * w_ + (q >> 6)] >> (q & 63)) & 1; }
    bool anticommutes(size_t row, const SparsePauli &p) const;
    // row dst <- dst * src with phase
    void rowmul(size_t dst, size_t src);
    void rowmul_into(uint64_t *dx, uint64_t *dz, uint8_t *dr, const uint64_t *sx, const uint64_t *sz, uint8_t sr) const;

    size_t n_;
    size_t w_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> r_;
};

struct Reference {
    BitVector bits;
    // 1 where the measurement was random in the reference run.
    BitVector random;
};

Reference compute_reference(const PhysicalCircuit &pc, uint64_t seed = 0);

}  // namespace tcd
