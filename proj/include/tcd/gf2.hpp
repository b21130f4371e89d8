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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcd {

class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVector from_string(const std::string &bits);

    size_t size() const { return n_; }
    size_t num_words() const { return w_.size(); }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            w_[i >> 6] |= m;
        } else {
            w_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
    void clear();
    void resize(size_t n);

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector &operator|=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    bool operator==(const BitVector &other) const { return n_ == other.n_ && w_ == other.w_; }
    bool operator<(const BitVector &other) const;

    size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }
    bool dot(const BitVector &other) const;
    // -1 if empty.
    long first_one() const;
    std::vector<size_t> ones() const;
    std::string str() const;

    std::span<const uint64_t> words() const { return w_; }
    std::span<uint64_t> words() { return w_; }

   private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    size_t num_rows() const { return rows_.size(); }
    size_t num_cols() const { return cols_; }
    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }
    BitVector &row(size_t r) { return rows_[r]; }
    const BitVector &row(size_t r) const { return rows_[r]; }
    void push_row(const BitVector &v);
    BitVector column(size_t c) const;
    BitMatrix transposed() const;
    BitVector mul(const BitVector &x) const;
    bool operator==(const BitMatrix &other) const { return cols_ == other.cols_ && rows_ == other.rows_; }

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

struct RowReduction {
    BitMatrix reduced;
    size_t rank = 0;
    std::vector<size_t> pivot_cols;
    // transform * input == reduced
    BitMatrix transform;
};

// Gauss-Jordan elimination; the pivot in each column is the first remaining row with a 1.
RowReduction row_reduce(const BitMatrix &m);

// Incremental span membership over a fixed list of vectors; remembers which
// original vectors combine into each reduced row.
class SpanSolver {
   public:
    SpanSolver() = default;
    explicit SpanSolver(size_t dim) : dim_(dim) {}
    SpanSolver(const std::vector<BitVector> &vectors, size_t dim);

    // Returns true if v was independent of what was already added.
    bool add(const BitVector &v);
    size_t num_added() const { return num_added_; }
    size_t rank() const { return rows_.size(); }
    bool contains(const BitVector &v) const;
    // Coefficients over the added vectors, or nullopt when v is outside the span.
    std::optional<BitVector> express(const BitVector &v) const;
    // Combinations of added vectors that sum to zero (one per dependent add).
    const std::vector<BitVector> &kernel() const { return kernel_; }

   private:
    void reduce(BitVector &v, BitVector &combo) const;

    size_t dim_ = 0;
    size_t num_added_ = 0;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combos_;
    std::vector<size_t> pivots_;
    std::vector<BitVector> kernel_;
};

bool in_span(const BitVector &v, const std::vector<BitVector> &basis);

// Solves A x = b. Returns nullopt if inconsistent.
std::optional<BitVector> solve(const BitMatrix &a, const BitVector &b);

// Minimum-weight solution of A x = b by null-space enumeration when the
// nullity is at most max_nullity; otherwise the pivot solution.
// Ties prefer support at higher indices.
std::optional<BitVector> solve_sparsest(const BitMatrix &a, const BitVector &b, size_t max_nullity = 12);

}  // namespace tcd
