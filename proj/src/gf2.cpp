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

#include "tcd/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tcd {

BitVector BitVector::from_string(const std::string &bits) {
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain 0 and 1");
        }
    }
    return v;
}

void BitVector::clear() { std::fill(w_.begin(), w_.end(), 0); }

void BitVector::resize(size_t n) {
    if (n < n_) {
        for (size_t i = n; i < n_; i++) {
            set(i, false);
        }
    }
    n_ = n;
    w_.resize((n + 63) / 64, 0);
}

static void check_same(size_t a, size_t b) {
    if (a != b) {
        throw std::invalid_argument("bit vector length mismatch");
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    check_same(n_, other.n_);
    for (size_t k = 0; k < w_.size(); k++) {
        w_[k] ^= other.w_[k];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    check_same(n_, other.n_);
    for (size_t k = 0; k < w_.size(); k++) {
        w_[k] &= other.w_[k];
    }
    return *this;
}

BitVector &BitVector::operator|=(const BitVector &other) {
    check_same(n_, other.n_);
    for (size_t k = 0; k < w_.size(); k++) {
        w_[k] |= other.w_[k];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

bool BitVector::operator<(const BitVector &other) const {
    if (n_ != other.n_) {
        return n_ < other.n_;
    }
    return w_ < other.w_;
}

size_t BitVector::popcount() const {
    size_t c = 0;
    for (uint64_t w : w_) {
        c += std::popcount(w);
    }
    return c;
}

bool BitVector::any() const {
    for (uint64_t w : w_) {
        if (w) {
            return true;
        }
    }
    return false;
}

bool BitVector::dot(const BitVector &other) const {
    check_same(n_, other.n_);
    uint64_t acc = 0;
    for (size_t k = 0; k < w_.size(); k++) {
        acc ^= w_[k] & other.w_[k];
    }
    return std::popcount(acc) & 1;
}

long BitVector::first_one() const {
    for (size_t k = 0; k < w_.size(); k++) {
        if (w_[k]) {
            return (long)(k * 64 + std::countr_zero(w_[k]));
        }
    }
    return -1;
}

std::vector<size_t> BitVector::ones() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < w_.size(); k++) {
        uint64_t w = w_[k];
        while (w) {
            out.push_back(k * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitVector::str() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

void BitMatrix::push_row(const BitVector &v) {
    if (rows_.empty() && cols_ == 0) {
        cols_ = v.size();
    }
    check_same(cols_, v.size());
    rows_.push_back(v);
}

BitVector BitMatrix::column(size_t c) const {
    BitVector v(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        v.set(r, rows_[r].get(c));
    }
    return v;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        for (size_t c : rows_[r].ones()) {
            t.set(c, r, true);
        }
    }
    return t;
}

BitVector BitMatrix::mul(const BitVector &x) const {
    BitVector y(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        y.set(r, rows_[r].dot(x));
    }
    return y;
}

RowReduction row_reduce(const BitMatrix &m) {
    RowReduction out;
    out.reduced = m;
    size_t n = m.num_rows();
    out.transform = BitMatrix(n, n);
    for (size_t r = 0; r < n; r++) {
        out.transform.set(r, r, true);
    }
    size_t rank = 0;
    for (size_t c = 0; c < m.num_cols() && rank < n; c++) {
        size_t p = rank;
        while (p < n && !out.reduced.get(p, c)) {
            p++;
        }
        if (p == n) {
            continue;
        }
        std::swap(out.reduced.row(p), out.reduced.row(rank));
        std::swap(out.transform.row(p), out.transform.row(rank));
        for (size_t r = 0; r < n; r++) {
            if (r != rank && out.reduced.get(r, c)) {
                out.reduced.row(r) ^= out.reduced.row(rank);
                out.transform.row(r) ^= out.transform.row(rank);
            }
        }
        out.pivot_cols.push_back(c);
        rank++;
    }
    out.rank = rank;
    return out;
}

SpanSolver::SpanSolver(const std::vector<BitVector> &vectors, size_t dim) : dim_(dim) {
    for (const auto &v : vectors) {
        add(v);
    }
}

void SpanSolver::reduce(BitVector &v, BitVector &combo) const {
    for (size_t k = 0; k < rows_.size(); k++) {
        if (v.get(pivots_[k])) {
            v ^= rows_[k];
            BitVector c = combos_[k];
            c.resize(combo.size());
            combo ^= c;
        }
    }
}

bool SpanSolver::add(const BitVector &v) {
    check_same(dim_, v.size());
    BitVector r = v;
    BitVector combo(num_added_ + 1);
    combo.set(num_added_, true);
    reduce(r, combo);
    num_added_++;
    long p = r.first_one();
    if (p < 0) {
        kernel_.push_back(combo);
        return false;
    }
    // keep rows fully reduced on their pivots
    for (size_t k = 0; k < rows_.size(); k++) {
        if (rows_[k].get((size_t)p)) {
            rows_[k] ^= r;
            combos_[k].resize(combo.size());
            combos_[k] ^= combo;
        }
    }
    rows_.push_back(r);
    combos_.push_back(combo);
    pivots_.push_back((size_t)p);
    return true;
}

bool SpanSolver::contains(const BitVector &v) const {
    check_same(dim_, v.size());
    BitVector r = v;
    for (size_t k = 0; k < rows_.size(); k++) {
        if (r.get(pivots_[k])) {
            r ^= rows_[k];
        }
    }
    return r.none();
}

std::optional<BitVector> SpanSolver::express(const BitVector &v) const {
    check_same(dim_, v.size());
    BitVector r = v;
    BitVector combo(num_added_);
    reduce(r, combo);
    if (r.any()) {
        return std::nullopt;
    }
    return combo;
}

bool in_span(const BitVector &v, const std::vector<BitVector> &basis) {
    return SpanSolver(basis, v.size()).contains(v);
}

namespace {

struct Particular {
    BitVector x;
    std::vector<BitVector> null_basis;
};

std::optional<Particular> solve_impl(const BitMatrix &a, const BitVector &b) {
    check_same(a.num_rows(), b.size());
    size_t n = a.num_cols();
    // augment [A | b]
    BitMatrix aug(a.num_rows(), n + 1);
    for (size_t r = 0; r < a.num_rows(); r++) {
        for (size_t c : a.row(r).ones()) {
            aug.set(r, c, true);
        }
        aug.set(r, n, b.get(r));
    }
    RowReduction rr = row_reduce(aug);
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == n) {
        return std::nullopt;
    }
    Particular out{BitVector(n), {}};
    std::vector<bool> is_pivot(n, false);
    for (size_t k = 0; k < rr.rank; k++) {
        size_t c = rr.pivot_cols[k];
        is_pivot[c] = true;
        out.x.set(c, rr.reduced.get(k, n));
    }
    for (size_t f = 0; f < n; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector z(n);
        z.set(f, true);
        for (size_t k = 0; k < rr.rank; k++) {
            if (rr.reduced.get(k, f)) {
                z.set(rr.pivot_cols[k], true);
            }
        }
        out.null_basis.push_back(z);
    }
    return out;
}

}  // namespace

std::optional<BitVector> solve(const BitMatrix &a, const BitVector &b) {
    auto p = solve_impl(a, b);
    if (!p) {
        return std::nullopt;
    }
    return p->x;
}

namespace {

// True when a has the set bit at the highest index where a and b differ.
bool later_support(const BitVector &a, const BitVector &b) {
    auto wa = a.words(), wb = b.words();
    for (size_t i = wa.size(); i-- > 0;) {
        if (wa[i] != wb[i]) {
            return (wa[i] ^ wb[i]) & wa[i] & (uint64_t{1} << (63 - std::countl_zero(wa[i] ^ wb[i])));
        }
    }
    return false;
}

}  // namespace

std::optional<BitVector> solve_sparsest(const BitMatrix &a, const BitVector &b, size_t max_nullity) {
    auto p = solve_impl(a, b);
    if (!p) {
        return std::nullopt;
    }
    size_t k = p->null_basis.size();
    if (k == 0 || k > max_nullity) {
        return p->x;
    }
    BitVector best = p->x;
    size_t best_w = best.popcount();
    // Gray code walk over the null space.
    BitVector cur = p->x;
    for (uint64_t i = 1; i < (uint64_t{1} << k); i++) {
        cur ^= p->null_basis[std::countr_zero(i)];
        size_t w = cur.popcount();
        if (w < best_w || (w == best_w && later_support(cur, best))) {
            best_w = w;
            best = cur;
        }
    }
    return best;
}

}  // namespace tcd
