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

#include <gtest/gtest.h>

#include <random>

using namespace tcd;

static BitVector random_vec(size_t n, std::mt19937_64 &rng, double p = 0.5) {
    std::bernoulli_distribution b(p);
    BitVector v(n);
    for (size_t i = 0; i < n; i++) {
        v.set(i, b(rng));
    }
    return v;
}

TEST(gf2, bitvector_basics) {
    BitVector v = BitVector::from_string("1011000000000000000000000000000000000000000000000000000000000000101");
    EXPECT_EQ(v.size(), 67u);
    EXPECT_EQ(v.popcount(), 5u);
    EXPECT_EQ(v.first_one(), 0);
    EXPECT_EQ(v.ones(), (std::vector<size_t>{0, 2, 3, 64, 66}));
    BitVector w(67);
    w.set(66, true);
    v ^= w;
    EXPECT_EQ(v.popcount(), 4u);
    EXPECT_THROW(v ^= BitVector(3), std::invalid_argument);
    EXPECT_EQ(BitVector::from_string("0110").str(), "0110");
}

TEST(gf2, row_reduce_rank_and_transform) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        size_t r = 1 + rng() % 12, c = 1 + rng() % 80;
        BitMatrix m(r, c);
        for (size_t i = 0; i < r; i++) {
            m.row(i) = random_vec(c, rng, 0.3);
        }
        RowReduction rr = row_reduce(m);
        // transform * m == reduced
        for (size_t i = 0; i < r; i++) {
            BitVector acc(c);
            for (size_t k : rr.transform.row(i).ones()) {
                acc ^= m.row(k);
            }
            EXPECT_EQ(acc, rr.reduced.row(i));
        }
        for (size_t i = rr.rank; i < r; i++) {
            EXPECT_TRUE(rr.reduced.row(i).none());
        }
        // rank by brute force over all subsets for small row counts
        if (r <= 10) {
            size_t distinct = 0;
            std::vector<BitVector> seen;
            for (uint32_t s = 0; s < (1u << r); s++) {
                BitVector acc(c);
                for (size_t i = 0; i < r; i++) {
                    if (s >> i & 1) {
                        acc ^= m.row(i);
                    }
                }
                if (std::find(seen.begin(), seen.end(), acc) == seen.end()) {
                    seen.push_back(acc);
                    distinct++;
                }
            }
            EXPECT_EQ(distinct, size_t{1} << rr.rank);
        }
    }
}

TEST(gf2, span_solver_matches_subset_enumeration) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; trial++) {
        size_t k = 1 + rng() % 7, n = 1 + rng() % 9;
        std::vector<BitVector> basis;
        for (size_t i = 0; i < k; i++) {
            basis.push_back(random_vec(n, rng, 0.4));
        }
        SpanSolver s(basis, n);
        BitVector target = random_vec(n, rng);
        bool found = false;
        for (uint32_t m = 0; m < (1u << k); m++) {
            BitVector acc(n);
            for (size_t i = 0; i < k; i++) {
                if (m >> i & 1) {
                    acc ^= basis[i];
                }
            }
            if (acc == target) {
                found = true;
            }
        }
        EXPECT_EQ(s.contains(target), found);
        auto e = s.express(target);
        ASSERT_EQ(e.has_value(), found);
        if (e) {
            BitVector acc(n);
            for (size_t i : e->ones()) {
                acc ^= basis[i];
            }
            EXPECT_EQ(acc, target);
        }
        for (const auto &kv : s.kernel()) {
            BitVector acc(n);
            for (size_t i : kv.ones()) {
                acc ^= basis[i];
            }
            EXPECT_TRUE(acc.none());
            EXPECT_TRUE(kv.any());
        }
        EXPECT_EQ(s.kernel().size() + s.rank(), k);
    }
}

TEST(gf2, solve_sparsest_is_minimum_weight) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; trial++) {
        size_t r = 1 + rng() % 5, c = 1 + rng() % 9;
        BitMatrix a(r, c);
        for (size_t i = 0; i < r; i++) {
            a.row(i) = random_vec(c, rng, 0.4);
        }
        BitVector b = random_vec(r, rng);
        size_t best = SIZE_MAX;
        for (uint32_t m = 0; m < (1u << c); m++) {
            BitVector x(c);
            for (size_t i = 0; i < c; i++) {
                x.set(i, m >> i & 1);
            }
            if (a.mul(x) == b) {
                best = std::min(best, x.popcount());
            }
        }
        auto s = solve_sparsest(a, b);
        auto p = solve(a, b);
        ASSERT_EQ(s.has_value(), best != SIZE_MAX);
        ASSERT_EQ(p.has_value(), best != SIZE_MAX);
        if (s) {
            EXPECT_EQ(a.mul(*s), b);
            EXPECT_EQ(a.mul(*p), b);
            EXPECT_EQ(s->popcount(), best);
        }
    }
}

TEST(gf2, row_reduce_examples_and_idempotence) {
    BitMatrix id(3, 3);
    for (size_t i = 0; i < 3; i++) id.set(i, i, true);
    auto r = row_reduce(id);
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.pivot_cols, (std::vector<size_t>{0, 1, 2}));
    EXPECT_EQ(row_reduce(BitMatrix(3, 4)).rank, 0u);
    BitMatrix ones(2, 2);
    for (size_t i = 0; i < 2; i++)
        for (size_t j = 0; j < 2; j++) ones.set(i, j, true);
    EXPECT_EQ(row_reduce(ones).rank, 1u);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; t++) {
        BitMatrix m(6, 20);
        for (size_t i = 0; i < 6; i++) m.row(i) = random_vec(20, rng, 0.3);
        auto once = row_reduce(m);
        auto twice = row_reduce(once.reduced);
        EXPECT_EQ(once.reduced, twice.reduced);
        BitVector v = random_vec(20, rng);
        std::vector<BitVector> a, b;
        for (size_t i = 0; i < 6; i++) {
            a.push_back(m.row(i));
            b.push_back(once.reduced.row(i));
        }
        EXPECT_EQ(in_span(v, a), in_span(v, b));
    }
    EXPECT_TRUE(in_span(BitVector(2), {}));
    EXPECT_TRUE(in_span(BitVector::from_string("10"), {BitVector::from_string("11"), BitVector::from_string("01")}));
    EXPECT_FALSE(in_span(BitVector::from_string("001"), {BitVector::from_string("100"), BitVector::from_string("010")}));
}
