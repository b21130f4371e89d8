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

#include "tcd/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace tcd {

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

bool active(const std::vector<bool> *mask, uint32_t e) { return mask == nullptr || (*mask)[e]; }

void check_defects(const MatchingGraph &g, const std::vector<uint32_t> &defects) {
    std::vector<bool> seen(g.num_nodes, false);
    for (uint32_t d : defects) {
        if (d >= g.num_nodes) throw std::out_of_range("defect out of range");
        if (seen[d]) throw std::invalid_argument("duplicate defect");
        seen[d] = true;
    }
}

void check_mask(const MatchingGraph &g, const std::vector<bool> *mask) {
    if (mask != nullptr && mask->size() != g.edges.size()) throw std::invalid_argument("edge mask size mismatch");
}

using Item = std::pair<int64_t, uint32_t>;
using MinQueue = std::priority_queue<Item, std::vector<Item>, std::greater<>>;

}  // namespace

int64_t integer_weight(double w) { return std::max<int64_t>(0, std::llround(w * kWeightScale)); }

void MatchingGraph::add_edge(uint32_t u, uint32_t v, int64_t w, bool observable) {
    if (u >= num_nodes || (v != kBoundary && v >= num_nodes) || u == v) {
        throw std::invalid_argument("MatchingGraph: bad edge");
    }
    if (w < 0) throw std::invalid_argument("MatchingGraph: negative weight");
    if (adj.size() < num_nodes) adj.resize(num_nodes);
    uint32_t id = (uint32_t)edges.size();
    edges.push_back({u, v, w, observable});
    adj[u].push_back(id);
    if (v != kBoundary) adj[v].push_back(id);
}

MatchingGraph MatchingGraph::from_subgraph(const DecodingSubgraph &sg) {
    MatchingGraph g;
    g.num_nodes = sg.checks.size();
    g.adj.resize(g.num_nodes);
    for (const auto &e : sg.edges) {
        uint32_t v = e.nodes.size() == 2 ? e.nodes[1] : kBoundary;
        g.add_edge(e.nodes[0], v, integer_weight(e.weight), e.observable);
    }
    return g;
}

Matcher::Matcher(const MatchingGraph &g, const MatcherOptions &opt) : g_(g) {
    g_.adj.resize(g_.num_nodes);
    boundary_tree(nullptr, boundary_);
    const size_t n = g_.num_nodes;
    if (!opt.distance_table || n == 0 || n > opt.table_max_nodes) return;
    table_.assign(n * n, std::numeric_limits<int32_t>::max());
    Tree st;
    st.dist.assign(n, kInf);
    st.pred.assign(n, -1);
    std::vector<uint32_t> touched;
    for (uint32_t s = 0; s < n; s++) {
        source_tree(s, kInf, nullptr, st, touched);
        for (uint32_t v : touched) {
            if (st.dist[v] >= std::numeric_limits<int32_t>::max()) throw std::overflow_error("Matcher: distance overflow");
            table_[(size_t)s * n + v] = (int32_t)st.dist[v];
        }
    }
}

void Matcher::table_path(uint32_t from, uint32_t to, std::vector<uint32_t> &edges) const {
    const int32_t *row = &table_[(size_t)from * g_.num_nodes];
    uint32_t v = to;
    while (v != from) {
        uint32_t next = UINT32_MAX;
        for (uint32_t e : g_.adj[v]) {
            const auto &ed = g_.edges[e];
            if (ed.v == kBoundary) continue;
            uint32_t u = ed.u == v ? ed.v : ed.u;
            if (row[u] != std::numeric_limits<int32_t>::max() && (int64_t)row[u] + ed.w == row[v]) {
                edges.push_back(e);
                next = u;
                break;
            }
        }
        if (next == UINT32_MAX) throw std::logic_error("Matcher: broken distance table");
        v = next;
    }
}

void Matcher::boundary_tree(const std::vector<bool> *mask, Tree &t) const {
    t.dist.assign(g_.num_nodes, kInf);
    t.pred.assign(g_.num_nodes, -1);
    MinQueue q;
    for (uint32_t e = 0; e < g_.edges.size(); e++) {
        const auto &ed = g_.edges[e];
        if (ed.v != kBoundary || !active(mask, e)) continue;
        if (ed.w < t.dist[ed.u]) {
            t.dist[ed.u] = ed.w;
            t.pred[ed.u] = (int32_t)e;
        }
    }
    for (uint32_t v = 0; v < g_.num_nodes; v++) {
        if (t.dist[v] < kInf) q.push({t.dist[v], v});
    }
    while (!q.empty()) {
        auto [d, u] = q.top();
        q.pop();
        if (d != t.dist[u]) continue;
        for (uint32_t e : g_.adj[u]) {
            const auto &ed = g_.edges[e];
            if (ed.v == kBoundary || !active(mask, e)) continue;
            uint32_t v = ed.u == u ? ed.v : ed.u;
            if (d + ed.w < t.dist[v]) {
                t.dist[v] = d + ed.w;
                t.pred[v] = (int32_t)e;
                q.push({t.dist[v], v});
            }
        }
    }
}

void Matcher::source_tree(uint32_t s, int64_t limit, const std::vector<bool> *mask, Tree &t,
                          std::vector<uint32_t> &touched) const {
    for (uint32_t v : touched) {
        t.dist[v] = kInf;
        t.pred[v] = -1;
    }
    touched.clear();
    MinQueue q;
    t.dist[s] = 0;
    touched.push_back(s);
    q.push({0, s});
    while (!q.empty()) {
        auto [d, u] = q.top();
        q.pop();
        if (d != t.dist[u]) continue;
        if (d > limit) break;
        for (uint32_t e : g_.adj[u]) {
            const auto &ed = g_.edges[e];
            if (ed.v == kBoundary || !active(mask, e)) continue;
            uint32_t v = ed.u == u ? ed.v : ed.u;
            if (d + ed.w < t.dist[v]) {
                if (t.dist[v] == kInf) touched.push_back(v);
                t.dist[v] = d + ed.w;
                t.pred[v] = (int32_t)e;
                q.push({t.dist[v], v});
            }
        }
    }
}

Correction Matcher::decode(const std::vector<uint32_t> &defects, const std::vector<bool> *mask) const {
    check_defects(g_, defects);
    check_mask(g_, mask);
    Correction out;
    const size_t k = defects.size();
    if (k == 0) return out;

    Tree masked;
    const Tree &bt = mask == nullptr ? boundary_ : masked;
    if (mask != nullptr) boundary_tree(mask, masked);

    // Scratch arrays stay all-unset between calls; only touched entries are reset.
    thread_local std::vector<int32_t> local;
    thread_local Tree st;
    thread_local std::vector<uint32_t> touched;
    if (local.size() < g_.num_nodes) {
        local.resize(g_.num_nodes, -1);
        st.dist.resize(g_.num_nodes, kInf);
        st.pred.resize(g_.num_nodes, -1);
    }
    struct Reset {
        const std::vector<uint32_t> &defects;
        ~Reset() {
            for (uint32_t d : defects) local[d] = -1;
            for (uint32_t v : touched) {
                st.dist[v] = kInf;
                st.pred[v] = -1;
            }
            touched.clear();
        }
    } reset{defects};
    for (size_t i = 0; i < k; i++) local[defects[i]] = (int32_t)i;

    struct Pair {
        size_t i, j;
        int64_t d;
    };
    std::vector<Pair> pairs;
    const bool use_table = mask == nullptr && !table_.empty();
    if (use_table) {
        for (size_t i = 0; i < k; i++) {
            const int32_t *row = &table_[(size_t)defects[i] * g_.num_nodes];
            int64_t bi = bt.dist[defects[i]];
            for (size_t j = i + 1; j < k; j++) {
                int32_t d = row[defects[j]];
                if (d == std::numeric_limits<int32_t>::max()) continue;
                if (d < std::min(kInf, bi + bt.dist[defects[j]])) pairs.push_back({i, j, d});
            }
        }
    } else {
        // A candidate pair has d < b_i + b_j <= 2 max(b_i, b_j), so it is found from the defect
        // with the larger boundary distance.
        for (size_t i = 0; i < k; i++) {
            int64_t bi = bt.dist[defects[i]];
            int64_t limit = bi >= kInf ? kInf : 2 * bi;
            source_tree(defects[i], limit, mask, st, touched);
            for (uint32_t v : touched) {
                int32_t j = local[v];
                if (j < 0 || j == (int32_t)i) continue;
                int64_t bj = bt.dist[v];
                if (bj > bi || (bj == bi && j < (int32_t)i)) continue;
                int64_t d = st.dist[v];
                if (d < std::min(kInf, bi + bj)) pairs.push_back({std::min(i, (size_t)j), std::max(i, (size_t)j), d});
            }
        }
        std::sort(pairs.begin(), pairs.end(),
                  [](const Pair &a, const Pair &b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    }

    int64_t cmax = 0;
    for (const auto &p : pairs) cmax = std::max(cmax, p.d);
    for (size_t i = 0; i < k; i++) {
        if (bt.dist[defects[i]] < kInf) cmax = std::max(cmax, bt.dist[defects[i]]);
    }
    const int64_t c = cmax + 1;

    // Components of the candidate-pair graph are matched independently.
    std::vector<size_t> root(k);
    for (size_t i = 0; i < k; i++) root[i] = i;
    auto find = [&](size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto &p : pairs) root[find(p.i)] = find(p.j);
    std::vector<std::vector<size_t>> members(k);
    for (size_t i = 0; i < k; i++) members[find(i)].push_back(i);
    std::vector<std::vector<size_t>> comp_pairs(k);
    for (size_t a = 0; a < pairs.size(); a++) comp_pairs[find(pairs[a].i)].push_back(a);

    // Global vertices [0, k) are defects and [k, 2k) their boundary twins.
    std::vector<int64_t> mate(2 * k, -1);
    std::vector<size_t> pos(k);
    std::vector<WeightedEdge> edges;
    for (size_t r = 0; r < k; r++) {
        const auto &mem = members[r];
        const size_t m = mem.size();
        if (m == 0) continue;
        if (m == 1) {
            size_t i = mem[0];
            if (bt.dist[defects[i]] < kInf) mate[i] = (int64_t)(k + i), mate[k + i] = (int64_t)i;
            continue;
        }
        if (m == 2) {
            // the single candidate pair is shorter than both boundary paths together
            mate[mem[0]] = (int64_t)mem[1], mate[mem[1]] = (int64_t)mem[0];
            continue;
        }
        for (size_t a = 0; a < m; a++) pos[mem[a]] = a;
        edges.clear();
        for (size_t a : comp_pairs[r]) {
            const auto &p = pairs[a];
            edges.push_back({pos[p.i], pos[p.j], c - p.d});
            edges.push_back({m + pos[p.i], m + pos[p.j], c});
        }
        for (size_t a = 0; a < m; a++) {
            if (bt.dist[defects[mem[a]]] < kInf) edges.push_back({a, m + a, c - bt.dist[defects[mem[a]]]});
        }
        auto local_mate = max_weight_matching(2 * m, edges, true);
        for (size_t a = 0; a < 2 * m; a++) {
            if (local_mate[a] < 0) continue;
            size_t b = (size_t)local_mate[a];
            size_t ga = a < m ? mem[a] : k + mem[a - m];
            size_t gb = b < m ? mem[b] : k + mem[b - m];
            mate[ga] = (int64_t)gb;
        }
    }

    std::vector<uint32_t> used;
    for (size_t i = 0; i < k; i++) {
        int64_t m = mate[i];
        if (m < 0) throw std::runtime_error("Matcher: no valid correction for the defect set");
        if (m == (int64_t)(k + i)) {
            out.weight += bt.dist[defects[i]];
            uint32_t v = defects[i];
            while (true) {
                uint32_t e = (uint32_t)bt.pred[v];
                used.push_back(e);
                const auto &ed = g_.edges[e];
                if (ed.v == kBoundary) break;
                v = ed.u == v ? ed.v : ed.u;
            }
        } else if (m > (int64_t)i && m < (int64_t)k && use_table) {
            out.weight += table_[(size_t)defects[i] * g_.num_nodes + defects[m]];
            table_path(defects[i], defects[m], used);
        } else if (m > (int64_t)i && m < (int64_t)k) {
            source_tree(defects[i], kInf, mask, st, touched);
            uint32_t v = defects[m];
            out.weight += st.dist[v];
            while (v != defects[i]) {
                uint32_t e = (uint32_t)st.pred[v];
                used.push_back(e);
                const auto &ed = g_.edges[e];
                v = ed.u == v ? ed.v : ed.u;
            }
        }
    }
    std::sort(used.begin(), used.end());
    for (size_t a = 0; a < used.size();) {
        size_t b = a;
        while (b < used.size() && used[b] == used[a]) b++;
        if ((b - a) % 2 == 1) out.edges.push_back(used[a]);
        a = b;
    }
    for (uint32_t e : out.edges) out.observable ^= g_.edges[e].observable;
    return out;
}

namespace {

// Minimum cost with the set of achievable observable parities (bit0 = even, bit1 = odd).
struct Cost {
    int64_t w = kInf;
    uint8_t par = 0;
};

uint8_t xor_par(uint8_t a, uint8_t b) {
    uint8_t r = 0;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            if ((a >> x & 1) && (b >> y & 1)) r |= (uint8_t)(1 << (x ^ y));
        }
    }
    return r;
}

void relax(Cost &dst, int64_t w, uint8_t par) {
    if (w < dst.w) {
        dst.w = w;
        dst.par = par;
    } else if (w == dst.w) {
        dst.par |= par;
    }
}

}  // namespace

Correction decode_pairing_oracle(const MatchingGraph &g, const std::vector<uint32_t> &defects,
                                 const std::vector<bool> *mask) {
    check_defects(g, defects);
    check_mask(g, mask);
    if (defects.size() > kPairingOracleMaxDefects) throw std::invalid_argument("pairing oracle: too many defects");
    const size_t n = g.num_nodes + 1;
    const size_t b = g.num_nodes;
    std::vector<Cost> dist(n * n);
    for (size_t i = 0; i < n; i++) dist[i * n + i] = {0, 1};
    for (uint32_t e = 0; e < g.edges.size(); e++) {
        if (!active(mask, e)) continue;
        const auto &ed = g.edges[e];
        size_t u = ed.u, v = ed.v == kBoundary ? b : ed.v;
        uint8_t par = ed.observable ? 2 : 1;
        relax(dist[u * n + v], ed.w, par);
        relax(dist[v * n + u], ed.w, par);
    }
    for (size_t m = 0; m < n; m++) {
        for (size_t i = 0; i < n; i++) {
            const Cost im = dist[i * n + m];
            if (im.w >= kInf) continue;
            for (size_t j = 0; j < n; j++) {
                const Cost &mj = dist[m * n + j];
                if (mj.w >= kInf) continue;
                relax(dist[i * n + j], im.w + mj.w, xor_par(im.par, mj.par));
            }
        }
    }
    const size_t k = defects.size();
    std::vector<Cost> f(size_t(1) << k);
    f[0] = {0, 1};
    for (size_t s = 1; s < f.size(); s++) {
        size_t i = (size_t)__builtin_ctzll(s);
        size_t rest = s & ~(size_t(1) << i);
        const Cost &tb = dist[defects[i] * n + b];
        if (tb.w < kInf && f[rest].w < kInf) relax(f[s], tb.w + f[rest].w, xor_par(tb.par, f[rest].par));
        for (size_t j = i + 1; j < k; j++) {
            if (!(rest >> j & 1)) continue;
            size_t r2 = rest & ~(size_t(1) << j);
            const Cost &tj = dist[defects[i] * n + defects[j]];
            if (tj.w < kInf && f[r2].w < kInf) relax(f[s], tj.w + f[r2].w, xor_par(tj.par, f[r2].par));
        }
    }
    const Cost &best = f.back();
    if (best.w >= kInf) throw std::runtime_error("pairing oracle: no valid correction");
    Correction out;
    out.weight = best.w;
    out.observable = !(best.par & 1);
    out.tie = best.par == 3;
    return out;
}

Correction decode_enumeration_oracle(const MatchingGraph &g, const std::vector<uint32_t> &defects,
                                     const std::vector<bool> *mask) {
    check_defects(g, defects);
    check_mask(g, mask);
    if (g.num_nodes > 64) throw std::invalid_argument("enumeration oracle: too many nodes");
    std::vector<uint32_t> ids;
    for (uint32_t e = 0; e < g.edges.size(); e++) {
        if (active(mask, e)) ids.push_back(e);
    }
    if (ids.size() > kEnumerationOracleMaxEdges) throw std::invalid_argument("enumeration oracle: too many edges");
    std::vector<uint64_t> flips(ids.size());
    for (size_t i = 0; i < ids.size(); i++) {
        const auto &ed = g.edges[ids[i]];
        flips[i] = uint64_t(1) << ed.u;
        if (ed.v != kBoundary) flips[i] |= uint64_t(1) << ed.v;
    }
    uint64_t target = 0;
    for (uint32_t d : defects) target |= uint64_t(1) << d;
    Cost best;
    std::vector<uint32_t> best_set;
    uint64_t syn = 0;
    int64_t w = 0;
    bool obs = false;
    std::vector<bool> in(ids.size(), false);
    const uint64_t total = uint64_t(1) << ids.size();
    for (uint64_t step = 0; step < total; step++) {
        if (step > 0) {
            size_t i = (size_t)__builtin_ctzll(step);
            in[i] = !in[i];
            syn ^= flips[i];
            obs ^= g.edges[ids[i]].observable;
            w += in[i] ? g.edges[ids[i]].w : -g.edges[ids[i]].w;
        }
        if (syn != target) continue;
        if (w < best.w) {
            best_set.clear();
            for (size_t j = 0; j < ids.size(); j++) {
                if (in[j]) best_set.push_back(ids[j]);
            }
        }
        relax(best, w, obs ? 2 : 1);
    }
    if (best.w >= kInf) throw std::runtime_error("enumeration oracle: no valid correction");
    Correction out;
    out.edges = best_set;
    out.weight = best.w;
    out.observable = !(best.par & 1);
    out.tie = best.par == 3;
    return out;
}

}  // namespace tcd
