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

#include "tcd/decoding_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tcd {

namespace {

void xor_sorted(std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a = std::move(out);
}

// Value of a stabilizer as a parity of measurement ordinals and random variables.
struct Expr {
    std::vector<uint32_t> meas;
    std::vector<uint32_t> rv;
    void operator^=(const Expr &o) {
        xor_sorted(meas, o.meas);
        xor_sorted(rv, o.rv);
    }
};

class CheckBuilder {
public:
    CheckBuilder(const PhysicalCircuit &pc, const Reference &ref) : pc_(pc), ref_(ref) {
        const auto &L = pc.layout;
        size_t total_rv = 0;
        for (const auto &ins : pc.logical.instructions()) {
            if (ins.kind == InstructionKind::InitZ) total_rv += ins.targets.size() * L.x_stabs.size();
            if (ins.kind == InstructionKind::InitX) total_rv += ins.targets.size() * L.z_stabs.size();
        }
        kernel_ = SpanSolver(std::max<size_t>(total_rv, 1));
        rv_dim_ = std::max<size_t>(total_rv, 1);
        x_.assign(pc.num_blocks, std::vector<Expr>(L.x_stabs.size()));
        z_.assign(pc.num_blocks, std::vector<Expr>(L.z_stabs.size()));
    }

    CheckSet run() {
        const auto &c = pc_.logical;
        for (size_t t = 0; t < c.size(); t++) {
            const auto &ins = c[t];
            switch (ins.kind) {
                case InstructionKind::InitZ:
                case InstructionKind::InitX:
                case InstructionKind::InitMagic:
                    for (uint32_t b : ins.targets) init(b, ins.kind);
                    se_rounds(t);
                    break;
                case InstructionKind::TransversalCNOT:
                case InstructionKind::FoldH:
                case InstructionKind::FoldS:
                case InstructionKind::FoldSDagger: gate(t, ins); break;
                case InstructionKind::SERound: se_rounds(t); break;
                case InstructionKind::MeasureZ:
                case InstructionKind::MeasureX: data_measurements(t); break;
                default: break;
            }
        }
        for (auto &ch : out_.checks) {
            ch.flip = false;
            for (uint32_t m : ch.meas) ch.flip ^= ref_.bits.get(m);
        }
        return std::move(out_);
    }

private:
    std::vector<Expr> &stabs(uint32_t b, char basis) { return basis == 'X' ? x_[b] : z_[b]; }

    void init(uint32_t b, InstructionKind k) {
        for (char basis : {'X', 'Z'}) {
            bool random = (k == InstructionKind::InitZ && basis == 'X') || (k == InstructionKind::InitX && basis == 'Z');
            for (auto &e : stabs(b, basis)) {
                e = Expr{};
                if (random) e.rv.push_back(next_rv_++);
            }
        }
    }

    void emit(Expr e) {
        if (e.rv.empty()) {
            if (e.meas.empty()) return;
            add_check(std::move(e.meas), false);
            return;
        }
        BitVector v(rv_dim_);
        for (uint32_t r : e.rv) v.set(r, true);
        pending_.push_back(std::move(e));
        if (!kernel_.add(v)) {
            Expr sum;
            for (size_t k : kernel_.kernel().back().ones()) sum ^= pending_[k];
            if (!sum.rv.empty()) throw std::logic_error("build_checks: kernel combination is not deterministic");
            if (!sum.meas.empty()) add_check(std::move(sum.meas), true);
        }
    }

    void add_check(std::vector<uint32_t> meas, bool product) {
        Check ch;
        ch.id = (uint32_t)out_.checks.size();
        ch.product = product;
        uint32_t latest = 0;
        for (uint32_t m : meas) latest = std::max(latest, pc_.meas[m].logical_instr);
        for (uint32_t m : meas) {
            const auto &tag = pc_.meas[m];
            if (tag.logical_instr != latest) continue;
            CheckEvent e{tag.block, tag.basis, tag.logical_instr, tag.kind == MeasKind::Data};
            if (std::find(ch.latest.begin(), ch.latest.end(), e) == ch.latest.end()) ch.latest.push_back(e);
        }
        ch.meas = std::move(meas);
        out_.checks.push_back(std::move(ch));
    }

    void se_rounds(size_t t) {
        for (const auto &rec : pc_.se_records) {
            if (rec.logical_instr != t) continue;
            for (size_t k = 0; k < rec.blocks.size(); k++) {
                uint32_t b = rec.blocks[k];
                for (char basis : {'X', 'Z'}) {
                    const auto &ords = basis == 'X' ? rec.x_meas[k] : rec.z_meas[k];
                    auto &ex = stabs(b, basis);
                    for (size_t i = 0; i < ords.size(); i++) {
                        Expr e = ex[i];
                        Expr s;
                        s.meas.push_back(ords[i]);
                        e ^= s;
                        emit(std::move(e));
                        ex[i] = std::move(s);
                    }
                }
            }
        }
    }

    void data_measurements(size_t t) {
        const auto &L = pc_.layout;
        for (const auto &rec : pc_.data_meas) {
            if (rec.logical_instr != t) continue;
            auto &ex = stabs(rec.block, rec.basis);
            const auto &geo = L.stabs(rec.basis);
            for (size_t i = 0; i < geo.size(); i++) {
                Expr e = ex[i];
                Expr s;
                for (uint32_t pos : geo[i].support()) s.meas.push_back(rec.ordinal_by_position[pos]);
                std::sort(s.meas.begin(), s.meas.end());
                e ^= s;
                emit(std::move(e));
            }
        }
    }

    // Value of each stabilizer after the gate is the value of its back-conjugated operator before it.
    void gate(size_t t, const LogicalInstruction &ins) {
        if (t == 0) throw std::logic_error("build_checks: gate before any initialization");
        const auto &L = pc_.layout;
        std::vector<uint32_t> blocks = ins.targets;
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
        const auto &before = pc_.data_map_after[t - 1];
        const auto &after = pc_.data_map_after[t];
        std::map<uint32_t, uint32_t> local;
        for (uint32_t b : blocks) {
            for (uint32_t q : before[b]) local.emplace(q, (uint32_t)local.size());
        }
        const size_t nl = local.size();
        auto symplectic = [&](const SparsePauli &p) {
            BitVector v(2 * nl);
            for (size_t k = 0; k < p.qubits.size(); k++) {
                uint32_t li = local.at(p.qubits[k]);
                char ch = p.paulis[k];
                if (ch == 'X' || ch == 'Y') v.flip(li);
                if (ch == 'Z' || ch == 'Y') v.flip(nl + li);
            }
            return v;
        };
        std::vector<BitVector> gens;
        std::vector<const Expr *> gen_expr;
        for (uint32_t b : blocks) {
            for (char basis : {'X', 'Z'}) {
                for (uint32_t i = 0; i < L.stabs(basis).size(); i++) {
                    gens.push_back(symplectic(pc_.stabilizer(b, basis, i, before[b])));
                    gen_expr.push_back(&stabs(b, basis)[i]);
                }
            }
        }
        SpanSolver span(gens, 2 * nl);
        auto [begin, end] = pc_.instr_ops[t];
        std::vector<uint8_t> frame(pc_.num_qubits, 0);
        std::vector<std::pair<std::pair<uint32_t, char>, std::vector<Expr>>> updates;
        std::vector<std::vector<Expr>> newx(blocks.size()), newz(blocks.size());
        for (size_t bi = 0; bi < blocks.size(); bi++) {
            uint32_t b = blocks[bi];
            for (char basis : {'X', 'Z'}) {
                auto &dst = basis == 'X' ? newx[bi] : newz[bi];
                for (uint32_t i = 0; i < L.stabs(basis).size(); i++) {
                    SparsePauli s = pc_.stabilizer(b, basis, i, after[b]);
                    for (size_t k = 0; k < s.qubits.size(); k++) {
                        char ch = s.paulis[k];
                        frame[s.qubits[k]] = (ch == 'X' ? 1 : ch == 'Z' ? 2 : 3);
                    }
                    for (size_t o = end; o-- > begin;) conjugate_back(pc_.ops[o], frame);
                    SparsePauli p;
                    for (const auto &[q, li] : local) {
                        uint8_t code = frame[q];
                        if (code) p.push(q, code == 1 ? 'X' : code == 2 ? 'Z' : 'Y');
                    }
                    for (uint32_t q = 0; q < pc_.num_qubits; q++) {
                        if (frame[q] && !local.count(q)) {
                            throw std::logic_error("build_checks: stabilizer spread outside the gate's blocks");
                        }
                    }
                    std::fill(frame.begin(), frame.end(), 0);
                    auto coeff = span.express(symplectic(p));
                    if (!coeff) throw std::logic_error("build_checks: gate does not preserve the stabilizer group");
                    Expr e;
                    for (size_t g : coeff->ones()) e ^= *gen_expr[g];
                    dst.push_back(std::move(e));
                }
            }
        }
        for (size_t bi = 0; bi < blocks.size(); bi++) {
            x_[blocks[bi]] = std::move(newx[bi]);
            z_[blocks[bi]] = std::move(newz[bi]);
        }
    }

    static void conjugate_back(const PhysOp &op, std::vector<uint8_t> &f) {
        const auto &t = op.targets;
        switch (op.kind) {
            case OpKind::H:
                for (uint32_t q : t) f[q] = (uint8_t)(((f[q] & 1) << 1) | ((f[q] >> 1) & 1));
                break;
            case OpKind::S:
            case OpKind::S_DAG:
                for (uint32_t q : t) f[q] ^= (f[q] & 1) << 1;
                break;
            case OpKind::CX:
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint32_t c = t[k], g = t[k + 1];
                    f[g] ^= f[c] & 1;
                    f[c] ^= f[g] & 2;
                }
                break;
            case OpKind::CZ:
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint32_t a = t[k], b = t[k + 1];
                    uint8_t xa = f[a] & 1, xb = f[b] & 1;
                    f[a] ^= xb << 1;
                    f[b] ^= xa << 1;
                }
                break;
            case OpKind::PAULI:
                break;
            default:
                throw std::logic_error(std::string("build_checks: unexpected op in gate: ") + op_name(op.kind));
        }
    }

    const PhysicalCircuit &pc_;
    const Reference &ref_;
    std::vector<std::vector<Expr>> x_, z_;
    uint32_t next_rv_ = 0;
    size_t rv_dim_ = 1;
    SpanSolver kernel_;
    std::vector<Expr> pending_;
    CheckSet out_;
};

}  // namespace

std::vector<std::vector<uint32_t>> CheckSet::measurement_sets() const {
    std::vector<std::vector<uint32_t>> out;
    out.reserve(checks.size());
    for (const auto &c : checks) out.push_back(c.meas);
    return out;
}

CheckSet build_checks(const PhysicalCircuit &pc, const Reference &ref) { return CheckBuilder(pc, ref).run(); }

ProductObservables product_observables(const PhysicalCircuit &pc, const ReliableBasis &v) {
    ProductObservables o;
    for (uint32_t j = 0; j < v.size(); j++) {
        if (v.tags[j] != ColumnTag::Reliable) continue;
        std::vector<uint32_t> meas;
        for (uint32_t k : v.columns[j]) {
            std::vector<uint32_t> s = pc.logical_meas.at(k);
            std::sort(s.begin(), s.end());
            xor_sorted(meas, s);
        }
        o.columns.push_back(j);
        o.meas.push_back(std::move(meas));
    }
    return o;
}

std::vector<uint32_t> subgraph_checks(const CheckSet &checks, const ProductPath &path) {
    std::vector<uint32_t> out;
    for (const auto &ch : checks.checks) {
        bool in = false;
        for (const auto &e : ch.latest) {
            // stabilizer events read the operator after their instruction, data events the one before
            size_t t = e.data ? (size_t)e.instr - 1 : e.instr;
            if (e.data && e.instr == 0) continue;
            if (t >= path.end) continue;
            const PauliString &op = path.ops[t];
            if ((e.basis == 'X' && op.x.get(e.block)) || (e.basis == 'Z' && op.z.get(e.block))) {
                in = true;
                break;
            }
        }
        if (in) out.push_back(ch.id);
    }
    return out;
}

double edge_weight(double p) { return std::log((1 - p) / p); }

namespace {

// Partition of nodes into existing one- or two-node edges whose observable flags XOR to obs.
bool find_partition(std::vector<uint32_t> &nodes, bool obs,
                    const std::map<std::vector<uint32_t>, std::array<int32_t, 2>> &edges,
                    std::vector<uint32_t> &chosen) {
    if (nodes.empty()) return !obs;
    uint32_t n = nodes.front();
    auto try_part = [&](const std::vector<uint32_t> &part, std::vector<uint32_t> rest) {
        auto it = edges.find(part);
        if (it == edges.end()) return false;
        for (int flag : {0, 1}) {
            if (it->second[flag] < 0) continue;
            chosen.push_back((uint32_t)it->second[flag]);
            if (find_partition(rest, obs ^ (bool)flag, edges, chosen)) return true;
            chosen.pop_back();
        }
        return false;
    };
    for (size_t k = 1; k < nodes.size(); k++) {
        std::vector<uint32_t> rest;
        for (size_t j = 1; j < nodes.size(); j++) {
            if (j != k) rest.push_back(nodes[j]);
        }
        if (try_part({n, nodes[k]}, rest)) return true;
    }
    return try_part({n}, std::vector<uint32_t>(nodes.begin() + 1, nodes.end()));
}

}  // namespace

DecodingSubgraph extract_subgraph(const std::vector<uint32_t> &checks, const ErrorModel &em, uint32_t observable,
                                  const SubgraphOptions &opt) {
    DecodingSubgraph g;
    g.checks = checks;
    g.observable = observable;
    std::vector<int32_t> local(em.num_checks, -1);
    for (uint32_t i = 0; i < checks.size(); i++) local.at(checks[i]) = (int32_t)i;
    std::map<std::vector<uint32_t>, std::array<int32_t, 2>> index;
    std::vector<size_t> outside;
    struct Pending {
        uint32_t mech;
        std::vector<uint32_t> nodes;
        bool obs;
    };
    std::vector<Pending> hyper;
    for (const auto &m : em.mechanisms) {
        if (opt.excluded && (*opt.excluded)[m.id]) continue;
        std::vector<uint32_t> nodes;
        for (uint32_t c : m.checks) {
            if (local[c] >= 0) nodes.push_back((uint32_t)local[c]);
        }
        std::sort(nodes.begin(), nodes.end());
        bool obs = std::binary_search(m.observables.begin(), m.observables.end(), observable);
        if (nodes.empty()) {
            if (obs) g.undetectable.push_back(m.id);
            continue;
        }
        g.max_edge_degree = std::max(g.max_edge_degree, nodes.size());
        if (nodes.size() > 2) {
            if (opt.strict && !opt.decompose) {
                throw std::logic_error("extract_subgraph: mechanism restricts to more than two checks");
            }
            hyper.push_back({m.id, std::move(nodes), obs});
            continue;
        }
        size_t out_count = m.checks.size() - nodes.size();
        auto it = index.find(nodes);
        if (it == index.end()) it = index.emplace(nodes, std::array<int32_t, 2>{-1, -1}).first;
        int32_t &slot = it->second[obs];
        if (slot < 0) {
            SubgraphEdge e;
            e.nodes = nodes;
            e.observable = obs;
            e.probability = m.probability;
            e.mechanisms.push_back(m.id);
            e.representative = m.id;
            e.timelike = m.timelike;
            slot = (int32_t)g.edges.size();
            g.edges.push_back(std::move(e));
            outside.push_back(out_count);
        } else {
            SubgraphEdge &e = g.edges[slot];
            e.probability = compose_probability(e.probability, m.probability);
            e.mechanisms.push_back(m.id);
            e.timelike = e.timelike && m.timelike;
            if (out_count < outside[slot]) {
                outside[slot] = out_count;
                e.representative = m.id;
            }
        }
    }
    for (auto &h : hyper) {
        std::vector<uint32_t> chosen;
        if (opt.decompose && find_partition(h.nodes, h.obs, index, chosen)) {
            for (uint32_t e : chosen) {
                g.edges[e].probability = compose_probability(g.edges[e].probability, em.mechanisms[h.mech].probability);
            }
            g.decomposed.push_back(h.mech);
        } else {
            if (opt.strict) throw std::logic_error("extract_subgraph: mechanism restricts to more than two checks");
            g.unmatchable.push_back(h.mech);
        }
    }
    for (auto &e : g.edges) {
        e.probability = std::min(e.probability, 0.5);
        e.weight = edge_weight(e.probability);
    }
    return g;
}

size_t DecodingSubgraph::max_vertex_degree() const {
    std::vector<size_t> deg(checks.size(), 0);
    for (const auto &e : edges) {
        for (uint32_t n : e.nodes) deg[n]++;
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::string DecodingSubgraph::dump() const {
    std::string s;
    char buf[64];
    for (const auto &e : edges) {
        std::snprintf(buf, sizeof buf, "%.9g", e.probability);
        s += buf;
        for (uint32_t n : e.nodes) s += " " + std::to_string(checks[n]);
        if (e.nodes.size() == 1) s += " B";
        s += " |";
        if (e.observable) s += " " + std::to_string(observable);
        s += " | " + std::to_string(e.representative) + "\n";
    }
    return s;
}

DecodingSubgraph merge_checks_for_reduced_se(const DecodingSubgraph &sg, const CheckSet &checks,
                                             const std::vector<uint32_t> &removed_meas) {
    const size_t n = sg.checks.size();
    std::vector<uint32_t> parent(n);
    for (uint32_t i = 0; i < n; i++) parent[i] = i;
    auto find = [&](uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (uint32_t m : removed_meas) {
        std::vector<uint32_t> hit;
        for (uint32_t i = 0; i < n; i++) {
            const auto &meas = checks.checks.at(sg.checks[i]).meas;
            if (std::binary_search(meas.begin(), meas.end(), m)) hit.push_back(i);
        }
        if (hit.size() != 2) throw std::invalid_argument("merge_checks_for_reduced_se: measurement not in two checks");
        uint32_t a = find(hit[0]), b = find(hit[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int32_t> node_of(n, -1);
    DecodingSubgraph out;
    out.observable = sg.observable;
    out.unmatchable = sg.unmatchable;
    out.decomposed = sg.decomposed;
    out.undetectable = sg.undetectable;
    for (uint32_t i = 0; i < n; i++) {
        uint32_t r = find(i);
        if (node_of[r] < 0) {
            node_of[r] = (int32_t)out.checks.size();
            out.checks.push_back(sg.checks[r]);
        }
        node_of[i] = node_of[r];
    }
    std::map<std::pair<std::vector<uint32_t>, bool>, size_t> index;
    for (const auto &e : sg.edges) {
        std::vector<uint32_t> nodes;
        for (uint32_t v : e.nodes) xor_sorted(nodes, {(uint32_t)node_of[v]});
        if (nodes.empty()) {
            if (e.observable) out.undetectable.insert(out.undetectable.end(), e.mechanisms.begin(), e.mechanisms.end());
            continue;
        }
        auto key = std::make_pair(nodes, e.observable);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.edges.size());
            SubgraphEdge ne = e;
            ne.nodes = nodes;
            out.edges.push_back(std::move(ne));
        } else {
            SubgraphEdge &ne = out.edges[it->second];
            ne.probability = compose_probability(ne.probability, e.probability);
            ne.mechanisms.insert(ne.mechanisms.end(), e.mechanisms.begin(), e.mechanisms.end());
            ne.timelike = ne.timelike && e.timelike;
        }
    }
    for (auto &e : out.edges) {
        e.probability = std::min(e.probability, 0.5);
        e.weight = edge_weight(e.probability);
        out.max_edge_degree = std::max(out.max_edge_degree, e.nodes.size());
    }
    return out;
}

CommitState::CommitState(const ErrorModel &em) : model(em), num_base(em.mechanisms.size()), fixed(em.mechanisms.size()) {
    for (size_t i = 0; i < model.mechanisms.size(); i++) {
        if (model.mechanisms[i].id != i) throw std::invalid_argument("CommitState: mechanism ids must be indices");
    }
}

void fix_subgraph(CommitState &st, const DecodingSubgraph &sg, bool include_observable) {
    std::vector<bool> in(st.model.num_checks, false);
    for (uint32_t c : sg.checks) in[c] = true;
    for (const auto &m : st.model.mechanisms) {
        if (st.fixed[m.id]) continue;
        bool hit = include_observable && std::binary_search(m.observables.begin(), m.observables.end(), sg.observable);
        for (uint32_t c : m.checks) hit = hit || in[c];
        if (hit) st.fixed[m.id] = true;
    }
}

void commit(const ErrorModel &model, const std::vector<bool> &fixed, const DecodingSubgraph &sg,
            const std::vector<uint32_t> &edges, CommitValues &v, bool local_timelike) {
    for (uint32_t e : edges) {
        const auto &m = model.mechanisms.at(sg.edges.at(e).representative);
        if (fixed[m.id]) throw std::logic_error("commit: mechanism already fixed");
        for (uint32_t c : m.checks) {
            if (local_timelike && m.timelike && !std::binary_search(sg.checks.begin(), sg.checks.end(), c)) continue;
            v.checks[c] ^= 1;
        }
        for (uint32_t o : m.observables) v.observables[o] ^= 1;
    }
}

std::vector<std::vector<uint32_t>> find_timelike_loops(const DecodingSubgraph &sg) {
    const uint32_t n = (uint32_t)sg.checks.size();
    const uint32_t boundary = n;
    auto other = [&](const SubgraphEdge &e, uint32_t v) {
        uint32_t a = e.nodes[0], b = e.nodes.size() == 2 ? e.nodes[1] : boundary;
        return a == v ? b : a;
    };
    std::vector<std::vector<uint32_t>> adj(n + 1);
    for (uint32_t i = 0; i < sg.edges.size(); i++) {
        const auto &e = sg.edges[i];
        if (!e.timelike) continue;
        adj[e.nodes[0]].push_back(i);
        adj[e.nodes.size() == 2 ? e.nodes[1] : boundary].push_back(i);
    }
    std::vector<int32_t> pedge(n + 1, -1), depth(n + 1, -1);
    std::vector<bool> tree(sg.edges.size(), false);
    for (uint32_t root = 0; root <= n; root++) {
        if (depth[root] >= 0 || adj[root].empty()) continue;
        depth[root] = 0;
        std::vector<uint32_t> stack{root};
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            for (uint32_t e : adj[u]) {
                uint32_t v = other(sg.edges[e], u);
                if (depth[v] >= 0) continue;
                depth[v] = depth[u] + 1;
                pedge[v] = (int32_t)e;
                tree[e] = true;
                stack.push_back(v);
            }
        }
    }
    std::vector<std::vector<uint32_t>> even, odd;
    for (uint32_t i = 0; i < sg.edges.size(); i++) {
        const auto &e = sg.edges[i];
        if (!e.timelike || tree[i]) continue;
        uint32_t a = e.nodes[0], b = other(e, a);
        std::vector<uint32_t> cyc{i};
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            uint32_t pe = (uint32_t)pedge[a];
            cyc.push_back(pe);
            a = other(sg.edges[pe], a);
        }
        std::sort(cyc.begin(), cyc.end());
        bool obs = false;
        for (uint32_t c : cyc) obs ^= sg.edges[c].observable;
        (obs ? odd : even).push_back(std::move(cyc));
    }
    for (size_t k = 1; k < odd.size(); k++) {
        std::vector<uint32_t> cyc = odd[k];
        xor_sorted(cyc, odd[0]);
        even.push_back(std::move(cyc));
    }
    return even;
}

std::vector<uint32_t> add_virtual_edges(CommitState &st, const DecodingSubgraph &sg,
                                        const std::vector<std::vector<uint32_t>> &loops) {
    std::vector<uint32_t> ids;
    for (const auto &loop : loops) {
        ErrorMechanism v;
        v.probability = 1.0;
        v.timelike = true;
        for (uint32_t e : loop) {
            const auto &edge = sg.edges.at(e);
            const auto &rep = st.model.mechanisms.at(edge.representative);
            xor_sorted(v.checks, rep.checks);
            xor_sorted(v.observables, rep.observables);
            v.probability *= std::sqrt(edge.probability);
        }
        if (v.checks.empty()) continue;
        const auto &first = st.model.mechanisms[sg.edges[loop.front()].representative];
        v.time_index = first.time_index;
        v.site = first.site;
        v.id = (uint32_t)st.model.mechanisms.size();
        ids.push_back(v.id);
        st.model.mechanisms.push_back(std::move(v));
        st.fixed.push_back(false);
    }
    return ids;
}

}  // namespace tcd
