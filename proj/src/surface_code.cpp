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

#include "tcd/surface_code.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace tcd {

std::vector<uint32_t> StabilizerGeometry::support() const {
    std::vector<uint32_t> s;
    for (int32_t p : steps) {
        if (p >= 0) {
            s.push_back((uint32_t)p);
        }
    }
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

const Coord N{-1, 0}, S{1, 0}, W{0, -1}, E{0, 1};
const Coord NW{-1, -1}, NE{-1, 1}, SW{1, -1}, SE{1, 1};

struct Grid {
    std::map<std::pair<int, int>, uint32_t> index;
    int32_t at(int r, int c) const {
        auto it = index.find({r, c});
        return it == index.end() ? -1 : (int32_t)it->second;
    }
};

StabilizerGeometry stab_at(const Grid &g, Coord a, const std::array<Coord, 4> &order) {
    StabilizerGeometry s;
    s.ancilla = a;
    for (size_t k = 0; k < 4; k++) {
        s.steps[k] = g.at(a.r + order[k].r, a.c + order[k].c);
    }
    return s;
}

bool commutes_with_all(const std::vector<uint32_t> &op, const std::vector<StabilizerGeometry> &stabs) {
    for (const auto &s : stabs) {
        size_t overlap = 0;
        for (uint32_t p : s.support()) {
            overlap += std::count(op.begin(), op.end(), p);
        }
        if (overlap % 2) {
            return false;
        }
    }
    return true;
}

}  // namespace

CodeLayout make_layout(LayoutKind kind, size_t d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be odd and at least 3");
    }
    CodeLayout L;
    L.kind = kind;
    L.d = d;
    Grid g;
    int di = (int)d;
    if (kind == LayoutKind::Unrotated) {
        int n = 2 * di - 1;
        for (int r = 0; r < n; r++) {
            for (int c = 0; c < n; c++) {
                if ((r + c) % 2 == 0) {
                    g.index[{r, c}] = (uint32_t)L.data.size();
                    L.data.push_back({r, c});
                }
            }
        }
        std::map<std::pair<int, int>, uint32_t> xi, zi;
        for (int r = 0; r < n; r++) {
            for (int c = 0; c < n; c++) {
                if (r % 2 == 0 && c % 2 == 1) {
                    xi[{r, c}] = (uint32_t)L.x_stabs.size();
                    L.x_stabs.push_back(stab_at(g, {r, c}, {N, W, E, S}));
                } else if (r % 2 == 1 && c % 2 == 0) {
                    zi[{r, c}] = (uint32_t)L.z_stabs.size();
                    L.z_stabs.push_back(stab_at(g, {r, c}, {N, E, W, S}));
                }
            }
        }
        for (int k = 0; k < n; k += 2) {
            L.logical_z.push_back((uint32_t)g.at(0, k));
            L.logical_x.push_back((uint32_t)g.at(k, 0));
        }
        L.logical_overlap = (uint32_t)g.at(0, 0);
        for (const auto &p : L.data) {
            L.transpose_data.push_back((uint32_t)g.at(p.c, p.r));
            if (p.r == p.c) {
                L.diagonal.push_back((uint32_t)g.at(p.r, p.c));
            }
        }
        for (const auto &s : L.x_stabs) {
            L.transpose_x_to_z.push_back(zi.at({s.ancilla.c, s.ancilla.r}));
        }
        for (const auto &s : L.z_stabs) {
            L.transpose_z_to_x.push_back(xi.at({s.ancilla.c, s.ancilla.r}));
        }
    } else {
        for (int i = 0; i < di; i++) {
            for (int j = 0; j < di; j++) {
                g.index[{2 * i + 1, 2 * j + 1}] = (uint32_t)L.data.size();
                L.data.push_back({2 * i + 1, 2 * j + 1});
            }
        }
        for (int i = 0; i <= di; i++) {
            for (int j = 0; j <= di; j++) {
                bool x_type = (i + j) % 2 == 0;
                bool bulk = i >= 1 && i <= di - 1 && j >= 1 && j <= di - 1;
                bool top_bottom = (i == 0 || i == di) && j >= 1 && j <= di - 1 && x_type;
                bool left_right = (j == 0 || j == di) && i >= 1 && i <= di - 1 && !x_type;
                if (!(bulk || top_bottom || left_right)) {
                    continue;
                }
                if (x_type) {
                    L.x_stabs.push_back(stab_at(g, {2 * i, 2 * j}, {NW, NE, SW, SE}));
                } else {
                    L.z_stabs.push_back(stab_at(g, {2 * i, 2 * j}, {NW, SW, NE, SE}));
                }
            }
        }
        std::vector<uint32_t> row, col;
        for (int k = 0; k < di; k++) {
            row.push_back((uint32_t)g.at(1, 2 * k + 1));
            col.push_back((uint32_t)g.at(2 * k + 1, 1));
        }
        if (!commutes_with_all(row, L.x_stabs) || !commutes_with_all(col, L.z_stabs)) {
            throw std::logic_error("rotated layout boundary orientation mismatch");
        }
        L.logical_z = row;
        L.logical_x = col;
        L.logical_overlap = (uint32_t)g.at(1, 1);
    }
    return L;
}

std::string CodeLayout::to_json() const {
    using nlohmann::json;
    json j;
    j["kind"] = kind == LayoutKind::Unrotated ? "unrotated" : "rotated";
    j["distance"] = d;
    json dq = json::array();
    for (const auto &p : data) {
        dq.push_back({p.r, p.c});
    }
    j["data_qubits"] = dq;
    for (char b : {'X', 'Z'}) {
        json arr = json::array();
        for (const auto &s : stabs(b)) {
            arr.push_back({{"ancilla", {s.ancilla.r, s.ancilla.c}}, {"support", s.support()}, {"schedule", s.steps}});
        }
        j[b == 'X' ? "x_stabilizers" : "z_stabilizers"] = arr;
    }
    j["logical_x"] = logical_x;
    j["logical_z"] = logical_z;
    return j.dump(1);
}

const char *op_name(OpKind k) {
    switch (k) {
        case OpKind::R: return "R";
        case OpKind::RX: return "RX";
        case OpKind::H: return "H";
        case OpKind::S: return "S";
        case OpKind::S_DAG: return "S_DAG";
        case OpKind::CX: return "CX";
        case OpKind::CZ: return "CZ";
        case OpKind::M: return "M";
        case OpKind::MX: return "MX";
        case OpKind::MPP: return "MPP";
        case OpKind::PREP: return "PREP";
        case OpKind::PAULI: return "PAULI";
        case OpKind::IDLE: return "IDLE";
        case OpKind::INJECT: return "INJECT";
        case OpKind::SE_DATA: return "SE_DATA";
    }
    return "?";
}

SparsePauli PhysicalCircuit::stabilizer(uint32_t block, char basis, uint32_t index,
                                        const std::vector<uint32_t> &map) const {
    (void)block;
    SparsePauli p;
    for (uint32_t pos : layout.stabs(basis)[index].support()) {
        p.push(map[pos], basis);
    }
    return p;
}

SparsePauli PhysicalCircuit::logical_rep(char which, const std::vector<uint32_t> &map) const {
    std::map<uint32_t, char> acc;
    if (which == 'X' || which == 'Y') {
        for (uint32_t pos : layout.logical_x) {
            acc[pos] = 'X';
        }
    }
    if (which == 'Z' || which == 'Y') {
        for (uint32_t pos : layout.logical_z) {
            acc[pos] = acc.count(pos) ? 'Y' : 'Z';
        }
    }
    SparsePauli p;
    for (auto [pos, c] : acc) {
        p.push(map[pos], c);
    }
    return p;
}

namespace {

class Compiler {
   public:
    Compiler(const LogicalCircuit &c, const CodeLayout &layout, const CompileOptions &opt) : c_(c), opt_(opt) {
        pc_.layout = layout;
        pc_.logical = c;
        pc_.num_blocks = c.num_qubits();
        pc_.qubits_per_block = layout.num_data() + layout.x_stabs.size() + layout.z_stabs.size();
        pc_.num_qubits = pc_.num_blocks * pc_.qubits_per_block;
        maps_.resize(pc_.num_blocks);
        for (size_t b = 0; b < pc_.num_blocks; b++) {
            for (size_t p = 0; p < layout.num_data(); p++) {
                maps_[b].push_back((uint32_t)(b * pc_.qubits_per_block + p));
            }
        }
        live_.assign(pc_.num_blocks, false);
    }

    PhysicalCircuit run() {
        for (size_t i = 0; i < c_.size(); i++) {
            size_t begin = pc_.ops.size();
            instr_ = (uint32_t)i;
            compile(c_[i]);
            pc_.instr_ops.push_back({begin, pc_.ops.size()});
            pc_.data_map_after.push_back(maps_);
        }
        return std::move(pc_);
    }

   private:
    const CodeLayout &L() const { return pc_.layout; }

    PhysOp &emit(OpKind k, std::vector<uint32_t> targets, bool noiseless = false) {
        PhysOp op;
        op.kind = k;
        op.targets = std::move(targets);
        op.noiseless = noiseless;
        op.logical_instr = instr_;
        op.first_measurement = (uint32_t)pc_.meas.size();
        pc_.ops.push_back(std::move(op));
        return pc_.ops.back();
    }

    std::vector<uint32_t> data_of(uint32_t b) const { return maps_[b]; }

    void add_product(PhysOp &op, SparsePauli p) {
        if (op.product_count == 0) {
            op.product_begin = (uint32_t)pc_.products.size();
        }
        pc_.products.push_back(std::move(p));
        op.product_count++;
    }

    void se_round(const std::vector<uint32_t> &blocks, bool noiseless) {
        SERecord rec;
        rec.logical_instr = instr_;
        rec.noiseless = noiseless;
        rec.blocks = blocks;
        std::vector<uint32_t> data, rx, rz;
        for (uint32_t b : blocks) {
            auto d = data_of(b);
            data.insert(data.end(), d.begin(), d.end());
            for (uint32_t i = 0; i < L().x_stabs.size(); i++) {
                rx.push_back(pc_.x_ancilla(b, i));
            }
            for (uint32_t i = 0; i < L().z_stabs.size(); i++) {
                rz.push_back(pc_.z_ancilla(b, i));
            }
        }
        if (!noiseless) {
            if (opt_.idle_before_se) {
                emit(OpKind::IDLE, data);
            }
            emit(OpKind::SE_DATA, data);
        }
        emit(OpKind::RX, rx, noiseless);
        emit(OpKind::R, rz, noiseless);
        for (size_t k = 0; k < 4; k++) {
            std::vector<uint32_t> pairs;
            for (uint32_t b : blocks) {
                for (uint32_t i = 0; i < L().x_stabs.size(); i++) {
                    int32_t p = L().x_stabs[i].steps[k];
                    if (p >= 0) {
                        pairs.push_back(pc_.x_ancilla(b, i));
                        pairs.push_back(maps_[b][p]);
                    }
                }
                for (uint32_t i = 0; i < L().z_stabs.size(); i++) {
                    int32_t p = L().z_stabs[i].steps[k];
                    if (p >= 0) {
                        pairs.push_back(maps_[b][p]);
                        pairs.push_back(pc_.z_ancilla(b, i));
                    }
                }
            }
            emit(OpKind::CX, pairs, noiseless);
        }
        auto measure = [&](OpKind k, char basis, std::vector<std::vector<uint32_t>> &out) {
            std::vector<uint32_t> targets;
            for (uint32_t b : blocks) {
                std::vector<uint32_t> ords;
                size_t ns = L().stabs(basis).size();
                for (uint32_t i = 0; i < ns; i++) {
                    targets.push_back(basis == 'X' ? pc_.x_ancilla(b, i) : pc_.z_ancilla(b, i));
                    ords.push_back((uint32_t)pc_.meas.size());
                    MeasurementTag t;
                    t.kind = MeasKind::Stabilizer;
                    t.block = b;
                    t.basis = basis;
                    t.index = i;
                    t.logical_instr = instr_;
                    t.noiseless = noiseless;
                    pc_.meas.push_back(t);
                }
                out.push_back(ords);
            }
            PhysOp &op = emit(k, targets, noiseless);
            op.first_measurement = out.front().empty() ? (uint32_t)pc_.meas.size() : out.front().front();
        };
        measure(OpKind::MX, 'X', rec.x_meas);
        measure(OpKind::M, 'Z', rec.z_meas);
        pc_.se_records.push_back(std::move(rec));
    }

    std::vector<uint32_t> live_blocks() const {
        std::vector<uint32_t> b;
        for (uint32_t q = 0; q < pc_.num_blocks; q++) {
            if (live_[q]) {
                b.push_back(q);
            }
        }
        return b;
    }

    void require_fold() const {
        if (!L().supports_fold()) {
            throw std::invalid_argument("fold-transversal gates need the unrotated layout");
        }
    }

    void fold_s(uint32_t b, bool dagger) {
        require_fold();
        std::vector<uint32_t> s, sd, cz;
        for (uint32_t pos : L().diagonal) {
            bool even = (L().data[pos].r % 2) == 0;
            ((even != dagger) ? s : sd).push_back(maps_[b][pos]);
        }
        for (uint32_t pos = 0; pos < L().num_data(); pos++) {
            const Coord &c = L().data[pos];
            if (c.r < c.c) {
                cz.push_back(maps_[b][pos]);
                cz.push_back(maps_[b][L().transpose_data[pos]]);
            }
        }
        if (!s.empty()) {
            emit(OpKind::S, s);
        }
        if (!sd.empty()) {
            emit(OpKind::S_DAG, sd);
        }
        emit(OpKind::CZ, cz);
    }

    void measure_data(uint32_t b, char basis) {
        DataMeasRecord rec;
        rec.logical_instr = instr_;
        rec.block = b;
        rec.basis = basis;
        std::vector<uint32_t> targets;
        for (uint32_t pos = 0; pos < L().num_data(); pos++) {
            targets.push_back(maps_[b][pos]);
            rec.ordinal_by_position.push_back((uint32_t)pc_.meas.size());
            MeasurementTag t;
            t.kind = MeasKind::Data;
            t.block = b;
            t.basis = basis;
            t.index = pos;
            t.logical_instr = instr_;
            pc_.meas.push_back(t);
        }
        PhysOp &op = emit(basis == 'Z' ? OpKind::M : OpKind::MX, targets);
        op.first_measurement = rec.ordinal_by_position.front();
        std::vector<uint32_t> logical;
        for (uint32_t pos : basis == 'Z' ? L().logical_z : L().logical_x) {
            logical.push_back(rec.ordinal_by_position[pos]);
        }
        pc_.logical_meas.push_back(logical);
        pc_.data_meas.push_back(std::move(rec));
        live_[b] = false;
    }

    void compile(const LogicalInstruction &ins) {
        switch (ins.kind) {
            case InstructionKind::InitZ:
            case InstructionKind::InitX: {
                std::vector<uint32_t> t;
                for (uint32_t b : ins.targets) {
                    auto d = data_of(b);
                    t.insert(t.end(), d.begin(), d.end());
                    live_[b] = true;
                }
                emit(ins.kind == InstructionKind::InitZ ? OpKind::R : OpKind::RX, t);
                break;
            }
            case InstructionKind::InitMagic: {
                std::vector<uint32_t> t;
                for (uint32_t b : ins.targets) {
                    auto d = data_of(b);
                    PhysOp &op = emit(OpKind::PREP, d, true);
                    for (char basis : {'X', 'Z'}) {
                        for (uint32_t i = 0; i < L().stabs(basis).size(); i++) {
                            add_product(op, pc_.stabilizer(b, basis, i, maps_[b]));
                        }
                    }
                    add_product(op, pc_.logical_rep('Y', maps_[b]));
                    t.insert(t.end(), d.begin(), d.end());
                    live_[b] = true;
                }
                emit(OpKind::INJECT, t);
                se_round(ins.targets, true);
                break;
            }
            case InstructionKind::TransversalCNOT: {
                std::vector<uint32_t> pairs;
                for (size_t k = 0; k < ins.targets.size(); k += 2) {
                    uint32_t cb = ins.targets[k], tb = ins.targets[k + 1];
                    for (uint32_t pos = 0; pos < L().num_data(); pos++) {
                        pairs.push_back(maps_[cb][pos]);
                        pairs.push_back(maps_[tb][pos]);
                    }
                }
                emit(OpKind::CX, pairs);
                break;
            }
            case InstructionKind::FoldH: {
                require_fold();
                std::vector<uint32_t> t;
                for (uint32_t b : ins.targets) {
                    auto d = data_of(b);
                    t.insert(t.end(), d.begin(), d.end());
                }
                emit(OpKind::H, t);
                for (uint32_t b : ins.targets) {
                    std::vector<uint32_t> m(L().num_data());
                    for (uint32_t pos = 0; pos < L().num_data(); pos++) {
                        m[pos] = maps_[b][L().transpose_data[pos]];
                    }
                    maps_[b] = m;
                }
                break;
            }
            case InstructionKind::FoldS:
            case InstructionKind::FoldSDagger:
                for (uint32_t b : ins.targets) {
                    fold_s(b, ins.kind == InstructionKind::FoldSDagger);
                }
                break;
            case InstructionKind::PauliGate: {
                PhysOp &op = emit(OpKind::PAULI, {}, true);
                for (uint32_t b : ins.targets) {
                    add_product(op, pc_.logical_rep(ins.pauli, maps_[b]));
                }
                break;
            }
            case InstructionKind::SERound:
                se_round(ins.targets.empty() ? live_blocks() : ins.targets, ins.noiseless);
                break;
            case InstructionKind::MeasureZ:
            case InstructionKind::MeasureX:
                for (uint32_t b : ins.targets) {
                    measure_data(b, ins.kind == InstructionKind::MeasureZ ? 'Z' : 'X');
                }
                break;
            case InstructionKind::MeasurePauli: {
                SparsePauli p;
                for (size_t b = 0; b < pc_.num_blocks; b++) {
                    char ch = ins.product.get(b);
                    if (ch == 'I') {
                        continue;
                    }
                    SparsePauli r = pc_.logical_rep(ch, maps_[b]);
                    for (size_t k = 0; k < r.qubits.size(); k++) {
                        p.push(r.qubits[k], r.paulis[k]);
                    }
                }
                MeasurementTag t;
                t.kind = MeasKind::Product;
                t.logical_instr = instr_;
                t.noiseless = true;
                PhysOp &op = emit(OpKind::MPP, {}, true);
                add_product(op, p);
                pc_.logical_meas.push_back({(uint32_t)pc_.meas.size()});
                pc_.meas.push_back(t);
                break;
            }
            case InstructionKind::FeedForward:
                if (ins.ff_kind != InstructionKind::PauliGate) {
                    throw std::invalid_argument("compile: Clifford feed-forward must be resolved first");
                }
                break;
        }
    }

    const LogicalCircuit &c_;
    CompileOptions opt_;
    PhysicalCircuit pc_;
    std::vector<std::vector<uint32_t>> maps_;
    std::vector<bool> live_;
    uint32_t instr_ = 0;
};

}  // namespace

PhysicalCircuit compile_circuit(const LogicalCircuit &c, const CodeLayout &layout, const CompileOptions &opt) {
    auto errs = validate_circuit(c);
    if (!errs.empty()) {
        throw std::invalid_argument("compile: invalid circuit: " + errs.front().message);
    }
    return Compiler(c, layout, opt).run();
}

}  // namespace tcd
