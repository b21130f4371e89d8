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

#include "tcd/logical_circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tcd {

namespace {

struct KindName {
    InstructionKind kind;
    const char *name;
};

const KindName kNames[] = {
    {InstructionKind::InitZ, "INIT_Z"},
    {InstructionKind::InitX, "INIT_X"},
    {InstructionKind::InitMagic, "INIT_MAGIC"},
    {InstructionKind::TransversalCNOT, "CNOT"},
    {InstructionKind::FoldH, "H"},
    {InstructionKind::FoldS, "S"},
    {InstructionKind::FoldSDagger, "S_DAG"},
    {InstructionKind::SERound, "SE"},
    {InstructionKind::MeasureZ, "M"},
    {InstructionKind::MeasureX, "MX"},
    {InstructionKind::MeasurePauli, "MPP"},
    {InstructionKind::FeedForward, "FF"},
};

bool is_gate_kind(InstructionKind k) {
    return k == InstructionKind::TransversalCNOT || k == InstructionKind::FoldH || k == InstructionKind::FoldS ||
           k == InstructionKind::FoldSDagger || k == InstructionKind::PauliGate;
}

// The gate an instruction performs once branches are fixed: FeedForward yields its ff_kind.
void apply_gate(PauliString &p, InstructionKind k, const std::vector<uint32_t> &t, Direction dir) {
    switch (k) {
        case InstructionKind::TransversalCNOT:
            conjugate_through_gate(p, GateKind::CNOT, t, dir);
            break;
        case InstructionKind::FoldH:
            conjugate_through_gate(p, GateKind::H, t, dir);
            break;
        case InstructionKind::FoldS:
        case InstructionKind::FoldSDagger:
            conjugate_through_gate(p, GateKind::S, t, dir);
            break;
        default:
            break;
    }
}

}  // namespace

const char *instruction_name(InstructionKind k) {
    for (const auto &kn : kNames) {
        if (kn.kind == k) {
            return kn.name;
        }
    }
    return "PAULI";
}

bool LogicalInstruction::is_gate() const {
    return is_gate_kind(kind) || (kind == InstructionKind::FeedForward && ff_kind != InstructionKind::PauliGate);
}

bool LogicalInstruction::is_init() const {
    return kind == InstructionKind::InitZ || kind == InstructionKind::InitX || kind == InstructionKind::InitMagic;
}

bool LogicalInstruction::is_measurement() const {
    return kind == InstructionKind::MeasureZ || kind == InstructionKind::MeasureX || kind == InstructionKind::MeasurePauli;
}

bool LogicalInstruction::operator==(const LogicalInstruction &o) const {
    return kind == o.kind && targets == o.targets && pauli == o.pauli && product == o.product &&
           ff_kind == o.ff_kind && condition == o.condition && noiseless == o.noiseless && time_index == o.time_index;
}

size_t LogicalCircuit::append(LogicalInstruction ins) {
    ins.time_index = instructions_.size();
    for (uint32_t q : ins.targets) {
        if (q >= num_qubits_) {
            throw std::out_of_range("instruction target out of range");
        }
    }
    if (ins.kind == InstructionKind::MeasurePauli) {
        if (ins.product.num_qubits() != num_qubits_) {
            throw std::invalid_argument("MPP product has wrong qubit count");
        }
        meas_instr_.push_back(instructions_.size());
        meas_qubit_.push_back((uint32_t)num_qubits_);
    } else if (ins.kind == InstructionKind::MeasureZ || ins.kind == InstructionKind::MeasureX) {
        for (uint32_t q : ins.targets) {
            meas_instr_.push_back(instructions_.size());
            meas_qubit_.push_back(q);
        }
    }
    instructions_.push_back(std::move(ins));
    return instructions_.size() - 1;
}

PauliString LogicalCircuit::measured_operator(size_t ordinal) const {
    const auto &ins = instructions_.at(meas_instr_.at(ordinal));
    if (ins.kind == InstructionKind::MeasurePauli) {
        return ins.product;
    }
    PauliString p(num_qubits_);
    p.set(meas_qubit_[ordinal], ins.kind == InstructionKind::MeasureZ ? 'Z' : 'X');
    return p;
}

size_t LogicalCircuit::first_measurement_of(size_t instr) const {
    auto it = std::lower_bound(meas_instr_.begin(), meas_instr_.end(), instr);
    if (it == meas_instr_.end() || *it != instr) {
        throw std::invalid_argument("instruction is not a measurement");
    }
    return (size_t)(it - meas_instr_.begin());
}

static LogicalInstruction make(InstructionKind k, std::vector<uint32_t> t) {
    LogicalInstruction ins;
    ins.kind = k;
    ins.targets = std::move(t);
    return ins;
}

void LogicalCircuit::init_z(std::vector<uint32_t> q) { append(make(InstructionKind::InitZ, std::move(q))); }
void LogicalCircuit::init_x(std::vector<uint32_t> q) { append(make(InstructionKind::InitX, std::move(q))); }
void LogicalCircuit::init_magic(std::vector<uint32_t> q) { append(make(InstructionKind::InitMagic, std::move(q))); }
void LogicalCircuit::cnot(std::vector<uint32_t> pairs) {
    if (pairs.size() % 2) {
        throw std::invalid_argument("CNOT needs control/target pairs");
    }
    append(make(InstructionKind::TransversalCNOT, std::move(pairs)));
}
void LogicalCircuit::fold_h(std::vector<uint32_t> q) { append(make(InstructionKind::FoldH, std::move(q))); }
void LogicalCircuit::fold_s(std::vector<uint32_t> q) { append(make(InstructionKind::FoldS, std::move(q))); }
void LogicalCircuit::fold_s_dagger(std::vector<uint32_t> q) {
    append(make(InstructionKind::FoldSDagger, std::move(q)));
}
void LogicalCircuit::pauli(char p, std::vector<uint32_t> q) {
    auto ins = make(InstructionKind::PauliGate, std::move(q));
    ins.pauli = p;
    append(std::move(ins));
}
void LogicalCircuit::se(std::vector<uint32_t> q, bool noiseless) {
    auto ins = make(InstructionKind::SERound, std::move(q));
    ins.noiseless = noiseless;
    append(std::move(ins));
}
void LogicalCircuit::measure_z(std::vector<uint32_t> q) { append(make(InstructionKind::MeasureZ, std::move(q))); }
void LogicalCircuit::measure_x(std::vector<uint32_t> q) { append(make(InstructionKind::MeasureX, std::move(q))); }
void LogicalCircuit::measure_pauli(const PauliString &p) {
    auto ins = make(InstructionKind::MeasurePauli, {});
    ins.product = p;
    append(std::move(ins));
}
void LogicalCircuit::feed_forward(InstructionKind gate, std::vector<uint32_t> q, size_t condition, char pauli) {
    auto ins = make(InstructionKind::FeedForward, std::move(q));
    ins.ff_kind = gate;
    ins.pauli = pauli;
    ins.condition = condition;
    append(std::move(ins));
}

std::string LogicalCircuit::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits_ << "\n";
    for (const auto &ins : instructions_) {
        if (ins.kind == InstructionKind::PauliGate) {
            out << ins.pauli;
        } else {
            out << instruction_name(ins.kind);
        }
        if (ins.kind == InstructionKind::FeedForward) {
            out << ' ';
            if (ins.ff_kind == InstructionKind::PauliGate) {
                out << ins.pauli;
            } else {
                out << instruction_name(ins.ff_kind);
            }
        }
        if (ins.kind == InstructionKind::MeasurePauli) {
            out << ' ' << ins.product.sparse_str();
        }
        for (uint32_t t : ins.targets) {
            out << ' ' << t;
        }
        if (ins.noiseless) {
            out << " noiseless";
        }
        if (ins.condition) {
            out << " @cond=" << *ins.condition;
        }
        out << "\n";
    }
    return out.str();
}

static InstructionKind parse_kind(const std::string &w, char *pauli) {
    if (w == "X" || w == "Y" || w == "Z") {
        *pauli = w[0];
        return InstructionKind::PauliGate;
    }
    for (const auto &kn : kNames) {
        if (w == kn.name) {
            return kn.kind;
        }
    }
    throw std::invalid_argument("unknown instruction: " + w);
}

LogicalCircuit LogicalCircuit::from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::optional<LogicalCircuit> c;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> words;
        std::string w;
        while (ls >> w) {
            words.push_back(w);
        }
        if (words.empty()) {
            continue;
        }
        auto fail = [&](const std::string &msg) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
        };
        if (words[0] == "QUBITS") {
            if (c || words.size() != 2) {
                fail("QUBITS must appear once, first");
            }
            c = LogicalCircuit(std::stoul(words[1]));
            continue;
        }
        if (!c) {
            fail("missing QUBITS header");
        }
        LogicalInstruction ins;
        size_t k = 1;
        ins.kind = parse_kind(words[0], &ins.pauli);
        if (ins.kind == InstructionKind::FeedForward) {
            if (words.size() < 2) {
                fail("FF needs a gate");
            }
            ins.ff_kind = parse_kind(words[1], &ins.pauli);
            k = 2;
        }
        if (ins.kind == InstructionKind::MeasurePauli) {
            if (words.size() < 2) {
                fail("MPP needs a product");
            }
            ins.product = PauliString::from_sparse(words[1], c->num_qubits());
            k = 2;
        }
        for (; k < words.size(); k++) {
            const std::string &t = words[k];
            if (t == "noiseless") {
                ins.noiseless = true;
            } else if (t.rfind("@cond=", 0) == 0) {
                ins.condition = std::stoul(t.substr(6));
            } else {
                for (char ch : t) {
                    if (!std::isdigit((unsigned char)ch)) {
                        fail("bad target " + t);
                    }
                }
                ins.targets.push_back((uint32_t)std::stoul(t));
            }
        }
        if (ins.kind == InstructionKind::TransversalCNOT && ins.targets.size() % 2) {
            fail("CNOT needs pairs");
        }
        c->append(std::move(ins));
    }
    if (!c) {
        throw std::invalid_argument("empty circuit text");
    }
    return *c;
}

std::vector<ValidationError> validate_circuit(const LogicalCircuit &c, const ValidationOptions &opt) {
    std::vector<ValidationError> errs;
    size_t n = c.num_qubits();
    enum State { Fresh, Live, Dead };
    std::vector<State> st(n, Fresh);
    std::vector<long> last_gate(n, -1);
    std::vector<size_t> se_since(n, 0);
    bool after_mpp = false;
    size_t meas_count = 0;
    auto err = [&](ValidationCode code, size_t i, const std::string &m) { errs.push_back({code, i, m}); };
    for (size_t i = 0; i < c.size(); i++) {
        const auto &ins = c[i];
        bool bad_target = false;
        for (uint32_t q : ins.targets) {
            if (q >= n) {
                err(ValidationCode::TargetOutOfRange, i, "target " + std::to_string(q) + " out of range");
                bad_target = true;
            }
        }
        if (bad_target) {
            continue;
        }
        std::vector<uint32_t> sorted = ins.targets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            err(ValidationCode::DuplicateTarget, i, "repeated target");
        }
        auto need_live = [&](uint32_t q) {
            if (st[q] == Fresh) {
                err(ValidationCode::UseBeforeInit, i, "qubit " + std::to_string(q) + " used before init");
                return false;
            }
            if (st[q] == Dead) {
                err(ValidationCode::UseAfterMeasure, i, "qubit " + std::to_string(q) + " used after measurement");
                return false;
            }
            return true;
        };
        switch (ins.kind) {
            case InstructionKind::InitZ:
            case InstructionKind::InitX:
            case InstructionKind::InitMagic:
                for (uint32_t q : ins.targets) {
                    if (st[q] != Fresh) {
                        err(ValidationCode::DoubleInit, i, "qubit " + std::to_string(q) + " initialized twice");
                    }
                    st[q] = Live;
                }
                break;
            case InstructionKind::SERound:
                for (uint32_t q : ins.targets) {
                    need_live(q);
                }
                for (size_t q = 0; q < n; q++) {
                    bool hit = ins.targets.empty() ? st[q] == Live
                                                   : std::find(ins.targets.begin(), ins.targets.end(), q) != ins.targets.end();
                    if (hit) {
                        se_since[q]++;
                    }
                }
                break;
            case InstructionKind::MeasureZ:
            case InstructionKind::MeasureX:
                for (uint32_t q : ins.targets) {
                    if (st[q] == Dead) {
                        err(ValidationCode::MeasureTwice, i, "qubit " + std::to_string(q) + " measured twice");
                    } else if (need_live(q)) {
                        st[q] = Dead;
                    }
                }
                meas_count += ins.targets.size();
                break;
            case InstructionKind::MeasurePauli:
                if (ins.product.num_qubits() != n || ins.product.is_identity()) {
                    err(ValidationCode::BadProduct, i, "MPP product must be a non-identity Pauli on all qubits");
                } else {
                    BitVector supp = ins.product.x;
                    supp |= ins.product.z;
                    for (size_t q : supp.ones()) {
                        need_live((uint32_t)q);
                    }
                }
                after_mpp = true;
                meas_count++;
                break;
            case InstructionKind::PauliGate:
                if (ins.pauli != 'X' && ins.pauli != 'Y' && ins.pauli != 'Z') {
                    err(ValidationCode::BadFeedForward, i, "Pauli gate needs X, Y or Z");
                }
                for (uint32_t q : ins.targets) {
                    need_live(q);
                }
                break;
            case InstructionKind::FeedForward:
                if (!ins.condition || *ins.condition >= meas_count) {
                    err(ValidationCode::DanglingCondition, i, "feed-forward condition must name an earlier measurement");
                }
                if (ins.ff_kind == InstructionKind::PauliGate) {
                    if (ins.pauli != 'X' && ins.pauli != 'Y' && ins.pauli != 'Z') {
                        err(ValidationCode::BadFeedForward, i, "Pauli feed-forward needs X, Y or Z");
                    }
                } else if (!is_gate_kind(ins.ff_kind)) {
                    err(ValidationCode::BadFeedForward, i, "feed-forward must apply a gate");
                }
                [[fallthrough]];
            default:
                if (ins.is_gate()) {
                    if (ins.kind == InstructionKind::TransversalCNOT && ins.targets.size() % 2) {
                        err(ValidationCode::BadProduct, i, "CNOT needs pairs");
                    }
                    if (after_mpp) {
                        err(ValidationCode::GateAfterMeasurePauli, i, "gate after a Pauli product measurement");
                    }
                    for (uint32_t q : ins.targets) {
                        if (!need_live(q)) {
                            continue;
                        }
                        if (last_gate[q] >= 0 && se_since[q] < opt.min_se_between_gates) {
                            err(ValidationCode::MissingSERound, i,
                                "qubit " + std::to_string(q) + " lacks an SE round since its previous gate");
                        }
                        last_gate[q] = (long)i;
                        se_since[q] = 0;
                    }
                } else {
                    for (uint32_t q : ins.targets) {
                        need_live(q);
                    }
                }
                break;
        }
    }
    return errs;
}

PropagationPath back_propagate(const LogicalCircuit &c, const PauliString &product, size_t from_time) {
    if (product.num_qubits() != c.num_qubits() || from_time > c.size()) {
        throw std::invalid_argument("back_propagate: bad product or time");
    }
    PropagationPath path;
    path.from_time = from_time;
    path.ops.resize(from_time);
    path.init_support = PauliString(c.num_qubits());
    PauliString cur = product;
    for (size_t t = from_time; t-- > 0;) {
        path.ops[t] = cur;
        const auto &ins = c[t];
        switch (ins.kind) {
            case InstructionKind::InitZ:
            case InstructionKind::InitX:
            case InstructionKind::InitMagic:
                for (uint32_t q : ins.targets) {
                    path.init_support.x.set(q, cur.x.get(q));
                    path.init_support.z.set(q, cur.z.get(q));
                    cur.x.set(q, false);
                    cur.z.set(q, false);
                }
                break;
            case InstructionKind::MeasureZ:
            case InstructionKind::MeasureX:
                for (uint32_t q : ins.targets) {
                    if (cur.x.get(q) || cur.z.get(q)) {
                        throw std::logic_error("back_propagate: product supported on a measured qubit");
                    }
                }
                break;
            case InstructionKind::MeasurePauli:
                if (!symplectic_commutes(cur, ins.product)) {
                    throw std::logic_error("back_propagate: product anticommutes with an earlier MPP");
                }
                break;
            case InstructionKind::FeedForward:
                if (ins.ff_kind != InstructionKind::PauliGate) {
                    throw std::logic_error("back_propagate: unresolved Clifford feed-forward");
                }
                break;
            default:
                apply_gate(cur, ins.kind, ins.targets, Direction::BACKWARD);
                break;
        }
    }
    if (!cur.is_identity()) {
        throw std::logic_error("back_propagate: product reaches uninitialized qubits");
    }
    return path;
}

PauliString forward_propagate(const LogicalCircuit &c, PauliString p, size_t from, size_t to) {
    for (size_t t = from; t < to && t < c.size(); t++) {
        const auto &ins = c[t];
        if (ins.kind == InstructionKind::FeedForward) {
            if (ins.ff_kind != InstructionKind::PauliGate) {
                throw std::logic_error("forward_propagate: unresolved Clifford feed-forward");
            }
            continue;
        }
        apply_gate(p, ins.kind, ins.targets, Direction::FORWARD);
    }
    return p;
}

size_t count_clifford_feed_forward(const LogicalCircuit &c) {
    size_t k = 0;
    for (const auto &ins : c.instructions()) {
        if (ins.kind == InstructionKind::FeedForward && ins.ff_kind != InstructionKind::PauliGate) {
            k++;
        }
    }
    return k;
}

LogicalCircuit resolve_branches(const LogicalCircuit &c, const std::vector<bool> &branch) {
    if (branch.size() != count_clifford_feed_forward(c)) {
        throw std::invalid_argument("resolve_branches: one bit per Clifford feed-forward required");
    }
    LogicalCircuit out(c.num_qubits());
    size_t k = 0;
    // Measurement ordinals are unchanged since only gates are dropped.
    for (const auto &ins : c.instructions()) {
        if (ins.kind == InstructionKind::FeedForward && ins.ff_kind != InstructionKind::PauliGate) {
            if (branch[k++]) {
                LogicalInstruction g;
                g.kind = ins.ff_kind;
                g.targets = ins.targets;
                out.append(std::move(g));
            }
            continue;
        }
        out.append(ins);
    }
    return out;
}

LogicalCircuit build_random_clifford(uint64_t seed, const RandomCliffordOptions &opt) {
    size_t n = opt.num_qubits;
    if (n == 0 || n % 2) {
        throw std::invalid_argument("random Clifford circuit needs an even qubit count");
    }
    std::mt19937_64 rng(seed);
    auto shuffled = [&]() {
        std::vector<uint32_t> p(n);
        for (size_t i = 0; i < n; i++) {
            p[i] = (uint32_t)i;
        }
        for (size_t i = n - 1; i > 0; i--) {
            std::swap(p[i], p[rng() % (i + 1)]);
        }
        return p;
    };
    LogicalCircuit c(n);
    auto perm = shuffled();
    std::vector<uint32_t> zs(perm.begin(), perm.begin() + n / 2), xs(perm.begin() + n / 2, perm.end());
    std::sort(zs.begin(), zs.end());
    std::sort(xs.begin(), xs.end());
    c.init_z(zs);
    c.init_x(xs);
    for (size_t layer = 1; layer <= opt.depth; layer++) {
        auto p = shuffled();
        if (layer % 2) {
            std::vector<uint32_t> pairs;
            for (size_t k = 0; k < n; k += 2) {
                if (rng() & 1) {
                    pairs.push_back(p[k]);
                    pairs.push_back(p[k + 1]);
                } else {
                    pairs.push_back(p[k + 1]);
                    pairs.push_back(p[k]);
                }
            }
            c.cnot(pairs);
        } else {
            std::vector<uint32_t> hs(p.begin(), p.begin() + n / 2), ss(p.begin() + n / 2, p.end());
            std::sort(hs.begin(), hs.end());
            std::sort(ss.begin(), ss.end());
            c.fold_h(hs);
            c.fold_s(ss);
        }
        c.se();
    }
    if (opt.final_products) {
        c.se({}, true);
        size_t end = c.size();
        for (size_t q = 0; q < n; q++) {
            PauliString s(n);
            s.set(q, std::binary_search(zs.begin(), zs.end(), (uint32_t)q) ? 'Z' : 'X');
            c.measure_pauli(forward_propagate(c, s, 0, end));
        }
    }
    return c;
}

LogicalCircuit build_ghz_comparison() {
    LogicalCircuit c(3);
    c.init_x({0});
    c.init_z({1, 2});
    c.cnot({0, 1});
    c.se();
    c.cnot({1, 2});
    c.se();
    c.measure_z({0, 1, 2});
    return c;
}

LogicalCircuit build_memory(size_t rounds) {
    if (rounds == 0) {
        throw std::invalid_argument("memory needs at least one round");
    }
    LogicalCircuit c(1);
    c.init_z({0});
    for (size_t r = 0; r < rounds; r++) {
        c.se();
    }
    c.measure_z({0});
    return c;
}

LogicalCircuit build_distillation(DistillationLayout *layout) {
    DistillationLayout lay;
    lay.code_qubits = {0, 1, 2, 3};
    lay.output = 4;
    const size_t n = 16;
    // 11 multi-qubit rotations of the 15-qubit code: weight >= 2 subsets of the code qubits,
    // with the output attached on even weight.
    std::vector<std::vector<uint32_t>> odd_rot, even_rot;
    for (uint32_t v = 1; v < 16; v++) {
        int w = __builtin_popcount(v);
        if (w < 2) {
            continue;
        }
        std::vector<uint32_t> supp;
        for (uint32_t b = 0; b < 4; b++) {
            if (v >> b & 1) {
                supp.push_back(b);
            }
        }
        if (w % 2 == 0) {
            supp.push_back(lay.output);
            even_rot.push_back(supp);
        } else {
            odd_rot.push_back(supp);
        }
    }
    uint32_t next = 5;
    for (size_t k = 0; k < odd_rot.size(); k++) {
        lay.odd_ancillas.push_back(next++);
    }
    for (size_t k = 0; k < even_rot.size(); k++) {
        lay.even_ancillas.push_back(next++);
    }
    LogicalCircuit c(n);
    std::vector<uint32_t> magic = lay.code_qubits;
    magic.insert(magic.end(), lay.odd_ancillas.begin(), lay.odd_ancillas.end());
    magic.insert(magic.end(), lay.even_ancillas.begin(), lay.even_ancillas.end());
    std::sort(magic.begin(), magic.end());
    c.init_magic(magic);
    c.init_x({lay.output});
    c.se();
    c.se();

    // Greedy layering: each layer uses every qubit at most once.
    auto schedule = [&](const std::vector<std::vector<uint32_t>> &rots, const std::vector<uint32_t> &anc) {
        std::vector<std::pair<uint32_t, uint32_t>> todo;
        for (size_t k = 0; k < rots.size(); k++) {
            for (uint32_t q : rots[k]) {
                todo.push_back({q, anc[k]});
            }
        }
        while (!todo.empty()) {
            std::vector<bool> used(n, false);
            std::vector<uint32_t> pairs;
            std::vector<std::pair<uint32_t, uint32_t>> rest;
            for (auto [a, b] : todo) {
                if (!used[a] && !used[b]) {
                    used[a] = used[b] = true;
                    pairs.push_back(a);
                    pairs.push_back(b);
                } else {
                    rest.push_back({a, b});
                }
            }
            c.cnot(pairs);
            c.se();
            todo = rest;
        }
    };
    auto stage = [&](const std::vector<std::vector<uint32_t>> &rots, const std::vector<uint32_t> &anc) {
        std::vector<size_t> ords;
        size_t first = c.num_measurements();
        c.measure_z(anc);
        for (size_t k = 0; k < anc.size(); k++) {
            ords.push_back(first + k);
            c.feed_forward(InstructionKind::PauliGate, rots[k], first + k, 'Z');
        }
        return ords;
    };
    schedule(odd_rot, lay.odd_ancillas);
    lay.stage_measurements.push_back(stage(odd_rot, lay.odd_ancillas));
    schedule(even_rot, lay.even_ancillas);
    auto s2 = stage(even_rot, lay.even_ancillas);
    size_t first = c.num_measurements();
    c.measure_x(lay.code_qubits);
    for (size_t k = 0; k < lay.code_qubits.size(); k++) {
        s2.push_back(first + k);
    }
    lay.stage_measurements.push_back(s2);
    PauliString y(n);
    y.set(lay.output, 'Y');
    lay.stage_measurements.push_back({c.num_measurements()});
    c.se({lay.output}, true);
    c.measure_pauli(y);
    if (layout) {
        *layout = lay;
    }
    return c;
}

LogicalCircuit build_small_angle_example_ir() {
    LogicalCircuit c(3);
    c.init_x({0});
    c.init_magic({1, 2});
    c.cnot({0, 1});
    c.se();
    c.measure_z({1});
    c.feed_forward(InstructionKind::FoldS, {0}, 0);
    c.se();
    c.fold_h({0});
    c.se();
    c.cnot({0, 2});
    c.se();
    c.measure_z({2});
    return c;
}

LogicalCircuit build_small_angle_example(bool branch_bit) {
    return resolve_branches(build_small_angle_example_ir(), {branch_bit});
}

}  // namespace tcd
