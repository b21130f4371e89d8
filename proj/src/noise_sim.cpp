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

#include "tcd/noise_sim.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

namespace tcd {

namespace {

void add_dep1(std::vector<NoiseComponent> &out, uint32_t op, bool before, uint32_t q, double p) {
    for (uint8_t code : {1, 3, 2}) {
        NoiseComponent c;
        c.op = op;
        c.before = before;
        c.q0 = q;
        c.p0 = code;
        c.prob = p / 3;
        out.push_back(c);
    }
}

void add_dep2(std::vector<NoiseComponent> &out, uint32_t op, uint32_t a, uint32_t b, double p) {
    for (uint8_t pa = 0; pa < 4; pa++) {
        for (uint8_t pb = 0; pb < 4; pb++) {
            if (pa == 0 && pb == 0) {
                continue;
            }
            NoiseComponent c;
            c.op = op;
            c.q0 = a;
            c.p0 = pa;
            c.q1 = b;
            c.p1 = pb;
            c.prob = p / 15;
            out.push_back(c);
        }
    }
}

void add_pauli(std::vector<NoiseComponent> &out, uint32_t op, bool before, uint32_t q, uint8_t code, double p) {
    NoiseComponent c;
    c.op = op;
    c.before = before;
    c.q0 = q;
    c.p0 = code;
    c.prob = p;
    out.push_back(c);
}

uint8_t pauli_code(char p) {
    switch (p) {
        case 'X': return 1;
        case 'Z': return 2;
        case 'Y': return 3;
        default: return 0;
    }
}

}  // namespace

double compose_probability(double a, double b) { return a * (1 - b) + b * (1 - a); }

std::vector<NoiseComponent> enumerate_noise(const PhysicalCircuit &pc, const NoiseModel &noise) {
    if (noise.p < 0 || noise.p >= 1) {
        throw std::invalid_argument("noise: p must be in [0, 1)");
    }
    std::vector<NoiseComponent> out;
    if (noise.p == 0) {
        return out;
    }
    const double p = noise.p;
    const bool circuit = noise.kind == NoiseKind::CircuitLevel;
    for (uint32_t i = 0; i < pc.ops.size(); i++) {
        const PhysOp &op = pc.ops[i];
        if (op.noiseless) {
            continue;
        }
        switch (op.kind) {
            case OpKind::R:
            case OpKind::RX:
                if (circuit) {
                    for (uint32_t q : op.targets) add_dep1(out, i, false, q, p);
                }
                break;
            case OpKind::M:
            case OpKind::MX:
                if (circuit) {
                    for (uint32_t q : op.targets) add_dep1(out, i, true, q, p);
                } else {
                    for (uint32_t k = 0; k < op.targets.size(); k++) {
                        uint32_t m = op.first_measurement + k;
                        if (pc.meas[m].kind != MeasKind::Stabilizer) {
                            continue;
                        }
                        NoiseComponent c;
                        c.kind = ComponentKind::MeasFlip;
                        c.op = i;
                        c.before = true;
                        c.q0 = op.targets[k];
                        c.meas = m;
                        c.prob = p;
                        out.push_back(c);
                    }
                }
                break;
            case OpKind::CX:
            case OpKind::CZ:
                if (circuit) {
                    for (size_t k = 0; k + 1 < op.targets.size(); k += 2) {
                        add_dep2(out, i, op.targets[k], op.targets[k + 1], p);
                    }
                }
                break;
            case OpKind::IDLE:
                if (circuit) {
                    for (uint32_t q : op.targets) add_dep1(out, i, false, q, p);
                }
                break;
            case OpKind::INJECT:
                for (uint32_t q : op.targets) add_dep1(out, i, false, q, p);
                break;
            case OpKind::SE_DATA:
                if (!circuit) {
                    for (uint32_t q : op.targets) {
                        add_pauli(out, i, false, q, 1, p);
                        add_pauli(out, i, false, q, 2, p);
                    }
                }
                break;
            default:
                break;
        }
    }
    return out;
}

std::vector<NoiseComponent> decompose_components(const std::vector<NoiseComponent> &comps, bool split_qubits) {
    std::vector<NoiseComponent> out;
    auto single = [&](const NoiseComponent &c, uint32_t q, uint8_t code) {
        NoiseComponent part = c;
        part.q0 = q;
        part.p0 = code;
        part.q1 = UINT32_MAX;
        part.p1 = 0;
        out.push_back(part);
    };
    for (const auto &c : comps) {
        if (c.kind != ComponentKind::Pauli) {
            out.push_back(c);
            continue;
        }
        for (uint8_t mask : {1, 2}) {
            uint8_t a = c.p0 & mask;
            uint8_t b = c.q1 == UINT32_MAX ? 0 : c.p1 & mask;
            if (a && b && !split_qubits) {
                NoiseComponent part = c;
                part.p0 = a;
                part.p1 = b;
                out.push_back(part);
                continue;
            }
            if (a) single(c, c.q0, a);
            if (b) single(c, c.q1, b);
        }
    }
    return out;
}

FrameSampler::FrameSampler(const PhysicalCircuit &pc, const NoiseModel &noise)
    : FrameSampler(pc, enumerate_noise(pc, noise)) {}

FrameSampler::FrameSampler(const PhysicalCircuit &pc, std::vector<NoiseComponent> comps)
    : pc_(pc), comps_(std::move(comps)) {
    std::map<double, size_t> idx;
    for (uint32_t i = 0; i < comps_.size(); i++) {
        double q = comps_[i].prob;
        if (q <= 0) {
            continue;
        }
        auto it = idx.find(q);
        if (it == idx.end()) {
            it = idx.emplace(q, classes_.size()).first;
            classes_.push_back({q, {}});
        }
        classes_[it->second].second.push_back(i);
    }
}

ShotBatch FrameSampler::sample(uint64_t seed, uint64_t batch_index, size_t lanes, bool randomize) const {
    if (lanes > kLanes) {
        throw std::invalid_argument("sample: too many lanes");
    }
    std::seed_seq ss{(uint32_t)seed, (uint32_t)(seed >> 32), (uint32_t)batch_index, (uint32_t)(batch_index >> 32)};
    std::mt19937_64 rng(ss);
    std::vector<std::pair<uint32_t, uint32_t>> hits;
    for (const auto &[q, members] : classes_) {
        uint64_t n = (uint64_t)members.size() * lanes;
        if (q >= 1) {
            for (uint64_t pos = 0; pos < n; pos++) hits.push_back({members[pos / lanes], (uint32_t)(pos % lanes)});
            continue;
        }
        std::geometric_distribution<uint64_t> geo(q);
        for (uint64_t pos = geo(rng); pos < n; pos += 1 + geo(rng)) {
            hits.push_back({members[pos / lanes], (uint32_t)(pos % lanes)});
        }
    }
    std::sort(hits.begin(), hits.end());
    return run(hits, lanes, rng(), 0, randomize);
}

ShotBatch FrameSampler::inject(std::vector<std::pair<uint32_t, uint32_t>> hits, size_t lanes) const {
    std::sort(hits.begin(), hits.end());
    return run(hits, lanes, 0, 0, false);
}

ShotBatch FrameSampler::run(std::vector<std::pair<uint32_t, uint32_t>> &hits, size_t lanes, uint64_t seed,
                            uint64_t batch, bool randomize) const {
    constexpr size_t W = kLaneWords;
    const size_t n = pc_.num_qubits;
    std::vector<uint64_t> ex(n * W, 0), ez(n * W, 0), rx(n * W, 0), rz(n * W, 0);
    ShotBatch out;
    out.lanes = lanes;
    out.num_meas = pc_.num_measurements();
    out.err.assign(out.num_meas * W, 0);
    out.rnd.assign(out.num_meas * W, 0);
    std::mt19937_64 rng(seed ^ (batch * 0x9E3779B97F4A7C15ull));
    auto rand_words = [&](uint64_t *dst) {
        for (size_t w = 0; w < W; w++) dst[w] ^= randomize ? rng() : 0;
    };
    auto clear = [&](std::vector<uint64_t> &f, uint32_t q) { std::fill_n(&f[q * W], W, 0); };
    auto apply_pauli = [&](uint32_t q, uint8_t code, size_t lane) {
        uint64_t bit = 1ull << (lane % 64);
        if (code & 1) ex[q * W + lane / 64] ^= bit;
        if (code & 2) ez[q * W + lane / 64] ^= bit;
    };
    // anticommutation parity of a product with both frames
    auto product_parity = [&](const SparsePauli &p, uint64_t *e, uint64_t *r) {
        for (size_t k = 0; k < p.qubits.size(); k++) {
            uint32_t q = p.qubits[k];
            char c = p.paulis[k];
            for (size_t w = 0; w < W; w++) {
                uint64_t ea = 0, ra = 0;
                if (c == 'X' || c == 'Y') {
                    ea ^= ez[q * W + w];
                    ra ^= rz[q * W + w];
                }
                if (c == 'Z' || c == 'Y') {
                    ea ^= ex[q * W + w];
                    ra ^= rx[q * W + w];
                }
                e[w] ^= ea;
                r[w] ^= ra;
            }
        }
    };
    auto randomize_product = [&](const SparsePauli &p) {
        if (!randomize) return;
        uint64_t mask[W];
        for (size_t w = 0; w < W; w++) mask[w] = rng();
        for (size_t k = 0; k < p.qubits.size(); k++) {
            uint32_t q = p.qubits[k];
            uint8_t code = pauli_code(p.paulis[k]);
            for (size_t w = 0; w < W; w++) {
                if (code & 1) rx[q * W + w] ^= mask[w];
                if (code & 2) rz[q * W + w] ^= mask[w];
            }
        }
    };

    size_t h = 0;
    std::vector<std::pair<uint32_t, uint32_t>> meas_flips;
    auto apply_hits = [&](uint32_t op, bool before) {
        while (h < hits.size()) {
            const NoiseComponent &c = comps_[hits[h].first];
            if (c.op != op || c.before != before) break;
            if (c.kind == ComponentKind::MeasFlip) {
                meas_flips.push_back({c.meas, hits[h].second});
            } else {
                apply_pauli(c.q0, c.p0, hits[h].second);
                if (c.q1 != UINT32_MAX) apply_pauli(c.q1, c.p1, hits[h].second);
            }
            h++;
        }
    };

    for (uint32_t i = 0; i < pc_.ops.size(); i++) {
        const PhysOp &op = pc_.ops[i];
        apply_hits(i, true);
        const auto &t = op.targets;
        switch (op.kind) {
            case OpKind::R:
                for (uint32_t q : t) {
                    clear(ex, q), clear(ez, q), clear(rx, q), clear(rz, q);
                    rand_words(&rz[q * W]);
                }
                break;
            case OpKind::RX:
                for (uint32_t q : t) {
                    clear(ex, q), clear(ez, q), clear(rx, q), clear(rz, q);
                    rand_words(&rx[q * W]);
                }
                break;
            case OpKind::H:
                for (uint32_t q : t) {
                    for (size_t w = 0; w < W; w++) {
                        std::swap(ex[q * W + w], ez[q * W + w]);
                        std::swap(rx[q * W + w], rz[q * W + w]);
                    }
                }
                break;
            case OpKind::S:
            case OpKind::S_DAG:
                for (uint32_t q : t) {
                    for (size_t w = 0; w < W; w++) {
                        ez[q * W + w] ^= ex[q * W + w];
                        rz[q * W + w] ^= rx[q * W + w];
                    }
                }
                break;
            case OpKind::CX:
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint32_t c = t[k], g = t[k + 1];
                    for (size_t w = 0; w < W; w++) {
                        ex[g * W + w] ^= ex[c * W + w];
                        ez[c * W + w] ^= ez[g * W + w];
                        rx[g * W + w] ^= rx[c * W + w];
                        rz[c * W + w] ^= rz[g * W + w];
                    }
                }
                break;
            case OpKind::CZ:
                for (size_t k = 0; k + 1 < t.size(); k += 2) {
                    uint32_t a = t[k], b = t[k + 1];
                    for (size_t w = 0; w < W; w++) {
                        ez[a * W + w] ^= ex[b * W + w];
                        ez[b * W + w] ^= ex[a * W + w];
                        rz[a * W + w] ^= rx[b * W + w];
                        rz[b * W + w] ^= rx[a * W + w];
                    }
                }
                break;
            case OpKind::M:
                for (size_t k = 0; k < t.size(); k++) {
                    uint32_t q = t[k];
                    size_t m = op.first_measurement + k;
                    std::copy_n(&ex[q * W], W, &out.err[m * W]);
                    std::copy_n(&rx[q * W], W, &out.rnd[m * W]);
                    rand_words(&rz[q * W]);
                }
                break;
            case OpKind::MX:
                for (size_t k = 0; k < t.size(); k++) {
                    uint32_t q = t[k];
                    size_t m = op.first_measurement + k;
                    std::copy_n(&ez[q * W], W, &out.err[m * W]);
                    std::copy_n(&rz[q * W], W, &out.rnd[m * W]);
                    rand_words(&rx[q * W]);
                }
                break;
            case OpKind::MPP:
                for (uint32_t k = 0; k < op.product_count; k++) {
                    const SparsePauli &p = pc_.products[op.product_begin + k];
                    size_t m = op.first_measurement + k;
                    product_parity(p, &out.err[m * W], &out.rnd[m * W]);
                    randomize_product(p);
                }
                break;
            case OpKind::PREP:
                for (uint32_t q : t) {
                    clear(ex, q), clear(ez, q), clear(rx, q), clear(rz, q);
                }
                for (uint32_t k = 0; k < op.product_count; k++) {
                    randomize_product(pc_.products[op.product_begin + k]);
                }
                break;
            default:
                break;
        }
        apply_hits(i, false);
    }
    for (auto [m, lane] : meas_flips) {
        out.err[m * W + lane / 64] ^= 1ull << (lane % 64);
    }
    return out;
}

std::vector<MeasurementSignature> measurement_signatures(const FrameSampler &sampler) {
    const auto &comps = sampler.components();
    std::vector<MeasurementSignature> sigs(comps.size());
    for (size_t base = 0; base < comps.size(); base += kLanes) {
        size_t lanes = std::min(kLanes, comps.size() - base);
        std::vector<std::pair<uint32_t, uint32_t>> hits;
        for (size_t l = 0; l < lanes; l++) hits.push_back({(uint32_t)(base + l), (uint32_t)l});
        ShotBatch b = sampler.inject(hits, lanes);
        for (size_t m = 0; m < b.num_meas; m++) {
            const uint64_t *row = b.err_row(m);
            for (size_t w = 0; w < kLaneWords; w++) {
                uint64_t v = row[w];
                while (v) {
                    size_t lane = w * 64 + __builtin_ctzll(v);
                    v &= v - 1;
                    sigs[base + lane].meas.push_back((uint32_t)m);
                }
            }
        }
    }
    return sigs;
}

namespace {

std::vector<std::vector<uint32_t>> incidence(const std::vector<std::vector<uint32_t>> &sets, size_t num_meas) {
    std::vector<std::vector<uint32_t>> inc(num_meas);
    for (uint32_t i = 0; i < sets.size(); i++) {
        for (uint32_t m : sets[i]) {
            if (m >= num_meas) {
                throw std::out_of_range("error model: measurement ordinal out of range");
            }
            inc[m].push_back(i);
        }
    }
    return inc;
}

std::vector<uint32_t> parity_map(const std::vector<uint32_t> &meas, const std::vector<std::vector<uint32_t>> &inc,
                                 std::vector<uint8_t> &scratch) {
    std::vector<uint32_t> touched;
    for (uint32_t m : meas) {
        for (uint32_t c : inc[m]) {
            if (!scratch[c]) touched.push_back(c);
            scratch[c] ^= 2;
            scratch[c] |= 1;
        }
    }
    std::vector<uint32_t> out;
    for (uint32_t c : touched) {
        if (scratch[c] & 2) out.push_back(c);
        scratch[c] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ErrorModel extract_error_model(const FrameSampler &sampler, const std::vector<std::vector<uint32_t>> &checks,
                               const std::vector<std::vector<uint32_t>> &observables, double prune_below) {
    const PhysicalCircuit &pc = sampler.circuit();
    auto sigs = measurement_signatures(sampler);
    auto cinc = incidence(checks, pc.num_measurements());
    auto oinc = incidence(observables, pc.num_measurements());
    std::vector<uint8_t> cs(checks.size(), 0), os(observables.size(), 0);
    ErrorModel em;
    em.num_checks = checks.size();
    em.num_observables = observables.size();
    std::map<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>, uint32_t> index;
    const auto &comps = sampler.components();
    for (uint32_t i = 0; i < comps.size(); i++) {
        auto c = parity_map(sigs[i].meas, cinc, cs);
        auto o = parity_map(sigs[i].meas, oinc, os);
        if (c.empty() && o.empty()) {
            continue;
        }
        bool tl = sigs[i].meas.size() == 1 && pc.meas[sigs[i].meas[0]].kind == MeasKind::Stabilizer;
        auto key = std::make_pair(std::move(c), std::move(o));
        auto it = index.find(key);
        if (it == index.end()) {
            ErrorMechanism m;
            m.id = (uint32_t)em.mechanisms.size();
            m.probability = comps[i].prob;
            m.checks = key.first;
            m.observables = key.second;
            m.time_index = pc.ops[comps[i].op].logical_instr;
            m.site = comps[i].q0;
            m.timelike = tl;
            m.components.push_back(i);
            index.emplace(std::move(key), m.id);
            em.mechanisms.push_back(std::move(m));
        } else {
            ErrorMechanism &m = em.mechanisms[it->second];
            m.probability = compose_probability(m.probability, comps[i].prob);
            m.timelike = m.timelike && tl;
            m.components.push_back(i);
        }
    }
    if (prune_below > 0) {
        std::vector<ErrorMechanism> kept;
        for (auto &m : em.mechanisms) {
            if (m.probability >= prune_below) {
                m.id = (uint32_t)kept.size();
                kept.push_back(std::move(m));
            }
        }
        em.mechanisms = std::move(kept);
    }
    return em;
}

std::string ErrorModel::dump() const {
    std::string s;
    char buf[64];
    for (const auto &m : mechanisms) {
        std::snprintf(buf, sizeof buf, "%.9g", m.probability);
        s += buf;
        for (uint32_t c : m.checks) s += " " + std::to_string(c);
        s += " |";
        for (uint32_t o : m.observables) s += " " + std::to_string(o);
        s += " | " + std::to_string(m.time_index) + ":" + std::to_string(m.site) + "\n";
    }
    return s;
}

}  // namespace tcd
