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

#include "tcd/pauli.hpp"

#include <cctype>
#include <stdexcept>

namespace tcd {

PauliString PauliString::from_string(const std::string &s) {
    PauliString p(s.size());
    for (size_t q = 0; q < s.size(); q++) {
        p.set(q, s[q]);
    }
    return p;
}

PauliString PauliString::from_sparse(const std::string &s, size_t n) {
    PauliString p(n);
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '*' || c == ' ') {
            i++;
            continue;
        }
        i++;
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) {
            j++;
        }
        if (j == i) {
            throw std::invalid_argument("bad sparse Pauli: " + s);
        }
        size_t q = std::stoul(s.substr(i, j - i));
        if (q >= n) {
            throw std::out_of_range("Pauli qubit out of range: " + s);
        }
        PauliString single(n);
        single.set(q, c);
        p *= single;
        i = j;
    }
    return p;
}

char PauliString::get(size_t q) const {
    bool a = x.get(q), b = z.get(q);
    if (a && b) {
        return 'Y';
    }
    return a ? 'X' : (b ? 'Z' : 'I');
}

void PauliString::set(size_t q, char p) {
    switch (p) {
        case 'I':
        case '_':
            x.set(q, false);
            z.set(q, false);
            break;
        case 'X':
            x.set(q, true);
            z.set(q, false);
            break;
        case 'Y':
            x.set(q, true);
            z.set(q, true);
            break;
        case 'Z':
            x.set(q, false);
            z.set(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("bad Pauli character ") + p);
    }
}

size_t PauliString::weight() const {
    BitVector u = x;
    u |= z;
    return u.popcount();
}

PauliString &PauliString::operator*=(const PauliString &other) {
    x ^= other.x;
    z ^= other.z;
    return *this;
}

std::string PauliString::str() const {
    std::string s(num_qubits(), 'I');
    for (size_t q = 0; q < num_qubits(); q++) {
        s[q] = get(q);
    }
    return s;
}

std::string PauliString::sparse_str() const {
    std::string s;
    for (size_t q = 0; q < num_qubits(); q++) {
        char c = get(q);
        if (c == 'I') {
            continue;
        }
        if (!s.empty()) {
            s += '*';
        }
        s += c;
        s += std::to_string(q);
    }
    return s;
}

bool symplectic_commutes(const PauliString &a, const PauliString &b) {
    return a.x.dot(b.z) == a.z.dot(b.x);
}

void conjugate_through_gate(PauliString &p, GateKind gate, const std::vector<uint32_t> &support, Direction dir) {
    size_t n = p.num_qubits();
    for (uint32_t q : support) {
        if (q >= n) {
            throw std::out_of_range("gate support out of range");
        }
    }
    bool two = gate == GateKind::CNOT || gate == GateKind::CZ || gate == GateKind::PERMUTE;
    if (two && support.size() % 2) {
        throw std::invalid_argument("two-qubit gate needs an even support list");
    }
    switch (gate) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
            return;
        case GateKind::H:
            for (uint32_t q : support) {
                bool a = p.x.get(q);
                p.x.set(q, p.z.get(q));
                p.z.set(q, a);
            }
            return;
        case GateKind::S:
        case GateKind::S_DAG:
            // X <-> Y up to sign in either direction
            for (uint32_t q : support) {
                if (p.x.get(q)) {
                    p.z.flip(q);
                }
            }
            return;
        case GateKind::CNOT:
            for (size_t k = 0; k < support.size(); k += 2) {
                uint32_t c = support[k], t = support[k + 1];
                if (c == t) {
                    throw std::invalid_argument("CNOT control equals target");
                }
                if (p.x.get(c)) {
                    p.x.flip(t);
                }
                if (p.z.get(t)) {
                    p.z.flip(c);
                }
            }
            return;
        case GateKind::CZ:
            for (size_t k = 0; k < support.size(); k += 2) {
                uint32_t a = support[k], b = support[k + 1];
                if (a == b) {
                    throw std::invalid_argument("CZ on a single qubit");
                }
                bool xa = p.x.get(a), xb = p.x.get(b);
                if (xa) {
                    p.z.flip(b);
                }
                if (xb) {
                    p.z.flip(a);
                }
            }
            return;
        case GateKind::PERMUTE: {
            PauliString old = p;
            for (size_t k = 0; k < support.size(); k += 2) {
                uint32_t from = support[k], to = support[k + 1];
                if (dir == Direction::BACKWARD) {
                    std::swap(from, to);
                }
                p.x.set(to, false);
                p.z.set(to, false);
            }
            for (size_t k = 0; k < support.size(); k += 2) {
                uint32_t from = support[k], to = support[k + 1];
                if (dir == Direction::BACKWARD) {
                    std::swap(from, to);
                }
                if (old.x.get(from)) {
                    p.x.set(to, true);
                }
                if (old.z.get(from)) {
                    p.z.set(to, true);
                }
            }
            return;
        }
    }
}

}  // namespace tcd
