// Copyright 2026 The qenm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qenm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qenm::circuits {

namespace {

constexpr double kPruneNorm = 1e-30;

std::uint64_t bit(int q) {
    return std::uint64_t{1} << q;
}

std::uint64_t gather(std::uint64_t basis, const std::vector<int> &qubits) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < qubits.size(); i++) {
        v |= ((basis >> qubits[i]) & 1) << i;
    }
    return v;
}

std::uint64_t scatter(std::uint64_t basis, const std::vector<int> &qubits, std::uint64_t value) {
    for (std::size_t i = 0; i < qubits.size(); i++) {
        basis = (basis & ~bit(qubits[i])) | (((value >> i) & 1) << qubits[i]);
    }
    return basis;
}

std::uint64_t width_mask(std::size_t width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

bool controls_satisfied(const Gate &gate, std::uint64_t basis) {
    for (const auto &c : gate.controls) {
        if ((((basis >> c.qubit) & 1) != 0) != c.on_one) {
            return false;
        }
    }
    return true;
}

std::uint64_t apply_permutation(const Gate &gate, std::uint64_t basis) {
    switch (gate.kind) {
        case GateKind::X:
            return basis ^ bit(gate.targets[0]);
        case GateKind::Swap: {
            const std::uint64_t b0 = (basis >> gate.targets[0]) & 1;
            const std::uint64_t b1 = (basis >> gate.targets[1]) & 1;
            if (b0 != b1) {
                basis ^= bit(gate.targets[0]) | bit(gate.targets[1]);
            }
            return basis;
        }
        case GateKind::Add: {
            const std::uint64_t mask = width_mask(gate.targets.size());
            const std::uint64_t t = gather(basis, gate.targets);
            const std::uint64_t a = gather(basis, gate.a);
            return scatter(basis, gate.targets, (gate.inverse ? t - a : t + a) & mask);
        }
        case GateKind::Compare: {
            const bool less = gather(basis, gate.a) < gather(basis, gate.b);
            return less ? basis ^ bit(gate.targets[0]) : basis;
        }
        case GateKind::Lookup: {
            const std::uint64_t v = gather(basis, gate.targets) ^ gate.table[gather(basis, gate.a)];
            return scatter(basis, gate.targets, v);
        }
        default:
            return basis;
    }
}

SparseState::SparseState(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 64) {
        throw std::invalid_argument("qubit count must lie in [1, 64]");
    }
    entries_.push_back({0, 1.0});
}

SparseState SparseState::basis(int num_qubits, std::uint64_t index) {
    SparseState s(num_qubits);
    if (num_qubits < 64 && (index >> num_qubits) != 0) {
        throw std::out_of_range("basis index outside the register");
    }
    s.entries_[0].first = index;
    return s;
}

void SparseState::set(std::uint64_t index, Amplitude amplitude) {
    if (num_qubits_ < 64 && (index >> num_qubits_) != 0) {
        throw std::out_of_range("basis index outside the register");
    }
    compact();
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const auto &e, std::uint64_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
        it->second = amplitude;
    } else {
        entries_.insert(it, {index, amplitude});
    }
    compact_ = false;
}

void SparseState::compact() const {
    if (compact_) {
        return;
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < entries_.size(); r++) {
        if (w > 0 && entries_[w - 1].first == entries_[r].first) {
            entries_[w - 1].second += entries_[r].second;
        } else {
            entries_[w++] = entries_[r];
        }
    }
    entries_.resize(w);
    std::erase_if(entries_, [](const auto &e) { return std::norm(e.second) < kPruneNorm; });
    compact_ = true;
}

const std::vector<std::pair<std::uint64_t, Amplitude>> &SparseState::entries() const {
    compact();
    return entries_;
}

Amplitude SparseState::amplitude(std::uint64_t index) const {
    compact();
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const auto &e, std::uint64_t i) { return e.first < i; });
    return it != entries_.end() && it->first == index ? it->second : Amplitude{0};
}

double SparseState::norm_squared() const {
    compact();
    double sum = 0;
    for (const auto &e : entries_) {
        sum += std::norm(e.second);
    }
    return sum;
}

void SparseState::apply(const Gate &gate) {
    for (int q : gate.touched_qubits()) {
        if (q >= num_qubits_) {
            throw std::invalid_argument("gate touches a qubit outside the state");
        }
    }
    switch (gate.kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::PhaseFlip: {
            Amplitude factor = -1.0;
            if (gate.kind == GateKind::S) {
                factor = gate.inverse ? Amplitude{0, -1} : Amplitude{0, 1};
            }
            for (auto &[basis, amp] : entries_) {
                if (!controls_satisfied(gate, basis)) {
                    continue;
                }
                if (gate.kind == GateKind::PhaseFlip || ((basis >> gate.targets[0]) & 1)) {
                    amp *= factor;
                }
            }
            return;
        }
        case GateKind::H:
        case GateKind::Ry: {
            const std::uint64_t m = bit(gate.targets[0]);
            double c00, c01, c10, c11;  // new amplitude on |row> from old |col>
            if (gate.kind == GateKind::H) {
                c00 = c01 = c10 = M_SQRT1_2;
                c11 = -M_SQRT1_2;
            } else {
                const double c = std::cos(gate.angle / 2);
                const double s = std::sin(gate.angle / 2);
                c00 = c;
                c01 = -s;
                c10 = s;
                c11 = c;
            }
            const std::size_t n = entries_.size();
            for (std::size_t i = 0; i < n; i++) {
                auto [basis, amp] = entries_[i];
                if (!controls_satisfied(gate, basis)) {
                    continue;
                }
                const bool one = (basis & m) != 0;
                entries_[i] = {basis & ~m, amp * (one ? c01 : c00)};
                entries_.push_back({basis | m, amp * (one ? c11 : c10)});
            }
            compact_ = false;
            compact();
            return;
        }
        default:
            for (auto &[basis, amp] : entries_) {
                if (controls_satisfied(gate, basis)) {
                    basis = apply_permutation(gate, basis);
                }
            }
            compact_ = false;
            return;
    }
}

void SparseState::apply(const Circuit &circuit) {
    if (circuit.num_qubits() > num_qubits_) {
        throw std::invalid_argument("circuit is wider than the state");
    }
    for (const auto &g : circuit.gates()) {
        apply(g);
    }
}

double SparseState::probability(std::uint64_t mask, std::uint64_t value) const {
    compact();
    double p = 0;
    for (const auto &[basis, amp] : entries_) {
        if ((basis & mask) == value) {
            p += std::norm(amp);
        }
    }
    return p;
}

double SparseState::postselect(std::uint64_t mask, std::uint64_t value) {
    compact();
    std::erase_if(entries_, [&](const auto &e) { return (e.first & mask) != value; });
    const double p = norm_squared();
    if (p > 0) {
        const double scale = 1 / std::sqrt(p);
        for (auto &e : entries_) {
            e.second *= scale;
        }
    }
    return p;
}

std::uint64_t register_mask(const Register &reg) {
    return width_mask(static_cast<std::size_t>(reg.width)) << reg.offset;
}

std::uint64_t get_register(std::uint64_t basis, const Register &reg) {
    return (basis >> reg.offset) & width_mask(static_cast<std::size_t>(reg.width));
}

std::uint64_t set_register(std::uint64_t basis, const Register &reg, std::uint64_t value) {
    if ((value & ~width_mask(static_cast<std::size_t>(reg.width))) != 0) {
        throw std::out_of_range("value does not fit register " + reg.name);
    }
    return (basis & ~register_mask(reg)) | (value << reg.offset);
}

std::uint64_t pack(const Circuit &circuit, const BasisOutcome &values) {
    std::uint64_t basis = 0;
    for (const auto &[name, value] : values) {
        basis = set_register(basis, circuit.reg(name), value);
    }
    return basis;
}

BasisOutcome unpack(const Circuit &circuit, std::uint64_t basis) {
    BasisOutcome out;
    for (const auto &r : circuit.registers()) {
        out[r.name] = get_register(basis, r);
    }
    return out;
}

BasisRun simulate_basis(const Circuit &circuit, std::uint64_t input) {
    BasisRun run;
    run.output = input;
    for (const auto &g : circuit.gates()) {
        if (!controls_satisfied(g, run.output)) {
            continue;
        }
        switch (g.kind) {
            case GateKind::H:
            case GateKind::Ry:
                throw std::logic_error("basis simulation reached a branching gate: " + g.str());
            case GateKind::Z:
                if ((run.output >> g.targets[0]) & 1) {
                    run.phase = -run.phase;
                }
                break;
            case GateKind::S:
                if ((run.output >> g.targets[0]) & 1) {
                    run.phase *= g.inverse ? Amplitude{0, -1} : Amplitude{0, 1};
                }
                break;
            case GateKind::PhaseFlip:
                run.phase = -run.phase;
                break;
            default:
                run.output = apply_permutation(g, run.output);
        }
    }
    return run;
}

BasisOutcome run_basis(const Circuit &circuit, const BasisOutcome &inputs) {
    return unpack(circuit, simulate_basis(circuit, pack(circuit, inputs)).output);
}

}  // namespace qenm::circuits
