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

#include "qenm/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qenm::circuits {

namespace {

constexpr int kMaxQubits = 64;

const char *kind_name(const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            return "H";
        case GateKind::X:
            return g.controls.empty() ? "X" : (g.controls.size() == 1 ? "CNOT" : "MCX");
        case GateKind::Z:
            return "Z";
        case GateKind::S:
            return g.inverse ? "SDG" : "S";
        case GateKind::Ry:
            return "RY";
        case GateKind::Swap:
            return g.controls.empty() ? "SWAP" : "CSWAP";
        case GateKind::PhaseFlip:
            return "PHASEFLIP";
        case GateKind::Add:
            return g.inverse ? "SUB" : "ADD";
        case GateKind::Compare:
            return "CMP";
        case GateKind::Lookup:
            return "LOOKUP";
    }
    return "?";
}

void write_list(std::ostringstream &out, const char *label, const std::vector<int> &qs) {
    if (qs.empty()) {
        return;
    }
    out << ' ' << label << "=[";
    for (std::size_t i = 0; i < qs.size(); i++) {
        out << (i ? "," : "") << qs[i];
    }
    out << ']';
}

void validate_gate(const Gate &g, int num_qubits) {
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument(std::string(kind_name(g)) + " gate: " + msg);
    };
    const auto touched = g.touched_qubits();
    std::set<int> seen;
    for (int q : touched) {
        if (q < 0 || q >= num_qubits) {
            fail("qubit " + std::to_string(q) + " outside the circuit");
        }
        if (!seen.insert(q).second) {
            fail("qubit " + std::to_string(q) + " used twice");
        }
    }
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Ry:
            if (g.targets.size() != 1 || !g.a.empty() || !g.b.empty()) {
                fail("needs exactly one target");
            }
            break;
        case GateKind::Swap:
            if (g.targets.size() != 2) {
                fail("needs two targets");
            }
            break;
        case GateKind::PhaseFlip:
            if (!g.targets.empty()) {
                fail("takes no targets");
            }
            break;
        case GateKind::Add:
            if (g.targets.empty() || g.targets.size() != g.a.size()) {
                fail("operands must have equal nonzero width");
            }
            break;
        case GateKind::Compare:
            if (g.targets.size() != 1 || g.a.empty() || g.a.size() != g.b.size()) {
                fail("needs one flag and two equal-width operands");
            }
            break;
        case GateKind::Lookup: {
            if (g.a.empty() || g.targets.empty() || g.a.size() > 24) {
                fail("bad address or value width");
            }
            if (g.table.size() != (std::size_t{1} << g.a.size())) {
                fail("table size must be 2^address_width");
            }
            const std::uint64_t limit = g.targets.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.targets.size());
            for (auto v : g.table) {
                if (g.targets.size() < 64 && v >= limit) {
                    fail("table entry wider than the value register");
                }
            }
            break;
        }
    }
}

}  // namespace

int Register::qubit(int bit) const {
    if (bit < 0 || bit >= width) {
        throw std::out_of_range("bit " + std::to_string(bit) + " outside register " + name);
    }
    return offset + bit;
}

std::vector<int> Register::qubits() const {
    return qubits(0, width);
}

std::vector<int> Register::qubits(int first_bit, int count) const {
    std::vector<int> out;
    for (int i = 0; i < count; i++) {
        out.push_back(qubit(first_bit + i));
    }
    return out;
}

bool Gate::is_composite() const {
    return kind == GateKind::Add || kind == GateKind::Compare || kind == GateKind::Lookup;
}

bool Gate::is_permutation() const {
    return kind != GateKind::H && kind != GateKind::Ry;
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::S:
        case GateKind::Add:
            g.inverse = !inverse;
            break;
        case GateKind::Ry:
            g.angle = -angle;
            break;
        default:
            break;
    }
    return g;
}

std::vector<int> Gate::touched_qubits() const {
    std::vector<int> out;
    for (const auto &c : controls) {
        out.push_back(c.qubit);
    }
    out.insert(out.end(), targets.begin(), targets.end());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string Gate::str() const {
    std::ostringstream out;
    out << kind_name(*this);
    if (!controls.empty()) {
        out << " ctrl=[";
        for (std::size_t i = 0; i < controls.size(); i++) {
            out << (i ? "," : "") << (controls[i].on_one ? "" : "~") << controls[i].qubit;
        }
        out << ']';
    }
    write_list(out, "t", targets);
    write_list(out, "a", a);
    write_list(out, "b", b);
    if (kind == GateKind::Ry) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", angle);
        out << " angle=" << buf;
    }
    if (kind == GateKind::Lookup) {
        out << " table=[";
        for (std::size_t i = 0; i < table.size(); i++) {
            out << (i ? "," : "") << table[i];
        }
        out << ']';
    }
    return out.str();
}

Register Circuit::add_register(const std::string &name, int width, RegisterRole role) {
    if (name.empty() || has_register(name)) {
        throw std::invalid_argument("register name '" + name + "' is empty or already used");
    }
    if (width < 1 || num_qubits_ + width > kMaxQubits) {
        throw std::invalid_argument("register '" + name + "' does not fit in 64 qubits");
    }
    registers_.push_back({name, num_qubits_, width, role});
    num_qubits_ += width;
    return registers_.back();
}

const Register &Circuit::reg(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no register named '" + name + "'");
}

bool Circuit::has_register(const std::string &name) const {
    return std::any_of(registers_.begin(), registers_.end(), [&](const Register &r) { return r.name == name; });
}

void Circuit::append(Gate gate) {
    validate_gate(gate, num_qubits_);
    gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit &other) {
    std::vector<int> remap(static_cast<std::size_t>(other.num_qubits()), -1);
    for (const auto &r : other.registers()) {
        const Register &mine = reg(r.name);
        if (mine.width != r.width) {
            throw std::invalid_argument("register '" + r.name + "' has mismatched width");
        }
        for (int bit = 0; bit < r.width; bit++) {
            remap[static_cast<std::size_t>(r.qubit(bit))] = mine.qubit(bit);
        }
    }
    auto map_all = [&](std::vector<int> &qs) {
        for (int &q : qs) {
            q = remap.at(static_cast<std::size_t>(q));
        }
    };
    for (Gate g : other.gates()) {
        for (auto &c : g.controls) {
            c.qubit = remap.at(static_cast<std::size_t>(c.qubit));
        }
        map_all(g.targets);
        map_all(g.a);
        map_all(g.b);
        append(std::move(g));
    }
}

Circuit Circuit::inverse() const {
    Circuit out;
    out.registers_ = registers_;
    out.num_qubits_ = num_qubits_;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

Circuit Circuit::controlled(const std::vector<Control> &extra) const {
    Circuit out;
    out.registers_ = registers_;
    out.num_qubits_ = num_qubits_;
    for (Gate g : gates_) {
        g.controls.insert(g.controls.end(), extra.begin(), extra.end());
        out.append(std::move(g));
    }
    return out;
}

void Circuit::h(int q, std::vector<Control> controls) {
    append({GateKind::H, std::move(controls), {q}});
}

void Circuit::x(int q, std::vector<Control> controls) {
    append({GateKind::X, std::move(controls), {q}});
}

void Circuit::z(int q, std::vector<Control> controls) {
    append({GateKind::Z, std::move(controls), {q}});
}

void Circuit::s(int q, std::vector<Control> controls) {
    append({GateKind::S, std::move(controls), {q}});
}

void Circuit::ry(int q, double angle, std::vector<Control> controls) {
    Gate g{GateKind::Ry, std::move(controls), {q}};
    g.angle = angle;
    append(std::move(g));
}

void Circuit::cx(int control, int target) {
    x(target, {{control, true}});
}

void Circuit::swap(int q1, int q2, std::vector<Control> controls) {
    append({GateKind::Swap, std::move(controls), {q1, q2}});
}

void Circuit::phase_flip(std::vector<Control> controls) {
    append({GateKind::PhaseFlip, std::move(controls), {}});
}

void Circuit::add(const std::vector<int> &target, const std::vector<int> &addend, std::vector<Control> controls) {
    append({GateKind::Add, std::move(controls), target, addend});
}

void Circuit::subtract(const std::vector<int> &target, const std::vector<int> &subtrahend, std::vector<Control> controls) {
    Gate g{GateKind::Add, std::move(controls), target, subtrahend};
    g.inverse = true;
    append(std::move(g));
}

void Circuit::compare(int flag, const std::vector<int> &lhs, const std::vector<int> &rhs, std::vector<Control> controls) {
    append({GateKind::Compare, std::move(controls), {flag}, lhs, rhs});
}

void Circuit::lookup(const std::vector<int> &value, const std::vector<int> &address, std::vector<std::uint64_t> table,
                     std::vector<Control> controls) {
    Gate g{GateKind::Lookup, std::move(controls), value, address};
    g.table = std::move(table);
    append(std::move(g));
}

std::string Circuit::dump() const {
    std::ostringstream out;
    static const char *kRoles[] = {"data", "ancilla", "flag"};
    for (const auto &r : registers_) {
        out << "REG " << r.name << " offset=" << r.offset << " width=" << r.width
            << " role=" << kRoles[static_cast<int>(r.role)] << '\n';
    }
    for (const auto &g : gates_) {
        out << g.str() << '\n';
    }
    return out.str();
}

std::vector<Control> value_controls(const std::vector<int> &qubits, std::uint64_t value) {
    if (qubits.size() < 64 && (value >> qubits.size()) != 0) {
        throw std::invalid_argument("control value wider than its register");
    }
    std::vector<Control> out;
    for (std::size_t i = 0; i < qubits.size(); i++) {
        out.push_back({qubits[i], ((value >> i) & 1) != 0});
    }
    return out;
}

std::vector<Control> value_controls(const Register &reg, std::uint64_t value) {
    return value_controls(reg.qubits(), value);
}

namespace {

std::vector<Control> with(const std::vector<Control> &base, std::initializer_list<Control> more) {
    std::vector<Control> out = base;
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

// Majority gate of the ripple-carry adder: z ends holding maj(x, y, z).
void maj(std::vector<Gate> &out, const std::vector<Control> &ctl, int x, int y, int z) {
    out.push_back({GateKind::X, with(ctl, {{z, true}}), {y}});
    out.push_back({GateKind::X, with(ctl, {{z, true}}), {x}});
    out.push_back({GateKind::X, with(ctl, {{x, true}, {y, true}}), {z}});
}

// Unmajority-and-add gate.
void uma(std::vector<Gate> &out, const std::vector<Control> &ctl, int x, int y, int z) {
    out.push_back({GateKind::X, with(ctl, {{x, true}, {y, true}}), {z}});
    out.push_back({GateKind::X, with(ctl, {{z, true}}), {x}});
    out.push_back({GateKind::X, with(ctl, {{x, true}}), {y}});
}

std::vector<Gate> expand_add(const Gate &g, int carry) {
    std::vector<Gate> out;
    const auto &sum = g.targets;
    const auto &addend = g.a;
    const std::size_t n = sum.size();
    maj(out, g.controls, carry, sum[0], addend[0]);
    for (std::size_t i = 1; i < n; i++) {
        maj(out, g.controls, addend[i - 1], sum[i], addend[i]);
    }
    for (std::size_t i = n - 1; i >= 1; i--) {
        uma(out, g.controls, addend[i - 1], sum[i], addend[i]);
    }
    uma(out, g.controls, carry, sum[0], addend[0]);
    if (g.inverse) {
        std::reverse(out.begin(), out.end());
    }
    return out;
}

std::vector<Gate> expand_compare(const Gate &g, int carry) {
    // [a < b] is the carry out of (~a) + b.
    std::vector<Gate> compute;
    const auto &a = g.a;
    const auto &b = g.b;
    const std::size_t n = a.size();
    for (int q : a) {
        compute.push_back({GateKind::X, {}, {q}});
    }
    maj(compute, {}, carry, b[0], a[0]);
    for (std::size_t i = 1; i < n; i++) {
        maj(compute, {}, a[i - 1], b[i], a[i]);
    }
    std::vector<Gate> out = compute;
    out.push_back({GateKind::X, with(g.controls, {{a[n - 1], true}}), {g.targets[0]}});
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
        out.push_back(*it);
    }
    return out;
}

std::vector<Gate> expand_lookup(const Gate &g) {
    std::vector<Gate> out;
    for (std::uint64_t addr = 0; addr < g.table.size(); addr++) {
        const std::uint64_t v = g.table[addr];
        if (v == 0) {
            continue;
        }
        std::vector<Control> ctl = g.controls;
        auto sel = value_controls(g.a, addr);
        ctl.insert(ctl.end(), sel.begin(), sel.end());
        for (std::size_t bit = 0; bit < g.targets.size(); bit++) {
            if ((v >> bit) & 1) {
                out.push_back({GateKind::X, ctl, {g.targets[bit]}});
            }
        }
    }
    return out;
}

}  // namespace

Circuit expand_composites(const Circuit &circuit) {
    Circuit out;
    for (const auto &r : circuit.registers()) {
        out.add_register(r.name, r.width, r.role);
    }
    const bool needs_carry = std::any_of(circuit.gates().begin(), circuit.gates().end(), [](const Gate &g) {
        return g.kind == GateKind::Add || g.kind == GateKind::Compare;
    });
    int carry = -1;
    if (needs_carry) {
        carry = (out.has_register("carry") ? out.reg("carry") : out.add_register("carry", 1, RegisterRole::ancilla))
                    .qubit(0);
    }
    for (const auto &g : circuit.gates()) {
        std::vector<Gate> parts;
        switch (g.kind) {
            case GateKind::Add:
                parts = expand_add(g, carry);
                break;
            case GateKind::Compare:
                parts = expand_compare(g, carry);
                break;
            case GateKind::Lookup:
                parts = expand_lookup(g);
                break;
            default:
                parts = {g};
        }
        for (auto &p : parts) {
            out.append(std::move(p));
        }
    }
    return out;
}

}  // namespace qenm::circuits
