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

#include "qenm/oracles.hpp"

#include <array>
#include <stdexcept>

namespace qenm::circuits {

namespace {

std::uint64_t field_mod(int delta, int width) {
    const std::uint64_t modulus = std::uint64_t{1} << width;
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(modulus) + delta) % modulus;
}

// Pattern that the shift stage leaves in k for a given table entry.
std::uint64_t offset_pattern(const LatticeSpec &spec, Shift d) {
    return 1 | (field_mod(d.dc, spec.n_c) << 1) | (field_mod(d.dr, spec.n_r) << (spec.n_c + 1));
}

std::vector<Control> concat(std::vector<Control> a, const std::vector<Control> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

struct NodeFields {
    int s;
    std::vector<int> c;
    std::vector<int> r;
};

NodeFields fields(const Register &node, const LatticeSpec &spec) {
    return {node.qubit(0), node.qubits(1, spec.n_c), node.qubits(spec.n_c + 1, spec.n_r)};
}

// Controls for each boundary rule evaluated on one node register.
std::array<std::vector<Control>, 4> boundary_controls(const Register &node, const LatticeSpec &spec) {
    const NodeFields f = fields(node, spec);
    const std::uint64_t rows = spec.rows();
    const std::uint64_t cols = spec.cols();
    return {
        concat({{f.s, false}}, value_controls(f.r, 0)),
        value_controls(f.r, rows - 1),
        concat({{f.s, true}}, value_controls(f.r, rows - 2)),
        concat(value_controls(f.c, cols - 1), {{f.r[0], false}}),
    };
}

}  // namespace

void add_connectivity_registers(Circuit &circuit, const LatticeSpec &spec) {
    const int n = spec.index_bits();
    circuit.add_register(regs::kNode, n);
    circuit.add_register(regs::kNeighbor, n);
    circuit.add_register(regs::kSlot, 2, RegisterRole::ancilla);
    circuit.add_register(regs::kFlag, 1, RegisterRole::flag);
    circuit.add_register(regs::kConditions, 8, RegisterRole::ancilla);
    circuit.add_register(regs::kCarry, 1, RegisterRole::ancilla);
}

Circuit mass_oracle(std::uint64_t mbar, int width, int index_bits) {
    if (width < 1 || width > 62 || (mbar >> width) != 0) {
        throw std::invalid_argument("mass value does not fit the z register");
    }
    Circuit c;
    c.add_register(regs::kNode, index_bits);
    const Register z = c.add_register(regs::kMass, width);
    for (int bit = 0; bit < width; bit++) {
        if ((mbar >> bit) & 1) {
            c.x(z.qubit(bit));
        }
    }
    return c;
}

void append_shift_init(Circuit &circuit, const LatticeSpec &spec, const ShiftTable &table) {
    const Register j = circuit.reg(regs::kNode);
    const Register k = circuit.reg(regs::kNeighbor);
    const Register ell = circuit.reg(regs::kSlot);
    const int s_q = j.qubit(0);
    const int r0_q = j.qubit(spec.n_c + 1);
    for (int r0 = 0; r0 < 2; r0++) {
        for (int s = 0; s < 2; s++) {
            const std::vector<Control> cell = {{r0_q, r0 == 1}, {s_q, s == 1}};
            for (int l = 0; l < kGrapheneSparsity; l++) {
                const std::uint64_t pattern = offset_pattern(spec, table.at(r0, s, l));
                const auto ctl = concat(cell, value_controls(ell, static_cast<std::uint64_t>(l)));
                for (int bit = 0; bit < k.width; bit++) {
                    if ((pattern >> bit) & 1) {
                        circuit.x(k.qubit(bit), ctl);
                    }
                }
            }
            // The loaded offset identifies ell uniquely for this (r0, s); use it to clear ell.
            for (int l = 1; l < kGrapheneSparsity; l++) {
                const std::uint64_t pattern = offset_pattern(spec, table.at(r0, s, l));
                const auto ctl = concat(cell, value_controls(k, pattern));
                for (int bit = 0; bit < 2; bit++) {
                    if ((l >> bit) & 1) {
                        circuit.x(ell.qubit(bit), ctl);
                    }
                }
            }
        }
    }
}

Circuit shift_init(const LatticeSpec &spec, const ShiftTable &table) {
    Circuit c;
    add_connectivity_registers(c, spec);
    append_shift_init(c, spec, table);
    return c;
}

void append_coord_adder(Circuit &circuit, const LatticeSpec &spec) {
    const NodeFields j = fields(circuit.reg(regs::kNode), spec);
    const NodeFields k = fields(circuit.reg(regs::kNeighbor), spec);
    circuit.add(k.r, j.r);
    circuit.add(k.c, j.c);
    circuit.cx(j.s, k.s);
}

Circuit coord_adder(const LatticeSpec &spec) {
    Circuit c;
    add_connectivity_registers(c, spec);
    append_coord_adder(c, spec);
    return c;
}

void append_bond_validation(Circuit &circuit, const LatticeSpec &spec) {
    const Register cond = circuit.reg(regs::kConditions);
    const int flag = circuit.reg(regs::kFlag).qubit(0);
    std::vector<Gate> compute;
    int slot = 0;
    for (const char *name : {regs::kNode, regs::kNeighbor}) {
        for (const auto &ctl : boundary_controls(circuit.reg(name), spec)) {
            compute.push_back({GateKind::X, ctl, {cond.qubit(slot++)}});
        }
    }
    for (const auto &g : compute) {
        circuit.append(g);
    }
    // flag ^= OR(cond) written as NOT(AND(NOT cond)).
    circuit.x(flag);
    circuit.x(flag, value_controls(cond, 0));
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
        circuit.append(*it);
    }
}

Circuit bond_validation(const LatticeSpec &spec) {
    Circuit c;
    add_connectivity_registers(c, spec);
    append_bond_validation(c, spec);
    return c;
}

void append_connectivity_oracle(Circuit &circuit, const LatticeSpec &spec, const ShiftTable &table) {
    append_shift_init(circuit, spec, table);
    append_coord_adder(circuit, spec);
    append_bond_validation(circuit, spec);
}

Circuit connectivity_oracle(const LatticeSpec &spec, const ShiftTable &table) {
    Circuit c;
    add_connectivity_registers(c, spec);
    append_connectivity_oracle(c, spec, table);
    return c;
}

Circuit comparator(int width) {
    Circuit c;
    const Register j = c.add_register(regs::kNode, width);
    const Register k = c.add_register(regs::kNeighbor, width);
    const Register cmp = c.add_register("cmp", 1, RegisterRole::ancilla);
    c.compare(cmp.qubit(0), k.qubits(), j.qubits());
    return c;
}

void append_ordered_swap(Circuit &circuit, const std::string &lhs, const std::string &rhs, const std::string &cmp,
                         const std::string &order) {
    const Register a = circuit.reg(lhs);
    const Register b = circuit.reg(rhs);
    const int q = circuit.reg(cmp).qubit(0);
    const int o = circuit.reg(order).qubit(0);
    if (a.width != b.width) {
        throw std::invalid_argument("ordered swap needs equal-width registers");
    }
    circuit.compare(q, b.qubits(), a.qubits());
    circuit.cx(q, o);
    for (int bit = 0; bit < a.width; bit++) {
        circuit.swap(a.qubit(bit), b.qubit(bit), {{q, true}});
    }
    circuit.cx(o, q);
}

Circuit ordered_swap(int width) {
    Circuit c;
    c.add_register(regs::kNode, width);
    c.add_register(regs::kNeighbor, width);
    c.add_register("cmp", 1, RegisterRole::ancilla);
    c.add_register("order", 1, RegisterRole::flag);
    append_ordered_swap(c, regs::kNode, regs::kNeighbor, "cmp", "order");
    return c;
}

}  // namespace qenm::circuits
