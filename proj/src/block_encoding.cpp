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

#include "qenm/block_encoding.hpp"

#include <cmath>
#include <stdexcept>

#include "qenm/oracles.hpp"
#include "qenm/simulator.hpp"

namespace qenm::circuits {

namespace {

constexpr const char *kCmp = "cmp";
constexpr const char *kOrder = "order";
constexpr const char *kPart = "part";
constexpr const char *kCondAnc = "cond_anc";

double block_scale(double kappa, double mass) {
    if (!(kappa > 0) || !(mass > 0)) {
        throw std::invalid_argument("kappa and mass must be positive");
    }
    return std::sqrt(2 * kappa / mass * kGrapheneSparsity);
}

void add_ub_registers(Circuit &c, const LatticeSpec &spec) {
    add_connectivity_registers(c, spec);
    c.add_register(kCmp, 1, RegisterRole::ancilla);
    c.add_register(kOrder, 1, RegisterRole::flag);
}

void append_ub_dagger(Circuit &c, const LatticeSpec &spec) {
    const Register ell = c.reg(regs::kSlot);
    // (|0> + |1> + |2>) / sqrt(3) on ell.
    c.ry(ell.qubit(1), 2 * std::acos(std::sqrt(2.0 / 3.0)));
    c.h(ell.qubit(0), {{ell.qubit(1), false}});
    append_connectivity_oracle(c, spec, ShiftTable::graphene());
    append_ordered_swap(c, regs::kNode, regs::kNeighbor, kCmp, kOrder);
    const int order = c.reg(kOrder).qubit(0);
    c.z(order);
    c.h(order);
}

std::uint64_t pack_registers(const Circuit &c, const std::vector<std::string> &names, std::uint64_t basis) {
    std::uint64_t index = 0;
    int shift = 0;
    for (const auto &name : names) {
        const Register r = c.reg(name);
        index |= get_register(basis, r) << shift;
        shift += r.width;
    }
    return index;
}

int total_width(const Circuit &c, const std::vector<std::string> &names) {
    int w = 0;
    for (const auto &name : names) {
        w += c.reg(name).width;
    }
    return w;
}

}  // namespace

BlockEncodingCircuit build_UB_dagger(const LatticeSpec &spec, double kappa, double mass) {
    BlockEncodingCircuit out;
    add_ub_registers(out.circuit, spec);
    append_ub_dagger(out.circuit, spec);
    out.input = {regs::kNode};
    out.output = {regs::kNode, regs::kNeighbor};
    out.scale = block_scale(kappa, mass);
    return out;
}

Circuit build_U_cond(int width) {
    Circuit c;
    const Register sys = c.add_register("sys", width);
    const int anc = c.add_register(kCondAnc, 1, RegisterRole::flag).qubit(0);
    c.h(anc);
    c.phase_flip({{anc, false}});
    std::vector<Control> zero = value_controls(sys, 0);
    zero.push_back({anc, false});
    c.phase_flip(zero);
    c.h(anc);
    return c;
}

BlockEncodingCircuit build_UH(const LatticeSpec &spec, double kappa, double mass) {
    BlockEncodingCircuit out;
    Circuit &c = out.circuit;
    add_ub_registers(c, spec);
    const int part = c.add_register(kPart, 1).qubit(0);
    c.add_register(kCondAnc, 1, RegisterRole::flag);

    Circuit ub_dagger;
    add_ub_registers(ub_dagger, spec);
    append_ub_dagger(ub_dagger, spec);

    // U_cond acting on the neighbor register: node states must arrive and leave with k = 0.
    Circuit cond;
    const Register k = c.reg(regs::kNeighbor);
    cond.add_register(regs::kNeighbor, k.width);
    cond.add_register(kCondAnc, 1, RegisterRole::flag);
    // Same qubit layout as build_U_cond, so the gates carry over unchanged.
    const Circuit projector = build_U_cond(k.width);
    for (const Gate &g : projector.gates()) {
        cond.append(g);
    }

    // Pair to node: U_B followed by the k = 0 check.
    Circuit to_node;
    add_ub_registers(to_node, spec);
    to_node.add_register(kPart, 1);
    to_node.add_register(kCondAnc, 1, RegisterRole::flag);
    to_node.append(ub_dagger.inverse());
    to_node.append(cond);
    // Node to pair: the k = 0 check followed by U_B^dagger.
    Circuit to_pair;
    add_ub_registers(to_pair, spec);
    to_pair.add_register(kPart, 1);
    to_pair.add_register(kCondAnc, 1, RegisterRole::flag);
    to_pair.append(cond.inverse());
    to_pair.append(ub_dagger);

    c.append(to_node.controlled({{part, true}}));
    c.append(to_pair.controlled({{part, false}}));
    c.x(part);
    c.phase_flip({});

    out.input = {regs::kNode, regs::kNeighbor, kPart};
    out.output = out.input;
    out.scale = block_scale(kappa, mass);
    return out;
}

ComplexSparse extract_block(const Circuit &circuit, const std::vector<std::string> &input,
                            const std::vector<std::string> &output) {
    const int in_width = total_width(circuit, input);
    const int out_width = total_width(circuit, output);
    if (in_width > 24 || out_width > 24) {
        throw std::length_error("block too large to extract");
    }
    std::uint64_t out_mask = 0;
    for (const auto &name : output) {
        out_mask |= register_mask(circuit.reg(name));
    }
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    const std::uint64_t columns = std::uint64_t{1} << in_width;
    for (std::uint64_t col = 0; col < columns; col++) {
        std::uint64_t basis = 0;
        std::uint64_t rest = col;
        for (const auto &name : input) {
            const Register r = circuit.reg(name);
            basis = set_register(basis, r, rest & ((std::uint64_t{1} << r.width) - 1));
            rest >>= r.width;
        }
        SparseState state = SparseState::basis(circuit.num_qubits(), basis);
        state.apply(circuit);
        for (const auto &[b, amp] : state.entries()) {
            if ((b & ~out_mask) != 0 || std::abs(amp) < 1e-14) {
                continue;
            }
            trip.emplace_back(static_cast<Eigen::Index>(pack_registers(circuit, output, b)),
                              static_cast<Eigen::Index>(col), amp);
        }
    }
    ComplexSparse out(Eigen::Index{1} << out_width, Eigen::Index{1} << in_width);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

ComplexSparse extract_block(const BlockEncodingCircuit &encoding) {
    return extract_block(encoding.circuit, encoding.input, encoding.output);
}

}  // namespace qenm::circuits
