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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qenm/simulator.hpp"

namespace qenm::circuits {
namespace {

Circuit random_circuit(int qubits, int gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Circuit c;
    c.add_register("q", qubits);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    for (int i = 0; i < gates; i++) {
        const int t = pick(qubits);
        int u = pick(qubits);
        if (u == t) {
            u = (u + 1) % qubits;
        }
        switch (pick(7)) {
            case 0: c.h(t); break;
            case 1: c.x(t, {{u, pick(2) == 1}}); break;
            case 2: c.z(t); break;
            case 3: c.s(t); break;
            case 4: c.ry(t, 0.1 * pick(60), {{u, true}}); break;
            case 5: c.swap(t, u); break;
            default: c.add({t}, {u}); break;
        }
    }
    return c;
}

TEST(Registers, LayoutAndValidation) {
    Circuit c;
    const Register a = c.add_register("a", 3);
    const Register b = c.add_register("b", 2, RegisterRole::ancilla);
    EXPECT_EQ(a.offset, 0);
    EXPECT_EQ(b.offset, 3);
    EXPECT_EQ(b.qubit(1), 4);
    EXPECT_EQ(c.num_qubits(), 5);
    EXPECT_THROW(c.add_register("a", 1), std::invalid_argument);
    EXPECT_THROW(c.add_register("big", 60), std::invalid_argument);
    EXPECT_THROW(c.reg("missing"), std::out_of_range);
    EXPECT_THROW(c.x(5), std::invalid_argument);
    EXPECT_THROW(c.x(1, {{1, true}}), std::invalid_argument);
    EXPECT_THROW(c.add({0, 1}, {2}), std::invalid_argument);
}

TEST(Gates, SingleQubitActions) {
    SparseState s(1);
    Circuit c;
    c.add_register("q", 1);
    c.h(0);
    s.apply(c);
    EXPECT_NEAR(s.amplitude(0).real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(s.amplitude(1).real(), M_SQRT1_2, 1e-15);
    s.apply(c);
    EXPECT_NEAR(std::abs(s.amplitude(0)), 1, 1e-15);
    EXPECT_EQ(s.entries().size(), 1u);

    Circuit ry;
    ry.add_register("q", 1);
    ry.ry(0, 0.8);
    SparseState r(1);
    r.apply(ry);
    EXPECT_NEAR(r.amplitude(0).real(), std::cos(0.4), 1e-15);
    EXPECT_NEAR(r.amplitude(1).real(), std::sin(0.4), 1e-15);

    Circuit ss;
    ss.add_register("q", 1);
    ss.x(0);
    ss.s(0);
    ss.s(0);
    SparseState z(1);
    z.apply(ss);
    EXPECT_NEAR(z.amplitude(1).real(), -1, 1e-15);
}

TEST(Gates, InverseRestoresStatevector) {
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        const Circuit c = random_circuit(5, 60, seed);
        SparseState s = SparseState::basis(5, seed % 32);
        s.apply(c);
        s.apply(c.inverse());
        EXPECT_NEAR(std::abs(s.amplitude(seed % 32)), 1, 1e-12);
        EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
    }
}

TEST(Gates, ControlledCircuitOnlyActsWhenControlSet) {
    Circuit c;
    c.add_register("q", 2);
    c.x(0);
    const Circuit cc = c.controlled({{1, true}});
    EXPECT_EQ(simulate_basis(cc, 0b00).output, 0b00u);
    EXPECT_EQ(simulate_basis(cc, 0b10).output, 0b11u);
}

TEST(Composite, AdderExhaustive) {
    Circuit c;
    const Register t = c.add_register("t", 3);
    const Register a = c.add_register("a", 3);
    c.add(t.qubits(), a.qubits());
    const Circuit gates = expand_composites(c);
    ASSERT_TRUE(gates.has_register("carry"));
    for (std::uint64_t x = 0; x < 8; x++) {
        for (std::uint64_t y = 0; y < 8; y++) {
            const BasisOutcome f = run_basis(c, {{"t", x}, {"a", y}});
            const BasisOutcome g = run_basis(gates, {{"t", x}, {"a", y}});
            EXPECT_EQ(f.at("t"), (x + y) % 8);
            EXPECT_EQ(f.at("a"), y);
            EXPECT_EQ(g.at("t"), (x + y) % 8);
            EXPECT_EQ(g.at("a"), y);
            EXPECT_EQ(g.at("carry"), 0u);
        }
    }
    for (const Gate &g : gates.gates()) {
        EXPECT_FALSE(g.is_composite());
    }
}

TEST(Composite, SubtractUndoesAdd) {
    Circuit c;
    const Register t = c.add_register("t", 4);
    const Register a = c.add_register("a", 4);
    c.add(t.qubits(), a.qubits());
    c.subtract(t.qubits(), a.qubits());
    const Circuit gates = expand_composites(c);
    for (std::uint64_t x = 0; x < 16; x++) {
        const BasisOutcome g = run_basis(gates, {{"t", x}, {"a", (x * 7) % 16}});
        EXPECT_EQ(g.at("t"), x);
    }
}

TEST(Composite, CompareExhaustive) {
    Circuit c;
    const Register a = c.add_register("a", 3);
    const Register b = c.add_register("b", 3);
    const Register f = c.add_register("f", 1);
    c.compare(f.qubit(0), a.qubits(), b.qubits());
    const Circuit gates = expand_composites(c);
    for (std::uint64_t x = 0; x < 8; x++) {
        for (std::uint64_t y = 0; y < 8; y++) {
            const std::uint64_t want = x < y ? 1 : 0;
            EXPECT_EQ(run_basis(c, {{"a", x}, {"b", y}}).at("f"), want);
            const BasisOutcome g = run_basis(gates, {{"a", x}, {"b", y}});
            EXPECT_EQ(g.at("f"), want);
            EXPECT_EQ(g.at("a"), x);
            EXPECT_EQ(g.at("b"), y);
            EXPECT_EQ(g.at("carry"), 0u);
        }
    }
}

TEST(Composite, LookupTable) {
    Circuit c;
    const Register addr = c.add_register("addr", 2);
    const Register val = c.add_register("val", 3);
    const std::vector<std::uint64_t> table{5, 0, 7, 2};
    c.lookup(val.qubits(), addr.qubits(), table);
    const Circuit gates = expand_composites(c);
    for (std::uint64_t x = 0; x < 4; x++) {
        EXPECT_EQ(run_basis(c, {{"addr", x}}).at("val"), table[x]);
        EXPECT_EQ(run_basis(gates, {{"addr", x}, {"val", 1}}).at("val"), table[x] ^ 1);
    }
    EXPECT_THROW(c.lookup(val.qubits(), addr.qubits(), {1, 2, 3}), std::invalid_argument);
}

TEST(Simulator, BasisSimulationRejectsBranching) {
    Circuit c;
    c.add_register("q", 2);
    c.h(0, {{1, true}});
    EXPECT_EQ(simulate_basis(c, 0).output, 0u);
    EXPECT_THROW(simulate_basis(c, 2), std::logic_error);
}

TEST(Simulator, PostselectAndProbability) {
    Circuit c;
    c.add_register("q", 2);
    c.h(0);
    c.ry(1, 2 * std::acos(std::sqrt(0.3)));
    SparseState s(2);
    s.apply(c);
    EXPECT_NEAR(s.probability(0b10, 0), 0.3, 1e-12);
    EXPECT_NEAR(s.postselect(0b10, 0b10), 0.7, 1e-12);
    EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
}

TEST(Simulator, PackUnpackRoundTrip) {
    Circuit c;
    c.add_register("a", 3);
    c.add_register("b", 4);
    const std::uint64_t basis = pack(c, {{"a", 5}, {"b", 9}});
    EXPECT_EQ(basis, 5u | (9u << 3));
    const BasisOutcome o = unpack(c, basis);
    EXPECT_EQ(o.at("a"), 5u);
    EXPECT_EQ(o.at("b"), 9u);
    EXPECT_THROW(pack(c, {{"a", 8}}), std::out_of_range);
}

TEST(Dump, StableLineFormat) {
    Circuit c;
    c.add_register("q", 2);
    c.add_register("anc", 1, RegisterRole::ancilla);
    c.x(0, {{1, true}});
    c.x(2, {{0, true}, {1, false}});
    c.swap(0, 1, {{2, true}});
    c.s(0);
    c.inverse();
    c.ry(1, 0.5);
    const std::string expected =
        "REG q offset=0 width=2 role=data\n"
        "REG anc offset=2 width=1 role=ancilla\n"
        "CNOT ctrl=[1] t=[0]\n"
        "MCX ctrl=[0,~1] t=[2]\n"
        "CSWAP ctrl=[2] t=[0,1]\n"
        "S t=[0]\n"
        "RY t=[1] angle=0.5\n";
    EXPECT_EQ(c.dump(), expected);
    EXPECT_EQ(c.inverse().gates()[1].str(), "SDG t=[0]");
}

TEST(ValueControls, BitPattern) {
    Circuit c;
    const Register r = c.add_register("r", 3);
    const auto ctl = value_controls(r, 0b101);
    ASSERT_EQ(ctl.size(), 3u);
    EXPECT_TRUE(ctl[0].on_one);
    EXPECT_FALSE(ctl[1].on_one);
    EXPECT_TRUE(ctl[2].on_one);
    EXPECT_THROW(value_controls(r, 8), std::invalid_argument);
}

}  // namespace
}  // namespace qenm::circuits
