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

#include <gtest/gtest.h>

#include <set>

#include "../reference/geometry.hpp"
#include "qenm/simulator.hpp"

namespace qenm::circuits {
namespace {

std::uint64_t wrap(std::int64_t v, int width) {
    const std::int64_t m = std::int64_t{1} << width;
    return static_cast<std::uint64_t>(((v % m) + m) % m);
}

TEST(MassOracle, WritesBitPattern) {
    const Circuit c = mass_oracle(12, 4, 3);
    EXPECT_EQ(c.gates().size(), 2u);
    for (std::uint64_t j = 0; j < 8; j++) {
        const BasisOutcome o = run_basis(c, {{regs::kNode, j}, {regs::kMass, 1}});
        EXPECT_EQ(o.at(regs::kMass), 13u);
        EXPECT_EQ(o.at(regs::kNode), j);
    }
    EXPECT_THROW(mass_oracle(16, 4, 3), std::invalid_argument);
}

TEST(ShiftInit, AllTwelveEntries) {
    const LatticeSpec spec(2, 2);
    const ShiftTable table = ShiftTable::graphene();
    const Circuit c = shift_init(spec);
    for (int r0 = 0; r0 < 2; r0++) {
        for (int s = 0; s < 2; s++) {
            for (int ell = 0; ell < 3; ell++) {
                const std::uint64_t j = encode_coord({static_cast<std::uint64_t>(r0), 1, s}, spec);
                const BasisOutcome o =
                    run_basis(c, {{regs::kNode, j}, {regs::kSlot, static_cast<std::uint64_t>(ell)}});
                const Shift d = table.at(r0, s, ell);
                const std::uint64_t want =
                    1 | (wrap(d.dc, spec.n_c) << 1) | (wrap(d.dr, spec.n_r) << (spec.n_c + 1));
                EXPECT_EQ(o.at(regs::kNeighbor), want) << r0 << s << ell;
                EXPECT_EQ(o.at(regs::kSlot), 0u);
                EXPECT_EQ(o.at(regs::kNode), j);
            }
        }
    }
}

TEST(ShiftInit, SlotThreeIsLeftAlone) {
    const LatticeSpec spec(2, 2);
    const BasisOutcome o = run_basis(shift_init(spec), {{regs::kNode, 5}, {regs::kSlot, 3}});
    EXPECT_EQ(o.at(regs::kSlot), 3u);
    EXPECT_EQ(o.at(regs::kNeighbor), 0u);
}

TEST(CoordAdder, MatchesNeighborFunctionExhaustively) {
    for (const LatticeSpec spec : {LatticeSpec(1, 1), LatticeSpec(2, 2), LatticeSpec(3, 2)}) {
        const Circuit shift = shift_init(spec);
        Circuit both = shift;
        append_coord_adder(both, spec);
        for (std::uint64_t j = 0; j < spec.node_count(); j++) {
            for (int ell = 0; ell < 3; ell++) {
                const BasisOutcome o =
                    run_basis(both, {{regs::kNode, j}, {regs::kSlot, static_cast<std::uint64_t>(ell)}});
                EXPECT_EQ(o.at(regs::kNeighbor), neighbor(j, ell, spec).k);
                EXPECT_EQ(o.at(regs::kCarry), 0u);
            }
        }
    }
}

TEST(BondValidation, FlagIsDummyOr) {
    const LatticeSpec spec(2, 2);
    const Circuit c = bond_validation(spec);
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        for (std::uint64_t k = 0; k < spec.node_count(); k += 3) {
            const BasisOutcome o = run_basis(c, {{regs::kNode, j}, {regs::kNeighbor, k}});
            EXPECT_EQ(o.at(regs::kFlag) == 1, is_dummy_index(j, spec) || is_dummy_index(k, spec));
            EXPECT_EQ(o.at(regs::kConditions), 0u);
        }
    }
}

TEST(ConnectivityOracle, AgreesWithGeometryAndInverts) {
    for (const LatticeSpec spec : {LatticeSpec(2, 2), LatticeSpec(3, 2), LatticeSpec(3, 3)}) {
        const Circuit oracle = connectivity_oracle(spec);
        const Circuit inverse = oracle.inverse();
        std::set<Bond> seen;
        for (std::uint64_t j = 0; j < spec.node_count(); j++) {
            for (int ell = 0; ell < 3; ell++) {
                const std::uint64_t in =
                    pack(oracle, {{regs::kNode, j}, {regs::kSlot, static_cast<std::uint64_t>(ell)}});
                const std::uint64_t out = simulate_basis(oracle, in).output;
                const BasisOutcome o = unpack(oracle, out);
                EXPECT_EQ(o.at(regs::kNeighbor), neighbor(j, ell, spec).k);
                EXPECT_EQ(o.at(regs::kSlot), 0u);
                EXPECT_EQ(o.at(regs::kConditions), 0u);
                EXPECT_EQ(simulate_basis(inverse, out).output, in);
                if (o.at(regs::kFlag) == 0) {
                    const std::uint64_t k = o.at(regs::kNeighbor);
                    seen.insert({std::min(j, k), std::max(j, k)});
                }
            }
        }
        const std::vector<Bond> truth = reference::brute_force_adjacency(spec).bonds();
        EXPECT_EQ(std::vector<Bond>(seen.begin(), seen.end()), truth) << spec.str();
    }
}

TEST(ConnectivityOracle, FaultyTableDisagreesWithGeometry) {
    const LatticeSpec spec(2, 2);
    ShiftTable table = ShiftTable::graphene();
    table.set(1, 1, 1, {1, 0});
    const Adjacency faulty = shift_adjacency(spec, table);
    EXPECT_TRUE(!faulty.symmetric() || faulty.bonds() != reference::brute_force_adjacency(spec).bonds());
}

TEST(Comparator, Examples) {
    const Circuit c = comparator(3);
    EXPECT_EQ(run_basis(c, {{regs::kNode, 5}, {regs::kNeighbor, 3}}).at("cmp"), 1u);
    EXPECT_EQ(run_basis(c, {{regs::kNode, 3}, {regs::kNeighbor, 5}}).at("cmp"), 0u);
    EXPECT_EQ(run_basis(c, {{regs::kNode, 4}, {regs::kNeighbor, 4}}).at("cmp"), 0u);
}

TEST(OrderedSwap, SortsAndRecordsOrder) {
    const Circuit c = expand_composites(ordered_swap(3));
    auto run = [&](std::uint64_t j, std::uint64_t k) { return run_basis(c, {{regs::kNode, j}, {regs::kNeighbor, k}}); };
    BasisOutcome o = run(5, 3);
    EXPECT_EQ(o.at(regs::kNode), 3u);
    EXPECT_EQ(o.at(regs::kNeighbor), 5u);
    EXPECT_EQ(o.at("order"), 1u);
    EXPECT_EQ(o.at("cmp"), 0u);
    o = run(3, 5);
    EXPECT_EQ(o.at(regs::kNode), 3u);
    EXPECT_EQ(o.at("order"), 0u);
    o = run(6, 6);
    EXPECT_EQ(o.at(regs::kNeighbor), 6u);
    EXPECT_EQ(o.at("order"), 0u);
    for (std::uint64_t j = 0; j < 8; j++) {
        for (std::uint64_t k = 0; k < 8; k++) {
            o = run(j, k);
            EXPECT_EQ(o.at(regs::kNode), std::min(j, k));
            EXPECT_EQ(o.at(regs::kNeighbor), std::max(j, k));
            EXPECT_EQ(o.at("cmp"), 0u);
        }
    }
}

}  // namespace
}  // namespace qenm::circuits
