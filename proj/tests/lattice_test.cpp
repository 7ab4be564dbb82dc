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

#include "qenm/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "geometry.hpp"

namespace qenm {
namespace {

TEST(LatticeSpec, CountsFollowAddressBits) {
    const LatticeSpec spec(3, 2);
    EXPECT_EQ(spec.rows(), 8u);
    EXPECT_EQ(spec.cols(), 4u);
    EXPECT_EQ(spec.index_bits(), 6);
    EXPECT_EQ(spec.node_count(), 64u);
    EXPECT_THROW(LatticeSpec(0, 2), std::invalid_argument);
    EXPECT_THROW(LatticeSpec(2, -1), std::invalid_argument);
}

TEST(Indexing, LittleEndianLayout) {
    const LatticeSpec spec(2, 3);
    for (std::uint64_t r = 0; r < spec.rows(); r++) {
        for (std::uint64_t c = 0; c < spec.cols(); c++) {
            for (int s = 0; s < 2; s++) {
                const std::uint64_t j = (r << (spec.n_c + 1)) + 2 * c + static_cast<std::uint64_t>(s);
                EXPECT_EQ(encode_coord({r, c, s}, spec), j);
                EXPECT_EQ(decode_index(j, spec), (NodeCoord{r, c, s}));
            }
        }
    }
    EXPECT_THROW(decode_index(spec.node_count(), spec), std::out_of_range);
    EXPECT_THROW(encode_coord({spec.rows(), 0, 0}, spec), std::out_of_range);
}

TEST(ShiftTable, GrapheneEntries) {
    const ShiftTable t = ShiftTable::graphene();
    EXPECT_EQ(t.at(0, 0, 0), (Shift{0, 0}));
    EXPECT_EQ(t.at(0, 0, 1), (Shift{-1, 0}));
    EXPECT_EQ(t.at(0, 0, 2), (Shift{-1, 1}));
    EXPECT_EQ(t.at(0, 1, 0), (Shift{0, 0}));
    EXPECT_EQ(t.at(0, 1, 1), (Shift{1, 0}));
    EXPECT_EQ(t.at(0, 1, 2), (Shift{1, 1}));
    EXPECT_EQ(t.at(1, 0, 0), (Shift{0, 0}));
    EXPECT_EQ(t.at(1, 0, 1), (Shift{-1, -1}));
    EXPECT_EQ(t.at(1, 0, 2), (Shift{-1, 0}));
    EXPECT_EQ(t.at(1, 1, 0), (Shift{0, 0}));
    EXPECT_EQ(t.at(1, 1, 1), (Shift{1, -1}));
    EXPECT_EQ(t.at(1, 1, 2), (Shift{1, 0}));
    EXPECT_THROW(t.at(0, 0, 3), std::invalid_argument);
    EXPECT_THROW(shift_vector(0, 0, 3), std::invalid_argument);
}

TEST(ShiftTable, SetRejectsLongShifts) {
    ShiftTable t = ShiftTable::graphene();
    EXPECT_THROW(t.set(0, 0, 0, {2, 0}), std::invalid_argument);
    t.set(0, 0, 1, {1, 0});
    EXPECT_EQ(t.at(0, 0, 1), (Shift{1, 0}));
    EXPECT_NE(t, ShiftTable::graphene());
}

TEST(Neighbor, SameCellSlotFlipsSublattice) {
    const LatticeSpec spec(3, 3);
    const std::uint64_t j = encode_coord({2, 3, 0}, spec);
    const Neighbor n = neighbor(j, 0, spec);
    EXPECT_EQ(decode_index(n.k, spec), (NodeCoord{2, 3, 1}));
    EXPECT_TRUE(n.valid);
}

TEST(Neighbor, RowWrapsModulo) {
    const LatticeSpec spec(2, 2);
    const std::uint64_t j = encode_coord({0, 1, 0}, spec);
    const Neighbor n = neighbor(j, 1, spec);
    EXPECT_EQ(decode_index(n.k, spec).r, spec.rows() - 1);
    EXPECT_FALSE(n.valid);
}

TEST(Dummy, BoundaryRules) {
    const LatticeSpec spec(3, 3);
    const auto R = spec.rows();
    const auto C = spec.cols();
    EXPECT_TRUE(boundary_rules({0, 2, 0}, spec).bottom_edge);
    EXPECT_FALSE(is_dummy({0, 2, 1}, spec));
    EXPECT_TRUE(boundary_rules({R - 1, 2, 1}, spec).top_buffer);
    EXPECT_TRUE(boundary_rules({R - 2, 2, 1}, spec).top_edge);
    EXPECT_FALSE(is_dummy({R - 2, 2, 0}, spec));
    EXPECT_TRUE(boundary_rules({2, C - 1, 0}, spec).right_buffer);
    EXPECT_FALSE(is_dummy({3, C - 1, 0}, spec));
    EXPECT_FALSE(is_dummy({3, 4, 1}, spec));
}

TEST(Dummy, MatchesGeometricOracle) {
    for (int nr = 1; nr <= 5; nr++) {
        for (int nc = 1; nc <= 5; nc++) {
            const LatticeSpec spec(nr, nc);
            const auto geo = reference::geometric_dummy_map(spec);
            std::size_t physical = 0;
            for (std::uint64_t j = 0; j < spec.node_count(); j++) {
                ASSERT_EQ(is_dummy_index(j, spec), geo[j]) << spec.str() << " node " << j;
                physical += !geo[j];
            }
            EXPECT_EQ(physical_nodes(spec).size(), physical);
        }
    }
}

TEST(Dummy, SingleRowHasNoPhysicalNodes) {
    EXPECT_TRUE(physical_nodes(LatticeSpec(1, 3)).empty());
}

TEST(Adjacency, MatchesBruteForceGeometry) {
    for (int nr = 1; nr <= 5; nr++) {
        for (int nc = 1; nc <= 5; nc++) {
            const LatticeSpec spec(nr, nc);
            const Adjacency adj = shift_adjacency(spec);
            EXPECT_EQ(adj.bonds(), reference::brute_force_adjacency(spec).bonds()) << spec.str();
            EXPECT_TRUE(adj.symmetric()) << spec.str();
        }
    }
}

TEST(Adjacency, ValidBondsHaveUnitLength) {
    const LatticeSpec spec(4, 4);
    for (const auto &[j, k] : shift_adjacency(spec).bonds()) {
        const Point a = node_position(decode_index(j, spec));
        const Point b = node_position(decode_index(k, spec));
        EXPECT_NEAR(std::hypot(a.x - b.x, a.y - b.y), 1.0, 1e-12) << j << "-" << k;
    }
}

TEST(Adjacency, InteriorDegreeIsThree) {
    const LatticeSpec spec(3, 3);
    const Adjacency adj = shift_adjacency(spec);
    EXPECT_EQ(adj.degree(encode_coord({3, 3, 0}, spec)), 3);
    EXPECT_EQ(adj.degree(encode_coord({3, 3, 1}, spec)), 3);
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        EXPECT_LE(adj.degree(j), 3);
        if (is_dummy_index(j, spec)) {
            EXPECT_EQ(adj.degree(j), 0);
        }
    }
}

TEST(Adjacency, CorruptedTableBreaksSymmetry) {
    const LatticeSpec spec(3, 3);
    ShiftTable t = ShiftTable::graphene();
    t.set(1, 1, 2, {1, 1});
    EXPECT_FALSE(shift_adjacency(spec, t).symmetric());
}

TEST(LatticeCsv, EightByEightHas128Rows) {
    const std::string csv = lattice_csv(LatticeSpec(3, 3));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "j,r,c,s,dummy,neigh0,neigh1,neigh2,valid0,valid1,valid2");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 128u);
}

}  // namespace
}  // namespace qenm
