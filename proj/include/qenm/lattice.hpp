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

#ifndef QENM_LATTICE_HPP
#define QENM_LATTICE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qenm {

/// Padded graphene sheet addressed by n = n_r + n_c + 1 qubits.
///
/// Node index layout (little-endian): bit 0 is the sublattice bit s, the next
/// n_c bits hold the column c and the top n_r bits hold the row r.
struct LatticeSpec {
    int n_r = 0;
    int n_c = 0;

    LatticeSpec() = default;
    LatticeSpec(int n_r, int n_c);

    std::uint64_t rows() const { return std::uint64_t{1} << n_r; }
    std::uint64_t cols() const { return std::uint64_t{1} << n_c; }
    std::uint64_t node_count() const { return std::uint64_t{1} << index_bits(); }
    int index_bits() const { return n_r + n_c + 1; }

    bool operator==(const LatticeSpec &) const = default;
    std::string str() const;
};

struct NodeCoord {
    std::uint64_t r = 0;
    std::uint64_t c = 0;
    int s = 0;

    auto operator<=>(const NodeCoord &) const = default;
};

NodeCoord decode_index(std::uint64_t j, const LatticeSpec &spec);
std::uint64_t encode_coord(const NodeCoord &coord, const LatticeSpec &spec);

struct Shift {
    int dr = 0;
    int dc = 0;

    bool operator==(const Shift &) const = default;
};

/// Neighbor offsets indexed by (row parity r0, sublattice s, neighbor slot ell).
/// The sublattice always flips between a node and its neighbor.
class ShiftTable {
   public:
    static ShiftTable graphene();

    Shift at(int r0, int s, int ell) const;
    /// Overwrites one entry. Used by fault-injection runs of the validator.
    void set(int r0, int s, int ell, Shift shift);

    bool operator==(const ShiftTable &) const = default;

   private:
    static std::size_t slot(int r0, int s, int ell);
    std::array<Shift, 12> entries_{};
};

constexpr int kGrapheneSparsity = 3;

Shift shift_vector(int r0, int s, int ell);

struct Neighbor {
    std::uint64_t k = 0;
    bool valid = false;

    bool operator==(const Neighbor &) const = default;
};

Neighbor neighbor(std::uint64_t j, int ell, const LatticeSpec &spec);
Neighbor neighbor(std::uint64_t j, int ell, const LatticeSpec &spec, const ShiftTable &table);

struct BoundaryRules {
    bool bottom_edge = false;    // s = 0 and r = 0
    bool top_buffer = false;     // r = R - 1
    bool top_edge = false;       // s = 1 and r = R - 2
    bool right_buffer = false;   // c = C - 1 on even rows

    bool any() const { return bottom_edge || top_buffer || top_edge || right_buffer; }
};

BoundaryRules boundary_rules(const NodeCoord &coord, const LatticeSpec &spec);
bool is_dummy(const NodeCoord &coord, const LatticeSpec &spec);
bool is_dummy_index(std::uint64_t j, const LatticeSpec &spec);

/// Non-dummy node indices in increasing order.
std::vector<std::uint64_t> physical_nodes(const LatticeSpec &spec);

using Bond = std::pair<std::uint64_t, std::uint64_t>;

struct Adjacency {
    std::vector<std::vector<Neighbor>> lists;
    int d = kGrapheneSparsity;

    /// Valid bonds as (j, k) with j < k, sorted and deduplicated.
    std::vector<Bond> bonds() const;
    int degree(std::uint64_t j) const;
    bool symmetric() const;
};

/// Adjacency produced by the shift table: three slots per node, flagged.
Adjacency shift_adjacency(const LatticeSpec &spec);
Adjacency shift_adjacency(const LatticeSpec &spec, const ShiftTable &table);

/// Planar embedding with unit bond length, used for drawing.
struct Point {
    double x = 0;
    double y = 0;
};
Point node_position(const NodeCoord &coord);

/// CSV with columns j,r,c,s,dummy,neigh0,neigh1,neigh2,valid0,valid1,valid2.
std::string lattice_csv(const LatticeSpec &spec);

}  // namespace qenm

#endif
