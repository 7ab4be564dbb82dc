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

#ifndef QENM_ORACLES_HPP
#define QENM_ORACLES_HPP

#include <cstdint>

#include "qenm/circuit.hpp"
#include "qenm/lattice.hpp"

namespace qenm::circuits {

/// Register names shared by the connectivity oracle and everything built on it.
namespace regs {
inline constexpr const char *kNode = "j";          // source node (s, c, r)
inline constexpr const char *kNeighbor = "k";      // neighbor node (s', c', r')
inline constexpr const char *kSlot = "ell";        // neighbor slot, 2 qubits
inline constexpr const char *kFlag = "flag";       // 1 marks an invalid bond
inline constexpr const char *kConditions = "cond"; // boundary-rule scratch, 8 qubits
inline constexpr const char *kCarry = "carry";     // adder scratch
inline constexpr const char *kMass = "z";
}  // namespace regs

/// Adds the j, k, ell, flag, cond and carry registers for `spec`.
void add_connectivity_registers(Circuit &circuit, const LatticeSpec &spec);

/// |j>|z> -> |j>|z xor mbar> for a uniform mass written in `width` bits.
Circuit mass_oracle(std::uint64_t mbar, int width, int index_bits);

/// Loads the offset for (r0, s, ell) into k and resets ell to |0>.
///
/// Afterwards the row field of k holds dr mod 2^n_r, the column field holds
/// dc mod 2^n_c (two's complement at the field width) and the sublattice bit
/// of k is 1. The input ell = 3 is not a neighbor slot and is left untouched.
void append_shift_init(Circuit &circuit, const LatticeSpec &spec, const ShiftTable &table);
Circuit shift_init(const LatticeSpec &spec, const ShiftTable &table = ShiftTable::graphene());

/// k += j field by field: r' = r + dr, c' = c + dc (modular), s' = s xor 1.
void append_coord_adder(Circuit &circuit, const LatticeSpec &spec);
Circuit coord_adder(const LatticeSpec &spec);

/// flag ^= D(j) or D(k); the eight condition qubits are computed and uncomputed.
void append_bond_validation(Circuit &circuit, const LatticeSpec &spec);
Circuit bond_validation(const LatticeSpec &spec);

/// |j>|ell>|0> -> |j>|0>|a(j, ell)> with flag marking ghost bonds.
void append_connectivity_oracle(Circuit &circuit, const LatticeSpec &spec, const ShiftTable &table);
Circuit connectivity_oracle(const LatticeSpec &spec, const ShiftTable &table = ShiftTable::graphene());

/// Registers j, k (width bits each) and cmp: cmp ^= [k < j].
Circuit comparator(int width);

/// Registers j, k, cmp, order. Sorts (j, k) so that j <= k, records the swap in
/// order, and returns cmp to |0>.
void append_ordered_swap(Circuit &circuit, const std::string &lhs, const std::string &rhs,
                         const std::string &cmp, const std::string &order);
Circuit ordered_swap(int width);

}  // namespace qenm::circuits

#endif
