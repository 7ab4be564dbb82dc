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

#ifndef QENM_REFERENCE_GEOMETRY_HPP
#define QENM_REFERENCE_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "qenm/lattice.hpp"

namespace qenm::reference {

/// Honeycomb adjacency derived from explicit planar coordinates.
///
/// Atoms are placed with axial lattice vectors and unit bond length, the
/// physical sheet is cut out by a bounding box and bonds are found by pairwise
/// distance. Shares no code path with the shift table.
Adjacency brute_force_adjacency(const LatticeSpec &spec);

/// Dummy map implied by the same bounding box.
std::vector<bool> geometric_dummy_map(const LatticeSpec &spec);

}  // namespace qenm::reference

#endif
