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

#ifndef QENM_LOADERS_HPP
#define QENM_LOADERS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qenm/boltzmann.hpp"
#include "qenm/circuit.hpp"
#include "qenm/simulator.hpp"

namespace qenm::circuits {

/// A state-preparation circuit together with the outcome it must be postselected on.
struct Loader {
    Circuit circuit;
    std::uint64_t postselect_mask = 0;
    std::uint64_t postselect_value = 0;
    /// Register holding the loaded node index.
    std::string index_register;
};

struct LoadResult {
    /// Amplitude on each node index after postselection, before renormalization.
    std::vector<Amplitude> amplitudes;
    double success_probability = 0;
    /// Largest amplitude found on any basis state whose scratch registers are not |0>.
    double scratch_leak = 0;
};

/// Uniform superposition over n index qubits, parity bucket from `key`,
/// controlled Ry writing sin(phi_b / 2) = v_b on the ancilla, bucket uncomputed.
/// Postselect the ancilla on |1>.
Loader velocity_loader_two_bucket(const BucketKey &key, std::array<double, 2> normalized_velocities);

/// Inequality-test loader: a lookup writes sign and r-bit magnitude of values[j],
/// a uniform r-qubit register is compared against it, and the comparison is
/// folded back with Hadamards. Postselecting |0> on the r + 1 scratch qubits
/// leaves amplitude values[j] / (2^r sqrt(2^n)) on |j>.
Loader inequality_test_loader(const std::vector<std::int64_t> &values, int precision_bits);

/// Simulates a loader from |0...0> and reads back per-node amplitudes.
LoadResult run_loader(const Loader &loader);

/// Quantizes normalized velocities (|v| <= 1) to signed r-bit integers.
std::vector<std::int64_t> quantize_velocities(const Eigen::VectorXd &normalized, int precision_bits);

}  // namespace qenm::circuits

#endif
