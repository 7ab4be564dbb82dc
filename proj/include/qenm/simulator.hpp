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

#ifndef QENM_SIMULATOR_HPP
#define QENM_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qenm/circuit.hpp"

namespace qenm::circuits {

using Amplitude = std::complex<double>;

/// Statevector stored as (basis index, amplitude) pairs. Suits the oracle
/// circuits here, which keep only a handful of branches alive at once.
class SparseState {
   public:
    explicit SparseState(int num_qubits);
    static SparseState basis(int num_qubits, std::uint64_t index);

    int num_qubits() const { return num_qubits_; }
    /// Sorted by basis index, duplicates merged, near-zero entries dropped.
    const std::vector<std::pair<std::uint64_t, Amplitude>> &entries() const;

    void set(std::uint64_t index, Amplitude amplitude);
    Amplitude amplitude(std::uint64_t index) const;
    double norm_squared() const;

    void apply(const Gate &gate);
    void apply(const Circuit &circuit);

    /// Probability that (basis & mask) == value.
    double probability(std::uint64_t mask, std::uint64_t value) const;
    /// Keeps matching entries, renormalizes, and returns the success probability.
    double postselect(std::uint64_t mask, std::uint64_t value);

   private:
    void compact() const;

    int num_qubits_;
    mutable std::vector<std::pair<std::uint64_t, Amplitude>> entries_;
    mutable bool compact_ = true;
};

std::uint64_t register_mask(const Register &reg);
std::uint64_t get_register(std::uint64_t basis, const Register &reg);
std::uint64_t set_register(std::uint64_t basis, const Register &reg, std::uint64_t value);

/// Register name to value.
using BasisOutcome = std::map<std::string, std::uint64_t>;

std::uint64_t pack(const Circuit &circuit, const BasisOutcome &values);
BasisOutcome unpack(const Circuit &circuit, std::uint64_t basis);

struct BasisRun {
    std::uint64_t output = 0;
    Amplitude phase = 1;
};

/// Runs a permutation circuit on one basis state without branching. Throws
/// if the circuit contains H or Ry gates whose controls are satisfied.
BasisRun simulate_basis(const Circuit &circuit, std::uint64_t input);
BasisOutcome run_basis(const Circuit &circuit, const BasisOutcome &inputs);

/// Applies composite gates functionally to a single basis index.
std::uint64_t apply_permutation(const Gate &gate, std::uint64_t basis);
bool controls_satisfied(const Gate &gate, std::uint64_t basis);

}  // namespace qenm::circuits

#endif
