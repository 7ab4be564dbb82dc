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

#ifndef QENM_BLOCK_ENCODING_HPP
#define QENM_BLOCK_ENCODING_HPP

#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "qenm/circuit.hpp"
#include "qenm/lattice.hpp"

namespace qenm::circuits {

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>>;

/// A circuit whose postselected block encodes an operator. The block maps
/// basis states of `input` registers to basis states of `output` registers
/// (both packed little-endian in the listed order); every other qubit starts
/// in |0> and is postselected on |0>.
struct BlockEncodingCircuit {
    Circuit circuit;
    std::vector<std::string> input;
    std::vector<std::string> output;
    /// The encoded operator is (block) * scale.
    double scale = 1;
};

/// Sparse-access block encoding of B^T / sqrt(2 (kappa/m) d) for a uniform lattice.
///
/// Input |j> on the node register; output pair |J>|K> with J < K, indexed
/// J + N*K. Extra registers: cmp and order.
BlockEncodingCircuit build_UB_dagger(const LatticeSpec &spec, double kappa = 1, double mass = 1);

/// Registers sys (width bits) and anc. The anc = 0 block is |0><0| on sys.
Circuit build_U_cond(int width);

/// Block encoding of H / sqrt(2 (kappa/m) d) on the system register (j, k, part),
/// index J + N*K + N^2*part.
BlockEncodingCircuit build_UH(const LatticeSpec &spec, double kappa = 1, double mass = 1);

/// Simulates every input basis state and collects the postselected block.
ComplexSparse extract_block(const Circuit &circuit, const std::vector<std::string> &input,
                            const std::vector<std::string> &output);
ComplexSparse extract_block(const BlockEncodingCircuit &encoding);

}  // namespace qenm::circuits

#endif
