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

#ifndef QENM_ENCODING_HPP
#define QENM_ENCODING_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qenm/boltzmann.hpp"
#include "qenm/enm.hpp"

namespace qenm {

enum class Encoding { standard, alternative };

std::string to_string(Encoding e);

/// Amplitude layout: per axis a block of 2N^2 entries. Within a block, part 0
/// holds the node amplitudes at index j (k register zero) and part 1 holds the
/// pair amplitudes at N^2 + j + N*k.
struct EncodingLayout {
    std::size_t nodes = 0;
    std::size_t axes = 0;

    std::size_t block_size() const { return 2 * nodes * nodes; }
    std::size_t dimension() const { return axes * block_size(); }
    std::size_t node_index(std::size_t axis, std::size_t j) const;
    std::size_t pair_index(std::size_t axis, std::size_t j, std::size_t k) const;
};

struct EncodedState {
    Encoding kind = Encoding::standard;
    EncodingLayout layout;
    Eigen::VectorXcd amplitudes;
    /// Total energy E (standard) or conserved F (alternative).
    double normalization = 0;
    double e_max = 0;
    int aa_rounds = 1;
    /// Per-axis rotation angle that splits velocity and displacement loading.
    std::vector<double> theta;

    Eigen::VectorXcd axis_block(std::size_t axis) const;
    std::string csv() const;
};

/// Optional thermal context: the rotation angles then use the ensemble mean
/// kinetic energy instead of the sampled one.
struct PrepOptions {
    std::optional<MBParams> thermal;
};

/// Standard encoding (sqrt(M) xdot, i mu) / sqrt(2E) with mu_jk = sqrt(kappa_jk)(x_j - x_k).
EncodedState prepare_standard(
    const SystemMatrices &sys, const AxisVectors &x0, const AxisVectors &v0, const PrepOptions &options = {});

/// Alternative encoding (P y, -i B^+ P ydot) / sqrt(2F) with y = sqrt(M) x.
EncodedState prepare_alternative(
    const SystemMatrices &sys, const SpectralData &spectral, const AxisVectors &x0, const AxisVectors &v0);

/// Rotation angle arccos(sqrt(2K) / sqrt(2K + 2 kappa d beta^2)).
double rotation_angle(double kinetic, double kappa, int d, double beta_sq);

/// ceil(sqrt((m_max alpha^2 + 2 kappa_max d beta^2) / (2E))).
int aa_rounds(const SystemMatrices &sys, double alpha_sq, double beta_sq, double energy);

/// Block Hamiltonian H = -[[0, B'], [B'^T, 0]] on one axis, B' the N x N^2 padded incidence matrix.
struct BlockHamiltonian {
    std::size_t nodes = 0;
    SparseMatrix H;
    /// sqrt(2 * kappa/m * d); the block-encoded operator is H / scale.
    double scale = 0;

    Eigen::MatrixXd dense() const;
};

/// N x N^2 incidence matrix indexed by j + N*k for the pair column.
SparseMatrix padded_incidence(const SystemMatrices &sys);

BlockHamiltonian build_block_H(const SystemMatrices &sys);

constexpr std::size_t kDenseEvolutionLimit = std::size_t{1} << 13;

/// exp(-iHt) from a cached eigendecomposition of H.
class DensePropagator {
   public:
    explicit DensePropagator(const BlockHamiltonian &hamiltonian);

    Eigen::VectorXcd apply(const Eigen::VectorXcd &block, double t) const;
    EncodedState evolve(const EncodedState &state, double t) const;

   private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

/// exp(-iHt) through functions of A, never forming H.
class FactoredPropagator {
   public:
    FactoredPropagator(const SystemMatrices &sys, const SpectralData &spectral);

    Eigen::VectorXcd apply(const Eigen::VectorXcd &block, double t) const;
    EncodedState evolve(const EncodedState &state, double t) const;

   private:
    std::size_t nodes_;
    SparseMatrix incidence_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
    double threshold_;
};

EncodedState evolve_exact(const EncodedState &state, const BlockHamiltonian &hamiltonian, double t);

/// Interleaves axes into one 2N-node system: node 2j carries x_j and 2j+1 carries y_j.
SystemMatrices doubled_mass_encoding(const SystemMatrices &sys);

}  // namespace qenm

#endif
