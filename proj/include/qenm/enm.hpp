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

#ifndef QENM_ENM_HPP
#define QENM_ENM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <vector>

#include "qenm/lattice.hpp"

namespace qenm {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Harmonic spring between nodes j <= k. j == k is a tether to the rest position.
struct Spring {
    std::uint64_t j = 0;
    std::uint64_t k = 0;
    double kappa = 0;
};

/// Per-axis displacement or velocity vectors (x, y, and optionally z).
using AxisVectors = std::vector<Eigen::VectorXd>;

/// Classical description of one harmonic network.
///
/// B has one column per unordered pair (j <= k) in lexicographic order, so it
/// is N x N(N+1)/2 with at most two nonzeros per column.
struct SystemMatrices {
    Eigen::VectorXd masses;
    std::vector<Spring> springs;
    SparseMatrix K;
    SparseMatrix F;
    SparseMatrix A;
    SparseMatrix B;
    /// Lattice index of each row (identity for padded lattice systems).
    std::vector<std::uint64_t> labels;
    /// False for padding nodes that carry no physics.
    std::vector<bool> active;
    /// Sparsity d: the lattice's neighbor-slot count, or the largest degree otherwise.
    int sparsity = 0;
    /// Connected components among active nodes.
    int components = 0;

    std::size_t size() const { return static_cast<std::size_t>(masses.size()); }
    bool connected() const { return components == 1; }
    double m_max() const { return masses.maxCoeff(); }
    double m_min() const { return masses.minCoeff(); }
    double kappa_max() const;
    std::vector<std::uint64_t> active_nodes() const;

    static std::size_t pair_column(std::size_t j, std::size_t k, std::size_t n);
};

SystemMatrices build_system_from_springs(const Eigen::VectorXd &masses, std::vector<Spring> springs);
SystemMatrices build_system(const LatticeSpec &spec, double kappa, double mass);
SystemMatrices build_system(const LatticeSpec &spec, const ShiftTable &table, double kappa, double mass);

/// Restriction to active nodes, re-indexed densely; labels keep lattice indices.
SystemMatrices physical_subsystem(const SystemMatrices &sys);

/// Relative threshold separating zero from nonzero eigen/singular values.
constexpr double kRankTolerance = 1e-9;

struct SpectralData {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    double threshold = 0;

    bool is_null(Eigen::Index i) const { return eigenvalues[i] <= threshold; }
    int null_dimension() const;
    /// Projector onto the range of A.
    Eigen::MatrixXd projector() const;
    Eigen::MatrixXd pseudoinverse() const;
};

SpectralData spectral_decomposition(const SystemMatrices &sys);

struct Trajectory {
    std::vector<double> times;
    /// x[t][axis] and v[t][axis].
    std::vector<AxisVectors> x;
    std::vector<AxisVectors> v;

    std::size_t axes() const { return x.empty() ? 0 : x.front().size(); }
};

/// Exact solution of M x'' = -F x for each axis independently.
Trajectory evolve_classical(
    const SystemMatrices &sys,
    const SpectralData &spectral,
    const AxisVectors &x0,
    const AxisVectors &v0,
    const std::vector<double> &times);

/// Velocity-Verlet integration; a cross-check for the spectral solver only.
Trajectory integrate_verlet(
    const SystemMatrices &sys, const AxisVectors &x0, const AxisVectors &v0, double dt, std::size_t steps);

double kinetic_energy(const SystemMatrices &sys, const AxisVectors &v, const std::vector<std::uint64_t> &nodes);
double kinetic_energy(const SystemMatrices &sys, const AxisVectors &v);
double potential_energy(const SystemMatrices &sys, const AxisVectors &x, const std::vector<Spring> &springs);
double potential_energy(const SystemMatrices &sys, const AxisVectors &x);
double total_energy(const SystemMatrices &sys, const AxisVectors &x, const AxisVectors &v);

double kinetic_energy_subset(
    const SystemMatrices &sys, const Trajectory &traj, std::size_t t, const std::vector<std::uint64_t> &nodes);
double potential_energy_subset(
    const SystemMatrices &sys, const Trajectory &traj, std::size_t t, const std::vector<Spring> &springs);
double msd_subset(const Trajectory &traj, std::size_t t, const std::vector<std::uint64_t> &nodes);
double msd(const AxisVectors &x, const std::vector<std::uint64_t> &nodes);

/// Trapezoidal average of samples over a (possibly nonuniform) grid.
double time_average(const std::vector<double> &times, const std::vector<double> &values);
double b_factor(double msd_time_average);

double pseudoinverse_trace(const SystemMatrices &sys);
double pseudoinverse_trace(const SpectralData &spectral);
double condition_number_B(const SystemMatrices &sys);

/// F = y^T P y / 2 + ydot^T A^+ ydot / 2 for one axis in mass-weighted coordinates.
double conserved_F(const SpectralData &spectral, const Eigen::VectorXd &y, const Eigen::VectorXd &ydot);
/// Sum of conserved_F over axes, converting x, v into y = sqrt(M) x.
double conserved_F(
    const SystemMatrices &sys, const SpectralData &spectral, const AxisVectors &x, const AxisVectors &v);

Eigen::VectorXd mass_weighted(const SystemMatrices &sys, const Eigen::VectorXd &x);

/// Row-major text dump, one matrix row per line.
std::string dense_dump(const Eigen::MatrixXd &m);
/// CSV with columns t,node,axis,x,xdot.
std::string trajectory_csv(const SystemMatrices &sys, const Trajectory &traj);

}  // namespace qenm

#endif
