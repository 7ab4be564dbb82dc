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

#include "qenm/encoding.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qenm/io.hpp"

namespace qenm {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0, 1};

void check_initial(const SystemMatrices &sys, const AxisVectors &x0, const AxisVectors &v0) {
    if (x0.empty() || x0.size() != v0.size()) {
        throw std::invalid_argument("need matching displacement and velocity vectors per axis");
    }
    for (std::size_t a = 0; a < x0.size(); a++) {
        if (static_cast<std::size_t>(x0[a].size()) != sys.size() || static_cast<std::size_t>(v0[a].size()) != sys.size()) {
            throw std::invalid_argument("initial vector length does not match node count");
        }
    }
}

// Real matrix times complex vector.
template <typename Matrix>
Eigen::VectorXcd mul(const Matrix &m, const Eigen::VectorXcd &v) {
    Eigen::VectorXd re = m * v.real();
    Eigen::VectorXd im = m * v.imag();
    Eigen::VectorXcd out(re.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

double squared_norm_sum(const AxisVectors &vs) {
    double sum = 0;
    for (const auto &v : vs) {
        sum += v.squaredNorm();
    }
    return sum;
}

}  // namespace

std::string to_string(Encoding e) {
    return e == Encoding::standard ? "standard" : "alternative";
}

std::size_t EncodingLayout::node_index(std::size_t axis, std::size_t j) const {
    if (axis >= axes || j >= nodes) {
        throw std::out_of_range("node amplitude index out of range");
    }
    return axis * block_size() + j;
}

std::size_t EncodingLayout::pair_index(std::size_t axis, std::size_t j, std::size_t k) const {
    if (axis >= axes || j >= nodes || k >= nodes) {
        throw std::out_of_range("pair amplitude index out of range");
    }
    return axis * block_size() + nodes * nodes + j + nodes * k;
}

Eigen::VectorXcd EncodedState::axis_block(std::size_t axis) const {
    if (axis >= layout.axes) {
        throw std::out_of_range("axis out of range");
    }
    return amplitudes.segment(static_cast<Eigen::Index>(axis * layout.block_size()),
                              static_cast<Eigen::Index>(layout.block_size()));
}

std::string EncodedState::csv() const {
    io::CsvWriter out({"axis", "part", "j", "k", "real", "imag"});
    const std::size_t n = layout.nodes;
    for (std::size_t i = 0; i < layout.dimension(); i++) {
        const Complex a = amplitudes[static_cast<Eigen::Index>(i)];
        if (std::abs(a) <= 1e-12) {
            continue;
        }
        const std::size_t axis = i / layout.block_size();
        const std::size_t local = i % layout.block_size();
        const std::size_t part = local / (n * n);
        const std::size_t jk = local % (n * n);
        out.row({std::to_string(axis), std::to_string(part), std::to_string(jk % n), std::to_string(jk / n),
                 io::format_double(a.real()), io::format_double(a.imag())});
    }
    return out.str();
}

double rotation_angle(double kinetic, double kappa, int d, double beta_sq) {
    const double vel = 2 * kinetic;
    const double disp = 2 * kappa * d * beta_sq;
    if (vel + disp <= 0) {
        return 0;
    }
    return std::acos(std::sqrt(vel) / std::sqrt(vel + disp));
}

int aa_rounds(const SystemMatrices &sys, double alpha_sq, double beta_sq, double energy) {
    if (!(energy > 0)) {
        throw std::invalid_argument("amplitude amplification needs positive energy");
    }
    const double two_e_max = sys.m_max() * alpha_sq + 2 * sys.kappa_max() * sys.sparsity * beta_sq;
    // Guard against ceil(1 + rounding) turning an exact ratio of one into two.
    const double ratio = std::sqrt(two_e_max / (2 * energy));
    return std::max(1, static_cast<int>(std::ceil(ratio - 1e-12)));
}

EncodedState prepare_standard(
    const SystemMatrices &sys, const AxisVectors &x0, const AxisVectors &v0, const PrepOptions &options) {
    check_initial(sys, x0, v0);
    const double energy = total_energy(sys, x0, v0);
    if (!(energy > 0)) {
        throw std::invalid_argument("standard encoding needs nonzero energy");
    }
    EncodedState st;
    st.kind = Encoding::standard;
    st.layout = {sys.size(), x0.size()};
    st.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(st.layout.dimension()));
    st.normalization = energy;
    const double inv = 1 / std::sqrt(2 * energy);
    for (std::size_t a = 0; a < x0.size(); a++) {
        for (std::size_t j = 0; j < sys.size(); j++) {
            const auto jj = static_cast<Eigen::Index>(j);
            st.amplitudes[static_cast<Eigen::Index>(st.layout.node_index(a, j))] =
                std::sqrt(sys.masses[jj]) * v0[a][jj] * inv;
        }
        for (const auto &s : sys.springs) {
            const auto j = static_cast<Eigen::Index>(s.j);
            const auto k = static_cast<Eigen::Index>(s.k);
            const double stretch = s.j == s.k ? x0[a][j] : x0[a][j] - x0[a][k];
            st.amplitudes[static_cast<Eigen::Index>(st.layout.pair_index(a, s.j, s.k))] =
                kI * std::sqrt(s.kappa) * stretch * inv;
        }
    }

    const double alpha_sq = squared_norm_sum(v0);
    const double beta_sq = squared_norm_sum(x0);
    st.e_max = (sys.m_max() * alpha_sq + 2 * sys.kappa_max() * sys.sparsity * beta_sq) / 2;
    st.aa_rounds = aa_rounds(sys, alpha_sq, beta_sq, energy);
    for (std::size_t a = 0; a < x0.size(); a++) {
        double kinetic = 0.5 * sys.masses.dot(v0[a].cwiseAbs2());
        if (options.thermal) {
            MBParams per_axis = *options.thermal;
            per_axis.D = 1;
            kinetic = mean_kinetic(per_axis, sys.active_nodes().size());
        }
        st.theta.push_back(rotation_angle(kinetic, sys.kappa_max(), sys.sparsity, x0[a].squaredNorm()));
    }
    return st;
}

EncodedState prepare_alternative(
    const SystemMatrices &sys, const SpectralData &spectral, const AxisVectors &x0, const AxisVectors &v0) {
    check_initial(sys, x0, v0);
    const double f = conserved_F(sys, spectral, x0, v0);
    if (!(f > 0)) {
        throw std::invalid_argument("alternative encoding needs F > 0");
    }
    EncodedState st;
    st.kind = Encoding::alternative;
    st.layout = {sys.size(), x0.size()};
    st.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(st.layout.dimension()));
    st.normalization = f;
    const Eigen::MatrixXd &V = spectral.eigenvectors;
    const SparseMatrix incidence = padded_incidence(sys);
    const double inv = 1 / std::sqrt(2 * f);
    const auto n = static_cast<Eigen::Index>(sys.size());
    for (std::size_t a = 0; a < x0.size(); a++) {
        Eigen::VectorXd cy = V.transpose() * mass_weighted(sys, x0[a]);
        Eigen::VectorXd cv = V.transpose() * mass_weighted(sys, v0[a]);
        for (Eigen::Index i = 0; i < cy.size(); i++) {
            if (spectral.is_null(i)) {
                cy[i] = 0;
                cv[i] = 0;
            } else {
                cv[i] /= spectral.eigenvalues[i];
            }
        }
        const Eigen::VectorXd py = V * cy;
        // B^+ P ydot = B^T A^+ ydot.
        const Eigen::VectorXd pair = incidence.transpose() * (V * cv);
        const auto base = static_cast<Eigen::Index>(a * st.layout.block_size());
        st.amplitudes.segment(base, n) = py.cast<Complex>() * inv;
        st.amplitudes.segment(base + n * n, n * n) = -kI * pair.cast<Complex>() * inv;
    }
    const double beta_sq = squared_norm_sum(x0);
    const double alpha_sq = squared_norm_sum(v0);
    st.e_max = (sys.m_max() * alpha_sq + 2 * sys.kappa_max() * sys.sparsity * beta_sq) / 2;
    return st;
}

SparseMatrix padded_incidence(const SystemMatrices &sys) {
    const std::size_t n = sys.size();
    std::vector<Eigen::Triplet<double>> trip;
    for (const auto &s : sys.springs) {
        const auto col = static_cast<Eigen::Index>(s.j + n * s.k);
        const std::size_t packed = SystemMatrices::pair_column(s.j, s.k, n);
        for (SparseMatrix::InnerIterator it(sys.B, static_cast<Eigen::Index>(packed)); it; ++it) {
            trip.emplace_back(it.row(), col, it.value());
        }
    }
    SparseMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

BlockHamiltonian build_block_H(const SystemMatrices &sys) {
    const std::size_t n = sys.size();
    const SparseMatrix incidence = padded_incidence(sys);
    std::vector<Eigen::Triplet<double>> trip;
    for (int col = 0; col < incidence.outerSize(); col++) {
        for (SparseMatrix::InnerIterator it(incidence, col); it; ++it) {
            const auto pair = static_cast<Eigen::Index>(n * n) + it.col();
            trip.emplace_back(it.row(), pair, -it.value());
            trip.emplace_back(pair, it.row(), -it.value());
        }
    }
    BlockHamiltonian bh;
    bh.nodes = n;
    bh.H.resize(static_cast<Eigen::Index>(2 * n * n), static_cast<Eigen::Index>(2 * n * n));
    bh.H.setFromTriplets(trip.begin(), trip.end());
    bh.scale = std::sqrt(2 * sys.kappa_max() / sys.m_min() * std::max(sys.sparsity, 1));
    return bh;
}

Eigen::MatrixXd BlockHamiltonian::dense() const {
    if (static_cast<std::size_t>(H.rows()) > kDenseEvolutionLimit) {
        throw std::length_error("block Hamiltonian of dimension " + std::to_string(H.rows()) +
                                " exceeds the dense limit");
    }
    return Eigen::MatrixXd(H);
}

DensePropagator::DensePropagator(const BlockHamiltonian &hamiltonian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian.dense());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of H failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd DensePropagator::apply(const Eigen::VectorXcd &block, double t) const {
    if (block.size() != eigenvalues_.size()) {
        throw std::invalid_argument("state block does not match the Hamiltonian");
    }
    Eigen::VectorXcd coeff = mul(eigenvectors_.transpose(), block);
    for (Eigen::Index i = 0; i < coeff.size(); i++) {
        coeff[i] *= std::exp(-kI * eigenvalues_[i] * t);
    }
    return mul(eigenvectors_, coeff);
}

EncodedState DensePropagator::evolve(const EncodedState &state, double t) const {
    EncodedState out = state;
    const auto bs = static_cast<Eigen::Index>(state.layout.block_size());
    for (std::size_t a = 0; a < state.layout.axes; a++) {
        out.amplitudes.segment(static_cast<Eigen::Index>(a) * bs, bs) = apply(state.axis_block(a), t);
    }
    return out;
}

FactoredPropagator::FactoredPropagator(const SystemMatrices &sys, const SpectralData &spectral)
    : nodes_(sys.size()),
      incidence_(padded_incidence(sys)),
      eigenvalues_(spectral.eigenvalues),
      eigenvectors_(spectral.eigenvectors),
      threshold_(spectral.threshold) {
}

Eigen::VectorXcd FactoredPropagator::apply(const Eigen::VectorXcd &block, double t) const {
    const auto n = static_cast<Eigen::Index>(nodes_);
    if (block.size() != 2 * n * n) {
        throw std::invalid_argument("state block does not match the system");
    }
    const Eigen::VectorXcd u = block.head(n);
    const Eigen::VectorXcd w = block.tail(n * n);
    Eigen::VectorXcd uc = mul(eigenvectors_.transpose(), u);
    Eigen::VectorXcd bw = mul(eigenvectors_.transpose(), mul(incidence_, w));
    Eigen::VectorXcd top_c(n), low_c(n);
    for (Eigen::Index i = 0; i < n; i++) {
        const double lambda = eigenvalues_[i];
        double c, f, h;
        if (lambda <= threshold_) {
            c = 1;
            f = t;
            h = -t * t / 2;
        } else {
            const double omega = std::sqrt(lambda);
            c = std::cos(omega * t);
            f = std::sin(omega * t) / omega;
            h = (c - 1) / lambda;
        }
        top_c[i] = c * uc[i] + kI * f * bw[i];
        low_c[i] = kI * f * uc[i] + h * bw[i];
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n * n);
    out.head(n) = mul(eigenvectors_, top_c);
    out.tail(n * n) = w + mul(incidence_.transpose(), mul(eigenvectors_, low_c));
    return out;
}

EncodedState FactoredPropagator::evolve(const EncodedState &state, double t) const {
    if (state.layout.nodes != nodes_) {
        throw std::invalid_argument("state does not match the system");
    }
    EncodedState out = state;
    const auto bs = static_cast<Eigen::Index>(state.layout.block_size());
    for (std::size_t a = 0; a < state.layout.axes; a++) {
        out.amplitudes.segment(static_cast<Eigen::Index>(a) * bs, bs) = apply(state.axis_block(a), t);
    }
    return out;
}

EncodedState evolve_exact(const EncodedState &state, const BlockHamiltonian &hamiltonian, double t) {
    return DensePropagator(hamiltonian).evolve(state, t);
}

SystemMatrices doubled_mass_encoding(const SystemMatrices &sys) {
    const std::size_t n = sys.size();
    Eigen::VectorXd masses(static_cast<Eigen::Index>(2 * n));
    for (std::size_t j = 0; j < n; j++) {
        masses[static_cast<Eigen::Index>(2 * j)] = sys.masses[static_cast<Eigen::Index>(j)];
        masses[static_cast<Eigen::Index>(2 * j + 1)] = sys.masses[static_cast<Eigen::Index>(j)];
    }
    std::vector<Spring> springs;
    for (const auto &s : sys.springs) {
        springs.push_back({2 * s.j, 2 * s.k, s.kappa});
        springs.push_back({2 * s.j + 1, 2 * s.k + 1, s.kappa});
    }
    SystemMatrices out = build_system_from_springs(masses, std::move(springs));
    for (std::size_t j = 0; j < n; j++) {
        out.active[2 * j] = sys.active[j];
        out.active[2 * j + 1] = sys.active[j];
        out.labels[2 * j] = 2 * sys.labels[j];
        out.labels[2 * j + 1] = 2 * sys.labels[j] + 1;
    }
    out.sparsity = sys.sparsity;
    return out;
}

}  // namespace qenm
