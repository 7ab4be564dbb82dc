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

#include "qenm/enm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qenm/io.hpp"

namespace qenm {

namespace {

int count_components(std::size_t n, const std::vector<Spring> &springs, const std::vector<bool> &active) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (const auto &s : springs) {
        if (s.j != s.k) {
            parent[find(s.j)] = find(s.k);
        }
    }
    int count = 0;
    for (std::size_t j = 0; j < n; j++) {
        if (active[j] && find(j) == j) {
            count++;
        }
    }
    return count;
}

void require_axes(const SystemMatrices &sys, const AxisVectors &vs, const char *what) {
    if (vs.empty()) {
        throw std::invalid_argument(std::string(what) + ": no axes given");
    }
    for (const auto &v : vs) {
        if (static_cast<std::size_t>(v.size()) != sys.size()) {
            throw std::invalid_argument(std::string(what) + ": vector length does not match node count");
        }
    }
}

}  // namespace

double SystemMatrices::kappa_max() const {
    double out = 0;
    for (const auto &s : springs) {
        out = std::max(out, s.kappa);
    }
    return out;
}

std::vector<std::uint64_t> SystemMatrices::active_nodes() const {
    std::vector<std::uint64_t> out;
    for (std::size_t j = 0; j < size(); j++) {
        if (active[j]) {
            out.push_back(j);
        }
    }
    return out;
}

std::size_t SystemMatrices::pair_column(std::size_t j, std::size_t k, std::size_t n) {
    if (j > k) {
        std::swap(j, k);
    }
    if (k >= n) {
        throw std::out_of_range("pair index out of range");
    }
    return j * n - (j * (j + 1)) / 2 + k;
}

SystemMatrices build_system_from_springs(const Eigen::VectorXd &masses, std::vector<Spring> springs) {
    const auto n = static_cast<std::size_t>(masses.size());
    if (n == 0) {
        throw std::invalid_argument("system needs at least one node");
    }
    if ((masses.array() <= 0).any()) {
        throw std::invalid_argument("masses must be positive");
    }
    for (auto &s : springs) {
        if (s.j > s.k) {
            std::swap(s.j, s.k);
        }
        if (s.k >= n) {
            throw std::out_of_range("spring endpoint out of range");
        }
        if (!(s.kappa >= 0)) {
            throw std::invalid_argument("spring constants must be nonnegative");
        }
    }
    std::sort(springs.begin(), springs.end(), [](const Spring &a, const Spring &b) {
        return std::tie(a.j, a.k) < std::tie(b.j, b.k);
    });
    for (std::size_t i = 1; i < springs.size(); i++) {
        if (springs[i].j == springs[i - 1].j && springs[i].k == springs[i - 1].k) {
            throw std::invalid_argument("duplicate spring");
        }
    }
    std::erase_if(springs, [](const Spring &s) { return s.kappa == 0; });

    SystemMatrices sys;
    sys.masses = masses;
    sys.springs = springs;
    sys.labels.resize(n);
    std::iota(sys.labels.begin(), sys.labels.end(), 0);
    sys.active.assign(n, true);

    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> k_trip, f_trip, a_trip, b_trip;
    std::vector<int> degree(n, 0);
    const Eigen::VectorXd inv_sqrt_m = masses.array().rsqrt();
    for (const auto &s : springs) {
        const double root_j = std::sqrt(s.kappa) * inv_sqrt_m[s.j];
        const std::size_t col = SystemMatrices::pair_column(s.j, s.k, n);
        if (s.j == s.k) {
            k_trip.emplace_back(s.j, s.j, s.kappa);
            f_trip.emplace_back(s.j, s.j, s.kappa);
            b_trip.emplace_back(s.j, col, root_j);
            continue;
        }
        const double root_k = std::sqrt(s.kappa) * inv_sqrt_m[s.k];
        k_trip.emplace_back(s.j, s.k, s.kappa);
        k_trip.emplace_back(s.k, s.j, s.kappa);
        f_trip.emplace_back(s.j, s.j, s.kappa);
        f_trip.emplace_back(s.k, s.k, s.kappa);
        f_trip.emplace_back(s.j, s.k, -s.kappa);
        f_trip.emplace_back(s.k, s.j, -s.kappa);
        b_trip.emplace_back(s.j, col, root_j);
        b_trip.emplace_back(s.k, col, -root_k);
        degree[s.j]++;
        degree[s.k]++;
    }
    const auto rows = static_cast<Eigen::Index>(n);
    sys.K.resize(rows, rows);
    sys.K.setFromTriplets(k_trip.begin(), k_trip.end());
    sys.F.resize(rows, rows);
    sys.F.setFromTriplets(f_trip.begin(), f_trip.end());
    for (int outer = 0; outer < sys.F.outerSize(); outer++) {
        for (SparseMatrix::InnerIterator it(sys.F, outer); it; ++it) {
            a_trip.emplace_back(it.row(), it.col(), it.value() * inv_sqrt_m[it.row()] * inv_sqrt_m[it.col()]);
        }
    }
    sys.A.resize(rows, rows);
    sys.A.setFromTriplets(a_trip.begin(), a_trip.end());
    sys.B.resize(rows, static_cast<Eigen::Index>(n * (n + 1) / 2));
    sys.B.setFromTriplets(b_trip.begin(), b_trip.end());
    sys.sparsity = n == 0 ? 0 : *std::max_element(degree.begin(), degree.end());
    sys.components = count_components(n, sys.springs, sys.active);
    return sys;
}

SystemMatrices build_system(const LatticeSpec &spec, double kappa, double mass) {
    return build_system(spec, ShiftTable::graphene(), kappa, mass);
}

SystemMatrices build_system(const LatticeSpec &spec, const ShiftTable &table, double kappa, double mass) {
    if (!(kappa > 0) || !(mass > 0)) {
        throw std::invalid_argument("spring constant and mass must be positive");
    }
    std::vector<Spring> springs;
    for (const auto &[j, k] : shift_adjacency(spec, table).bonds()) {
        springs.push_back({j, k, kappa});
    }
    Eigen::VectorXd masses = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(spec.node_count()), mass);
    SystemMatrices sys = build_system_from_springs(masses, std::move(springs));
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        sys.active[j] = !is_dummy_index(j, spec);
    }
    sys.sparsity = kGrapheneSparsity;
    sys.components = count_components(sys.size(), sys.springs, sys.active);
    return sys;
}

SystemMatrices physical_subsystem(const SystemMatrices &sys) {
    std::vector<std::int64_t> remap(sys.size(), -1);
    std::vector<std::uint64_t> labels;
    for (std::size_t j = 0; j < sys.size(); j++) {
        if (sys.active[j]) {
            remap[j] = static_cast<std::int64_t>(labels.size());
            labels.push_back(sys.labels[j]);
        }
    }
    if (labels.empty()) {
        throw std::invalid_argument("system has no active nodes");
    }
    Eigen::VectorXd masses(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t j = 0; j < sys.size(); j++) {
        if (remap[j] >= 0) {
            masses[remap[j]] = sys.masses[static_cast<Eigen::Index>(j)];
        }
    }
    std::vector<Spring> springs;
    for (const auto &s : sys.springs) {
        if (remap[s.j] < 0 || remap[s.k] < 0) {
            throw std::logic_error("spring touches an inactive node");
        }
        springs.push_back({static_cast<std::uint64_t>(remap[s.j]), static_cast<std::uint64_t>(remap[s.k]), s.kappa});
    }
    SystemMatrices out = build_system_from_springs(masses, std::move(springs));
    out.labels = std::move(labels);
    out.sparsity = std::max(out.sparsity, sys.sparsity);
    return out;
}

int SpectralData::null_dimension() const {
    int n = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); i++) {
        n += is_null(i) ? 1 : 0;
    }
    return n;
}

Eigen::MatrixXd SpectralData::projector() const {
    const Eigen::Index n = eigenvalues.size();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        if (!is_null(i)) {
            p.noalias() += eigenvectors.col(i) * eigenvectors.col(i).transpose();
        }
    }
    return p;
}

Eigen::MatrixXd SpectralData::pseudoinverse() const {
    Eigen::VectorXd inv(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); i++) {
        inv[i] = is_null(i) ? 0.0 : 1.0 / eigenvalues[i];
    }
    return eigenvectors * inv.asDiagonal() * eigenvectors.transpose();
}

SpectralData spectral_decomposition(const SystemMatrices &sys) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(sys.A));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of A failed");
    }
    SpectralData out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    double scale = out.eigenvalues.cwiseAbs().maxCoeff();
    out.threshold = kRankTolerance * (scale > 0 ? scale : 1.0);
    return out;
}

Trajectory evolve_classical(
    const SystemMatrices &sys,
    const SpectralData &spectral,
    const AxisVectors &x0,
    const AxisVectors &v0,
    const std::vector<double> &times) {
    if (times.empty()) {
        throw std::invalid_argument("time grid is empty");
    }
    require_axes(sys, x0, "evolve_classical");
    require_axes(sys, v0, "evolve_classical");
    if (x0.size() != v0.size()) {
        throw std::invalid_argument("evolve_classical: axis count mismatch");
    }
    const Eigen::VectorXd sqrt_m = sys.masses.cwiseSqrt();
    const Eigen::MatrixXd &V = spectral.eigenvectors;
    const Eigen::Index n = spectral.eigenvalues.size();
    Eigen::VectorXd omega(n);
    for (Eigen::Index i = 0; i < n; i++) {
        omega[i] = spectral.is_null(i) ? 0.0 : std::sqrt(spectral.eigenvalues[i]);
    }

    std::vector<Eigen::VectorXd> a, b;
    for (std::size_t axis = 0; axis < x0.size(); axis++) {
        a.push_back(V.transpose() * sqrt_m.cwiseProduct(x0[axis]));
        b.push_back(V.transpose() * sqrt_m.cwiseProduct(v0[axis]));
    }

    Trajectory traj;
    traj.times = times;
    Eigen::VectorXd pos(n), vel(n);
    for (double t : times) {
        AxisVectors xs, vs;
        for (std::size_t axis = 0; axis < x0.size(); axis++) {
            for (Eigen::Index i = 0; i < n; i++) {
                if (omega[i] == 0) {
                    pos[i] = a[axis][i] + b[axis][i] * t;
                    vel[i] = b[axis][i];
                } else {
                    const double c = std::cos(omega[i] * t);
                    const double s = std::sin(omega[i] * t);
                    pos[i] = a[axis][i] * c + b[axis][i] * s / omega[i];
                    vel[i] = -a[axis][i] * omega[i] * s + b[axis][i] * c;
                }
            }
            xs.push_back((V * pos).cwiseQuotient(sqrt_m));
            vs.push_back((V * vel).cwiseQuotient(sqrt_m));
        }
        traj.x.push_back(std::move(xs));
        traj.v.push_back(std::move(vs));
    }
    return traj;
}

Trajectory integrate_verlet(
    const SystemMatrices &sys, const AxisVectors &x0, const AxisVectors &v0, double dt, std::size_t steps) {
    require_axes(sys, x0, "integrate_verlet");
    require_axes(sys, v0, "integrate_verlet");
    const Eigen::VectorXd inv_m = sys.masses.cwiseInverse();
    AxisVectors x = x0, v = v0, acc;
    for (const auto &xa : x) {
        acc.push_back(-inv_m.cwiseProduct(sys.F * xa));
    }
    Trajectory traj;
    traj.times.push_back(0);
    traj.x.push_back(x);
    traj.v.push_back(v);
    for (std::size_t step = 1; step <= steps; step++) {
        for (std::size_t axis = 0; axis < x.size(); axis++) {
            v[axis] += 0.5 * dt * acc[axis];
            x[axis] += dt * v[axis];
            acc[axis] = -inv_m.cwiseProduct(sys.F * x[axis]);
            v[axis] += 0.5 * dt * acc[axis];
        }
        traj.times.push_back(dt * static_cast<double>(step));
        traj.x.push_back(x);
        traj.v.push_back(v);
    }
    return traj;
}

double kinetic_energy(const SystemMatrices &sys, const AxisVectors &v, const std::vector<std::uint64_t> &nodes) {
    double sum = 0;
    for (const auto &va : v) {
        for (std::uint64_t j : nodes) {
            const auto jj = static_cast<Eigen::Index>(j);
            sum += sys.masses[jj] * va[jj] * va[jj];
        }
    }
    return sum / 2;
}

double kinetic_energy(const SystemMatrices &sys, const AxisVectors &v) {
    double sum = 0;
    for (const auto &va : v) {
        sum += sys.masses.dot(va.cwiseAbs2());
    }
    return sum / 2;
}

double potential_energy(const SystemMatrices &, const AxisVectors &x, const std::vector<Spring> &springs) {
    double sum = 0;
    for (const auto &xa : x) {
        for (const auto &s : springs) {
            const double stretch = s.j == s.k ? xa[static_cast<Eigen::Index>(s.j)]
                                              : xa[static_cast<Eigen::Index>(s.j)] - xa[static_cast<Eigen::Index>(s.k)];
            sum += s.kappa * stretch * stretch;
        }
    }
    return sum / 2;
}

double potential_energy(const SystemMatrices &sys, const AxisVectors &x) {
    return potential_energy(sys, x, sys.springs);
}

double total_energy(const SystemMatrices &sys, const AxisVectors &x, const AxisVectors &v) {
    return kinetic_energy(sys, v) + potential_energy(sys, x);
}

double kinetic_energy_subset(
    const SystemMatrices &sys, const Trajectory &traj, std::size_t t, const std::vector<std::uint64_t> &nodes) {
    return kinetic_energy(sys, traj.v.at(t), nodes);
}

double potential_energy_subset(
    const SystemMatrices &sys, const Trajectory &traj, std::size_t t, const std::vector<Spring> &springs) {
    return potential_energy(sys, traj.x.at(t), springs);
}

double msd(const AxisVectors &x, const std::vector<std::uint64_t> &nodes) {
    if (nodes.empty()) {
        throw std::invalid_argument("msd of an empty node set");
    }
    double sum = 0;
    for (const auto &xa : x) {
        for (std::uint64_t j : nodes) {
            const double d = xa[static_cast<Eigen::Index>(j)];
            sum += d * d;
        }
    }
    return sum / static_cast<double>(nodes.size());
}

double msd_subset(const Trajectory &traj, std::size_t t, const std::vector<std::uint64_t> &nodes) {
    return msd(traj.x.at(t), nodes);
}

double time_average(const std::vector<double> &times, const std::vector<double> &values) {
    if (times.size() != values.size() || times.empty()) {
        throw std::invalid_argument("time_average needs matching nonempty series");
    }
    if (times.size() == 1) {
        return values.front();
    }
    double area = 0;
    for (std::size_t i = 1; i < times.size(); i++) {
        area += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
    }
    const double span = times.back() - times.front();
    if (!(span > 0)) {
        throw std::invalid_argument("time grid must be increasing");
    }
    return area / span;
}

double b_factor(double msd_time_average) {
    return 8 * std::numbers::pi * std::numbers::pi * msd_time_average;
}

double pseudoinverse_trace(const SpectralData &spectral) {
    double sum = 0;
    for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); i++) {
        if (!spectral.is_null(i)) {
            sum += 1.0 / spectral.eigenvalues[i];
        }
    }
    return sum;
}

double pseudoinverse_trace(const SystemMatrices &sys) {
    return pseudoinverse_trace(spectral_decomposition(sys));
}

double condition_number_B(const SystemMatrices &sys) {
    // Squared singular values of B are the eigenvalues of the Gram matrix B B^T.
    Eigen::MatrixXd gram = Eigen::MatrixXd(sys.B * sys.B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("singular value computation failed");
    }
    const Eigen::VectorXd &ev = solver.eigenvalues();
    const double top = ev.maxCoeff();
    if (!(top > 0)) {
        throw std::domain_error("incidence matrix is zero");
    }
    double bottom = top;
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (ev[i] > kRankTolerance * top) {
            bottom = std::min(bottom, ev[i]);
        }
    }
    return std::sqrt(top / bottom);
}

double conserved_F(const SpectralData &spectral, const Eigen::VectorXd &y, const Eigen::VectorXd &ydot) {
    const Eigen::VectorXd cy = spectral.eigenvectors.transpose() * y;
    const Eigen::VectorXd cv = spectral.eigenvectors.transpose() * ydot;
    double sum = 0;
    for (Eigen::Index i = 0; i < cy.size(); i++) {
        if (!spectral.is_null(i)) {
            sum += cy[i] * cy[i] + cv[i] * cv[i] / spectral.eigenvalues[i];
        }
    }
    return sum / 2;
}

double conserved_F(
    const SystemMatrices &sys, const SpectralData &spectral, const AxisVectors &x, const AxisVectors &v) {
    double sum = 0;
    for (std::size_t axis = 0; axis < x.size(); axis++) {
        sum += conserved_F(spectral, mass_weighted(sys, x[axis]), mass_weighted(sys, v.at(axis)));
    }
    return sum;
}

Eigen::VectorXd mass_weighted(const SystemMatrices &sys, const Eigen::VectorXd &x) {
    return sys.masses.cwiseSqrt().cwiseProduct(x);
}

std::string dense_dump(const Eigen::MatrixXd &m) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out << (c ? " " : "") << io::format_double(m(r, c));
        }
        out << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const SystemMatrices &sys, const Trajectory &traj) {
    io::CsvWriter csv({"t", "node", "axis", "x", "xdot"});
    static const char *kAxisNames[] = {"x", "y", "z"};
    for (std::size_t t = 0; t < traj.times.size(); t++) {
        for (std::size_t axis = 0; axis < traj.axes(); axis++) {
            for (std::size_t j = 0; j < sys.size(); j++) {
                const auto jj = static_cast<Eigen::Index>(j);
                csv.row({io::format_double(traj.times[t]),
                         std::to_string(sys.labels[j]),
                         axis < 3 ? kAxisNames[axis] : std::to_string(axis),
                         io::format_double(traj.x[t][axis][jj]),
                         io::format_double(traj.v[t][axis][jj])});
            }
        }
    }
    return csv.str();
}

}  // namespace qenm
