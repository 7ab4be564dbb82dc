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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "geometry.hpp"
#include "qenm/block_encoding.hpp"
#include "qenm/boltzmann.hpp"
#include "qenm/encoding.hpp"
#include "qenm/enm.hpp"
#include "qenm/measure.hpp"
#include "qenm/oracles.hpp"
#include "qenm/simulator.hpp"
#include "qenm/stats.hpp"

namespace {

using namespace qenm;
namespace fs = std::filesystem;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

double sparse_max_abs(const SparseMatrix &m) {
    double out = 0;
    for (int k = 0; k < m.outerSize(); k++) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

double sparse_max_abs(const circuits::ComplexSparse &m) {
    double out = 0;
    for (int k = 0; k < m.outerSize(); k++) {
        for (circuits::ComplexSparse::InnerIterator it(m, k); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

// Every (n_r, n_c) with at most `bits` index bits.
std::vector<LatticeSpec> lattices_up_to(int bits) {
    std::vector<LatticeSpec> out;
    for (int r = 1; r + 2 <= bits; r++) {
        for (int c = 1; r + c + 1 <= bits; c++) {
            out.emplace_back(r, c);
        }
    }
    return out;
}

AxisVectors random_on(const SystemMatrices &sys, std::size_t axes, double scale, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, scale);
    AxisVectors out(axes, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size())));
    for (auto &v : out) {
        for (auto j : sys.active_nodes()) {
            v[static_cast<Eigen::Index>(j)] = g(rng);
        }
    }
    return out;
}

// Removes the null-space component of y = sqrt(M) x on each axis.
AxisVectors drift_free(const SystemMatrices &sys, const SpectralData &spectral, AxisVectors v) {
    const Eigen::MatrixXd P = spectral.projector();
    const Eigen::VectorXd sqrt_m = sys.masses.cwiseSqrt();
    for (auto &a : v) {
        a = (P * sqrt_m.cwiseProduct(a)).cwiseQuotient(sqrt_m);
    }
    return v;
}

std::vector<double> grid(double t_end, int steps) {
    std::vector<double> t;
    for (int i = 0; i <= steps; i++) {
        t.push_back(t_end * i / steps);
    }
    return t;
}

Outcome factorization() {
    double worst_a = 0, worst_f = 0;
    int count = 0;
    for (const LatticeSpec &spec : lattices_up_to(10)) {
        const SystemMatrices sys = build_system(spec, 1.7, 0.6);
        const SparseMatrix BBt = sys.B * SparseMatrix(sys.B.transpose());
        worst_a = std::max(worst_a, sparse_max_abs(SparseMatrix(BBt - sys.A)));
        const SparseMatrix sB = sys.masses.cwiseSqrt().asDiagonal() * sys.B;
        const SparseMatrix FF = sB * SparseMatrix(sB.transpose());
        worst_f = std::max(worst_f, sparse_max_abs(SparseMatrix(FF - sys.F)));
        count++;
    }
    return {worst_a <= 1e-10 && worst_f <= 1e-10,
            std::to_string(count) + " lattices up to 1024 nodes, |BB^T - A| = " + fmt(worst_a) +
                ", |sqrt(M)B (sqrt(M)B)^T - F| = " + fmt(worst_f)};
}

Outcome oracle_equivalence() {
    using namespace circuits;
    std::size_t mismatches = 0, states = 0;
    int count = 0;
    for (const LatticeSpec &spec : lattices_up_to(12)) {
        const Circuit oracle = connectivity_oracle(spec);
        std::set<Bond> gate_bonds;
        for (std::uint64_t j = 0; j < spec.node_count(); j++) {
            for (int ell = 0; ell < kGrapheneSparsity; ell++) {
                const std::uint64_t in =
                    pack(oracle, {{regs::kNode, j}, {regs::kSlot, static_cast<std::uint64_t>(ell)}});
                const BasisOutcome o = unpack(oracle, simulate_basis(oracle, in).output);
                const Neighbor expect = neighbor(j, ell, spec);
                const bool valid = o.at(regs::kFlag) == 0;
                const std::uint64_t k = o.at(regs::kNeighbor);
                mismatches += k != expect.k || valid != expect.valid || o.at(regs::kNode) != j ||
                              o.at(regs::kSlot) != 0 || o.at(regs::kConditions) != 0 || o.at(regs::kCarry) != 0;
                if (valid) {
                    gate_bonds.insert({std::min(j, k), std::max(j, k)});
                }
                states++;
            }
        }
        const std::vector<Bond> truth = reference::brute_force_adjacency(spec).bonds();
        if (std::vector<Bond>(gate_bonds.begin(), gate_bonds.end()) != truth) {
            mismatches++;
        }
        count++;
    }
    return {mismatches == 0, std::to_string(count) + " lattices up to 12 index bits, " + std::to_string(states) +
                                 " basis states, " + std::to_string(mismatches) + " mismatches"};
}

std::vector<SystemMatrices> small_systems() {
    std::vector<SystemMatrices> out;
    out.push_back(build_system(LatticeSpec(2, 1), 1.0, 1.0));
    out.push_back(physical_subsystem(build_system(LatticeSpec(2, 2), 1.3, 0.8)));
    Eigen::VectorXd masses(6);
    masses << 1.0, 2.0, 0.5, 1.5, 3.0, 0.7;
    out.push_back(build_system_from_springs(
        masses, {{0, 1, 1.0}, {1, 2, 0.7}, {2, 3, 2.0}, {3, 4, 1.2}, {4, 5, 0.4}, {0, 5, 0.9}, {1, 4, 0.3}}));
    return out;
}

Outcome trajectory_equivalence() {
    std::mt19937_64 rng(101);
    double worst = 0;
    std::size_t largest = 0;
    for (const SystemMatrices &sys : small_systems()) {
        const SpectralData sp = spectral_decomposition(sys);
        const AxisVectors x = random_on(sys, 2, 0.1, rng);
        const AxisVectors v = random_on(sys, 2, 1.0, rng);
        const auto times = grid(20.0, 49);
        const Trajectory traj = evolve_classical(sys, sp, x, v, times);
        const EncodedState st0 = prepare_standard(sys, x, v);
        const DensePropagator prop(build_block_H(sys));
        for (std::size_t i = 0; i < times.size(); i++) {
            const EncodedState q = prop.evolve(st0, times[i]);
            const EncodedState c = prepare_standard(sys, traj.x[i], traj.v[i]);
            worst = std::max(worst, (q.amplitudes - c.amplitudes).cwiseAbs().maxCoeff());
        }
        largest = std::max(largest, sys.size());
    }
    return {worst <= 1e-8, "3 systems with N <= " + std::to_string(largest) + ", 50 times, max deviation " + fmt(worst)};
}

Outcome energy_fractions() {
    const SystemMatrices sys = physical_subsystem(build_system(LatticeSpec(2, 2), 1.0, 1.0));
    const SpectralData sp = spectral_decomposition(sys);
    std::mt19937_64 rng(202);
    const AxisVectors x = random_on(sys, 2, 0.2, rng);
    const AxisVectors v = random_on(sys, 2, 1.0, rng);
    const auto times = grid(9.0, 9);
    const Trajectory traj = evolve_classical(sys, sp, x, v, times);
    const EncodedState st0 = prepare_standard(sys, x, v);
    const double energy = st0.normalization;
    const DensePropagator prop(build_block_H(sys));
    double worst = 0;
    int subsets = 0;
    for (int trial = 0; trial < 20; trial++) {
        SubsetSelector kin;
        SubsetSelector pot;
        pot.target = Target::potential;
        std::vector<Spring> springs;
        while (kin.nodes.empty() || springs.empty()) {
            kin.nodes.clear();
            pot.bonds.clear();
            springs.clear();
            for (std::uint64_t j = 0; j < sys.size(); j++) {
                if (rng() & 1) {
                    kin.nodes.push_back(j);
                }
            }
            for (const Spring &s : sys.springs) {
                if (rng() & 1) {
                    pot.bonds.push_back({s.j, s.k});
                    springs.push_back(s);
                }
            }
        }
        for (std::size_t i = 0; i < times.size(); i++) {
            const EncodedState st = prop.evolve(st0, times[i]);
            const double k = kinetic_energy_subset(sys, traj, i, kin.nodes) / energy;
            const double u = potential_energy_subset(sys, traj, i, springs) / energy;
            worst = std::max(worst, std::abs(energy_fraction(st, kin).fraction - k));
            worst = std::max(worst, std::abs(energy_fraction(st, pot).fraction - u));
        }
        subsets++;
    }
    return {worst <= 1e-8, std::to_string(subsets) + " node and bond subsets x " + std::to_string(times.size()) +
                               " times, max deviation " + fmt(worst)};
}

Outcome alternative_conservation() {
    std::mt19937_64 rng(303);
    double drift = 0, msd_err = 0;
    for (const SystemMatrices &sys : small_systems()) {
        const SpectralData sp = spectral_decomposition(sys);
        const AxisVectors x = drift_free(sys, sp, random_on(sys, 2, 0.2, rng));
        const AxisVectors v = drift_free(sys, sp, random_on(sys, 2, 1.0, rng));
        const auto times = grid(20.0, 49);
        const Trajectory traj = evolve_classical(sys, sp, x, v, times);
        const EncodedState st0 = prepare_alternative(sys, sp, x, v);
        const double F0 = st0.normalization;
        const DensePropagator prop(build_block_H(sys));
        SubsetSelector sel;
        sel.target = Target::displacement;
        sel.nodes = sys.active_nodes();
        for (std::size_t i = 0; i < times.size(); i++) {
            const double F = conserved_F(sys, sp, traj.x[i], traj.v[i]);
            const EncodedState st = prop.evolve(st0, times[i]);
            drift = std::max({drift, std::abs(F - F0) / F0, std::abs(st.amplitudes.squaredNorm() - 1)});
            const double c = msd_subset(traj, i, sel.nodes);
            msd_err = std::max(msd_err, std::abs(msd_fraction(st, sys, sel).estimate - c) / std::max(1.0, c));
        }
    }
    return {drift <= 1e-8 && msd_err <= 1e-8,
            "relative F drift " + fmt(drift) + ", MSD deviation " + fmt(msd_err) + " over 3 systems x 50 times"};
}

Outcome moments() {
    double odd = 0, second = 0, zeroth = 0;
    for (double T : {0.1, 1.0, 300.0}) {
        for (double m : {0.5, 1.0, 12.0}) {
            const MBParams p{m, T, 1.0, 2};
            const DiscretizedMB d = discretize_two_bucket(p);
            zeroth = std::max(zeroth, std::abs(d.moment(0) - 1));
            odd = std::max({odd, std::abs(d.moment(1)), std::abs(d.moment(3))});
            second = std::max(second, std::abs(d.moment(2) - T / m));
        }
    }
    return {zeroth <= 1e-12 && odd <= 1e-12 && second <= 1e-9,
            "9 (T, m) pairs, |m0 - 1| = " + fmt(zeroth) + ", odd " + fmt(odd) + ", second " + fmt(second)};
}

Outcome kinetic_fluctuation() {
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<int, std::uint64_t>> cases{{2, 8}, {2, 64}, {3, 27}};
    for (std::size_t i = 0; i < cases.size(); i++) {
        const auto [D, N] = cases[i];
        const MBParams p{1.0, 1.0, 1.0, D};
        const auto samples = sample_kinetic_energies(p, N, 100000, derive_seed(404, i));
        const RatioEstimate r = relative_fluctuation(samples);
        const double expect = kinetic_rel_fluctuation(D, N);
        const double z = std::abs(r.value - expect) / r.std_error;
        ok = ok && z <= 3;
        detail += "(" + std::to_string(D) + "," + std::to_string(N) + "): " + fmt(r.value) + " vs " + fmt(expect) +
                  " (" + fmt(z) + " SE); ";
    }
    return {ok, detail};
}

Outcome scaling() {
    const std::vector<std::pair<int, int>> sizes{{2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 4}, {5, 5}};
    const cli::StudyResult cond = cli::run_scaling("cond", sizes, 1.0, 1.0);
    const cli::StudyResult trace = cli::run_scaling("trace", sizes, 1.0, 1.0);
    const bool ok = cond.fit && trace.fit && cond.fit->slope >= 0.4 && cond.fit->slope <= 0.6 &&
                    cond.fit->r_squared >= 0.98 && trace.fit->r_squared >= 0.99;
    return {ok, std::to_string(sizes.size()) + " sizes up to 2048 padded nodes (" +
                    std::to_string(cond.records.back().nodes) + " physical), cond slope " + fmt(cond.fit->slope) +
                    " R2 " + fmt(cond.fit->r_squared) + ", trace R2 " + fmt(trace.fit->r_squared)};
}

Outcome block_encodings() {
    using namespace circuits;
    double worst_b = 0, worst_h = 0;
    int count_b = 0, count_h = 0;
    for (const LatticeSpec &spec : lattices_up_to(10)) {
        const SystemMatrices sys = build_system(spec, 1.0, 1.0);
        const BlockEncodingCircuit ub = build_UB_dagger(spec);
        const SparseMatrix bt = SparseMatrix(padded_incidence(sys).transpose()) / ub.scale;
        worst_b = std::max(worst_b, sparse_max_abs(circuits::ComplexSparse(extract_block(ub) -
                                                                          bt.cast<std::complex<double>>())));
        count_b++;
    }
    // The H block needs 2^(2n + 1) simulated columns; one lattice per index width keeps it tractable.
    for (const LatticeSpec &spec : {LatticeSpec(1, 1), LatticeSpec(2, 1), LatticeSpec(2, 2), LatticeSpec(3, 2),
                                    LatticeSpec(3, 3), LatticeSpec(4, 3), LatticeSpec(4, 4), LatticeSpec(5, 4)}) {
        const BlockEncodingCircuit uh = build_UH(spec);
        const BlockHamiltonian bh = build_block_H(build_system(spec, 1.0, 1.0));
        const SparseMatrix h = bh.H / uh.scale;
        worst_h = std::max(worst_h, sparse_max_abs(circuits::ComplexSparse(extract_block(uh) -
                                                                          h.cast<std::complex<double>>())));
        count_h++;
    }
    return {worst_b <= 1e-10 && worst_h <= 1e-10,
            "U_B^dagger on " + std::to_string(count_b) + " lattices up to 10 index bits: " + fmt(worst_b) +
                "; U_H on " + std::to_string(count_h) + " lattices up to 10 index bits: " + fmt(worst_h)};
}

Outcome heat_search() {
    cli::RunConfig config = cli::default_config();
    config.n_r = 2;
    config.n_c = 3;
    const LatticeSpec spec = config.spec();
    const SystemMatrices sys = build_system(spec, config.kappa, config.mass);
    const SpectralData sp = spectral_decomposition(sys);
    const auto regions = column_regions(spec);
    const MBParams params{config.mass, config.temperature, config.k_B, config.dims};
    const AxisVectors v0 =
        hotspot_velocities(sys, params, regions.front(), derive_seed(config.seed, streams::kBoltzmannKey));
    const AxisVectors x0(v0.size(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size())));
    const auto times = config.times();
    const Trajectory traj = evolve_classical(sys, sp, x0, v0, times);
    const EncodedState st0 = prepare_standard(sys, x0, v0);
    const FactoredPropagator prop(sys, sp);
    std::size_t misses = 0;
    bool queries_ok = true;
    double first_miss = -1;
    for (std::size_t i = 0; i < times.size(); i++) {
        const HeatSearchResult found = heat_binary_search(prop.evolve(st0, times[i]), regions);
        const std::size_t argmax = classical_argmax_region(sys, traj.v[i], regions);
        queries_ok = queries_ok && found.log.size() == 3;
        if (argmax < found.begin || argmax >= found.end) {
            if (misses++ == 0) {
                first_miss = times[i];
            }
        }
    }
    std::string detail = std::to_string(regions.size()) + " regions, " + std::to_string(times.size()) +
                         " times on [0, " + fmt(config.t_end) + "], " + std::to_string(misses) + " misses";
    if (misses > 0) {
        detail += " (first at t = " + fmt(first_miss) + ")";
    }
    detail += queries_ok ? ", 3 queries each" : ", wrong query count";
    return {misses == 0 && queries_ok, detail};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "qenm_acceptance_determinism";
    fs::remove_all(root);
    std::vector<std::map<std::string, std::string>> runs;
    for (int rep = 0; rep < 2; rep++) {
        cli::RunConfig config = cli::default_config();
        config.seed = 2026;
        config.time_steps = 20;
        config.temperatures = {1.0, 2.0};
        config.sizes = {{2, 2}, {3, 2}};
        config.n_c = 1;
        config.out_dir = (root / std::to_string(rep)).string();
        std::ostringstream log;
        cli::cmd_lattice(config, log);
        cli::cmd_validate(config, log);
        cli::cmd_simulate(config, log);
        cli::cmd_scaling(config, log);
        config.n_c = 2;
        cli::cmd_ripple(config, log);
        config.n_c = 3;
        cli::cmd_heat(config, log);
        std::map<std::string, std::string> files;
        for (const auto &entry : fs::directory_iterator(config.out_dir)) {
            if (entry.path().extension() == ".csv") {
                std::ifstream in(entry.path(), std::ios::binary);
                std::stringstream ss;
                ss << in.rdbuf();
                files[entry.path().filename().string()] = ss.str();
            }
        }
        runs.push_back(std::move(files));
    }
    const bool ok = !runs[0].empty() && runs[0] == runs[1];
    fs::remove_all(root);
    return {ok, std::to_string(runs[0].size()) + " CSV files compared byte for byte"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"factorization", factorization},
        {"oracle equivalence", oracle_equivalence},
        {"trajectory equivalence", trajectory_equivalence},
        {"energy fractions", energy_fractions},
        {"alternative encoding conservation", alternative_conservation},
        {"moment matching", moments},
        {"kinetic fluctuation statistics", kinetic_fluctuation},
        {"scaling studies", scaling},
        {"block encodings", block_encodings},
        {"heat search", heat_search},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
                  << " [" << fmt(secs) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
