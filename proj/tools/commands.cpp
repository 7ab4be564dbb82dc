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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "geometry.hpp"
#include "qenm/block_encoding.hpp"
#include "qenm/boltzmann.hpp"
#include "qenm/encoding.hpp"
#include "qenm/io.hpp"
#include "qenm/measure.hpp"
#include "qenm/oracles.hpp"
#include "qenm/simulator.hpp"

namespace qenm::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using io::format_double;

// Dense eigendecomposition is used up to this block size; larger runs go
// through the factored propagator.
constexpr std::size_t kDenseCliBlock = 2048;
constexpr std::size_t kMaxSimulatedNodes = 1024;

class Outputs {
   public:
    explicit Outputs(const RunConfig &config) : root_(config.out_dir), config_(config) {}

    void write(const std::string &name, const std::string &content) {
        io::write_text(root_ / name, content);
        files_.push_back(name);
    }

    void manifest(const std::string &command, json extra = json::object()) {
        json j;
        j["command"] = command;
        j["config"] = config_.to_json();
        j["outputs"] = files_;
        j["seeds"] = {{"master", config_.seed},
                      {"boltzmann_key", derive_seed(config_.seed, streams::kBoltzmannKey)},
                      {"shot_sampler", derive_seed(config_.seed, streams::kShotSampler)},
                      {"subsets", derive_seed(config_.seed, streams::kSubsets)},
                      {"perturbation", derive_seed(config_.seed, streams::kPerturbation)}};
        if (!extra.empty()) {
            j["results"] = std::move(extra);
        }
        io::write_text(root_ / "manifest.json", j.dump(2) + "\n");
    }

   private:
    fs::path root_;
    const RunConfig &config_;
    std::vector<std::string> files_;
};

ShiftTable table_for(const RunConfig &config) {
    ShiftTable table = ShiftTable::graphene();
    if (config.fault) {
        const ShiftFault &f = *config.fault;
        table.set(f.r0, f.s, f.ell, {f.dr, f.dc});
    }
    return table;
}

class Propagator {
   public:
    Propagator(const SystemMatrices &sys, const SpectralData &spectral) {
        if (sys.size() > kMaxSimulatedNodes) {
            throw ConfigError("lattice with " + std::to_string(sys.size()) +
                              " nodes exceeds the desk-scale limit of " + std::to_string(kMaxSimulatedNodes));
        }
        if (2 * sys.size() * sys.size() <= kDenseCliBlock) {
            dense_.emplace(build_block_H(sys));
        } else {
            factored_.emplace(sys, spectral);
        }
    }

    EncodedState evolve(const EncodedState &state, double t) const {
        return dense_ ? dense_->evolve(state, t) : factored_->evolve(state, t);
    }

   private:
    std::optional<DensePropagator> dense_;
    std::optional<FactoredPropagator> factored_;
};

double max_abs_diff(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

Check make_check(std::string name, bool passed, std::string detail) {
    return {std::move(name), passed, std::move(detail)};
}

// Basis sweep of the connectivity oracle over every (j, ell).
struct OracleSweep {
    /// Valid (j, k) results, one per slot, so each bond should appear in both directions.
    std::set<Bond> valid_bonds;
    std::size_t classical_mismatches = 0;
    std::size_t flag_mismatches = 0;
    std::size_t dirty_ancillas = 0;
    std::size_t not_reversible = 0;
};

OracleSweep sweep_oracle(const LatticeSpec &spec, const ShiftTable &table) {
    using namespace circuits;
    const Circuit oracle = connectivity_oracle(spec, table);
    const Circuit inverse = oracle.inverse();
    OracleSweep out;
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        for (int ell = 0; ell < kGrapheneSparsity; ell++) {
            const std::uint64_t input = pack(oracle, {{regs::kNode, j}, {regs::kSlot, static_cast<std::uint64_t>(ell)}});
            const BasisRun run = simulate_basis(oracle, input);
            const BasisOutcome o = unpack(oracle, run.output);
            const Neighbor expect = neighbor(j, ell, spec, table);
            const bool flag = o.at(regs::kFlag) != 0;
            if (o.at(regs::kNode) != j || o.at(regs::kNeighbor) != expect.k) {
                out.classical_mismatches++;
            }
            if (flag != (is_dummy_index(j, spec) || is_dummy_index(o.at(regs::kNeighbor), spec))) {
                out.flag_mismatches++;
            }
            if (o.at(regs::kSlot) != 0 || o.at(regs::kConditions) != 0 || o.at(regs::kCarry) != 0) {
                out.dirty_ancillas++;
            }
            if (simulate_basis(inverse, run.output).output != input) {
                out.not_reversible++;
            }
            if (!flag) {
                const std::uint64_t k = o.at(regs::kNeighbor);
                out.valid_bonds.insert({j, k});
            }
        }
    }
    return out;
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

ValidationReport run_validation(const RunConfig &config) {
    using namespace circuits;
    const LatticeSpec spec = config.spec();
    const ShiftTable table = table_for(config);
    ValidationReport report;
    auto add = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back(make_check(std::move(name), passed, std::move(detail)));
    };

    {
        std::size_t bad = 0;
        for (std::uint64_t j = 0; j < spec.node_count(); j++) {
            bad += encode_coord(decode_index(j, spec), spec) != j;
        }
        add("index_roundtrip", bad == 0, std::to_string(bad) + " mismatches over " + std::to_string(spec.node_count()));
    }

    const auto geometric_dummy = reference::geometric_dummy_map(spec);
    {
        std::size_t bad = 0;
        for (std::uint64_t j = 0; j < spec.node_count(); j++) {
            bad += is_dummy_index(j, spec) != geometric_dummy[j];
        }
        add("dummy_map_vs_geometry", bad == 0, std::to_string(bad) + " disagreements");
    }

    const auto geometric_bonds = reference::brute_force_adjacency(spec).bonds();
    const Adjacency adjacency = shift_adjacency(spec, table);
    {
        const auto bonds = adjacency.bonds();
        add("shift_bonds_vs_geometry", bonds == geometric_bonds,
            std::to_string(bonds.size()) + " shift-table bonds, " + std::to_string(geometric_bonds.size()) +
                " geometric bonds");
    }
    add("adjacency_symmetric", adjacency.symmetric(),
        adjacency.symmetric() ? "every valid slot has a reverse slot" : "some valid slot has no reverse slot");

    {
        const OracleSweep sweep = sweep_oracle(spec, table);
        std::set<Bond> expected;
        for (const auto &[j, k] : geometric_bonds) {
            expected.insert({j, k});
            expected.insert({k, j});
        }
        add("oracle_vs_classical_neighbor", sweep.classical_mismatches == 0,
            std::to_string(sweep.classical_mismatches) + " mismatches over " + std::to_string(3 * spec.node_count()) +
                " (j, ell) inputs");
        add("oracle_flag_vs_dummy_map", sweep.flag_mismatches == 0, std::to_string(sweep.flag_mismatches) + " mismatches");
        add("oracle_vs_geometry", sweep.valid_bonds == expected,
            std::to_string(sweep.valid_bonds.size()) + " directed oracle bonds, " +
                std::to_string(expected.size()) + " directed geometric bonds");
        add("oracle_ancillas_clean", sweep.dirty_ancillas == 0, std::to_string(sweep.dirty_ancillas) + " dirty outputs");
        add("oracle_reversible", sweep.not_reversible == 0, std::to_string(sweep.not_reversible) + " failures");
    }

    {
        // Gate-level adder and comparator networks against their functional definitions.
        const Circuit adder = coord_adder(spec);
        const Circuit expanded = expand_composites(adder);
        std::mt19937_64 rng(derive_seed(config.seed, streams::kSubsets));
        std::size_t bad = 0;
        const std::size_t trials = std::min<std::size_t>(4096, spec.node_count() * spec.node_count());
        for (std::size_t i = 0; i < trials; i++) {
            const std::uint64_t j = trials == spec.node_count() * spec.node_count() ? i % spec.node_count()
                                                                                      : rng() % spec.node_count();
            const std::uint64_t k = trials == spec.node_count() * spec.node_count() ? i / spec.node_count()
                                                                                      : rng() % spec.node_count();
            const std::uint64_t a = pack(adder, {{regs::kNode, j}, {regs::kNeighbor, k}});
            const std::uint64_t b = pack(expanded, {{regs::kNode, j}, {regs::kNeighbor, k}});
            const BasisOutcome fa = unpack(adder, simulate_basis(adder, a).output);
            const BasisOutcome fb = unpack(expanded, simulate_basis(expanded, b).output);
            bad += fa.at(regs::kNeighbor) != fb.at(regs::kNeighbor) || fb.at(regs::kCarry) != 0;
        }
        add("adder_expansion", bad == 0, std::to_string(bad) + " mismatches over " + std::to_string(trials) + " inputs");
    }

    {
        const int width = std::min(spec.index_bits(), 5);
        const Circuit sw = expand_composites(ordered_swap(width));
        std::size_t bad = 0;
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << width); j++) {
            for (std::uint64_t k = 0; k < (std::uint64_t{1} << width); k++) {
                const BasisOutcome o = run_basis(sw, {{regs::kNode, j}, {regs::kNeighbor, k}});
                bad += o.at(regs::kNode) != std::min(j, k) || o.at(regs::kNeighbor) != std::max(j, k) ||
                       o.at("order") != (k < j ? 1u : 0u) || o.at("cmp") != 0 || o.at(regs::kCarry) != 0;
            }
        }
        add("ordered_swap_exhaustive", bad == 0, std::to_string(bad) + " mismatches at width " + std::to_string(width));
    }

    const SystemMatrices sys = build_system(spec, table, config.kappa, config.mass);
    {
        const Eigen::MatrixXd B = Eigen::MatrixXd(sys.B);
        const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A);
        const Eigen::MatrixXd F = Eigen::MatrixXd(sys.F);
        const Eigen::MatrixXd sb = sys.masses.cwiseSqrt().asDiagonal() * B;
        const double ea = (B * B.transpose() - A).cwiseAbs().maxCoeff() / std::max(1.0, A.cwiseAbs().maxCoeff());
        const double ef = (sb * sb.transpose() - F).cwiseAbs().maxCoeff() / std::max(1.0, F.cwiseAbs().maxCoeff());
        add("factorization", ea <= 1e-10 && ef <= 1e-10,
            "relative max error BB^T-A " + format_double(ea) + ", F " + format_double(ef));
    }

    if (spec.index_bits() <= 6) {
        const BlockEncodingCircuit ub = build_UB_dagger(spec, config.kappa, config.mass);
        const ComplexSparse block = extract_block(ub);
        const Eigen::MatrixXcd expect =
            Eigen::MatrixXd(padded_incidence(sys)).transpose().cast<std::complex<double>>() / ub.scale;
        const double err = (Eigen::MatrixXcd(block) - expect).cwiseAbs().maxCoeff();
        add("ub_block_encoding", err <= 1e-10, "max entry error " + format_double(err));
    } else {
        add("ub_block_encoding", true, "skipped above 6 index bits");
    }

    {
        // Two masses on one spring oscillate at sqrt(2 kappa / m).
        Eigen::VectorXd masses = Eigen::VectorXd::Constant(2, config.mass);
        const SystemMatrices pair = build_system_from_springs(masses, {{0, 1, config.kappa}});
        const SpectralData sd = spectral_decomposition(pair);
        const double omega = std::sqrt(2 * config.kappa / config.mass);
        const AxisVectors x0{Eigen::Vector2d(0.1, -0.1)};
        const AxisVectors v0{Eigen::Vector2d::Zero()};
        const double t = 0.7 / omega;
        const Trajectory traj = evolve_classical(pair, sd, x0, v0, {t});
        const double expect = 0.1 * std::cos(omega * t);
        const double err_c = std::abs(traj.x[0][0][0] - expect);
        const EncodedState st = prepare_standard(pair, x0, v0);
        const EncodedState qt = DensePropagator(build_block_H(pair)).evolve(st, t);
        const double err_q =
            max_abs_diff(qt.amplitudes, prepare_standard(pair, traj.x[0], traj.v[0]).amplitudes);
        add("two_node_frequency", err_c <= 1e-12 * std::max(1.0, std::abs(expect)) && err_q <= 1e-8,
            "classical error " + format_double(err_c) + ", amplitude error " + format_double(err_q));
    }

    {
        const MBParams params{config.mass, std::max(config.temperature, 1.0), config.k_B, config.dims};
        const DiscretizedMB d = discretize_two_bucket(params);
        const double s2 = params.k_B * params.T / params.m;
        const bool ok = std::abs(d.moment(0) - 1) <= 1e-12 && std::abs(d.moment(1)) <= 1e-12 &&
                        std::abs(d.moment(2) - s2) <= 1e-9 * std::max(1.0, s2) && std::abs(d.moment(3)) <= 1e-12;
        add("two_bucket_moments", ok, "second moment " + format_double(d.moment(2)) + " vs " + format_double(s2));
    }
    return report;
}

StudyResult run_scaling(const std::string &kind, const std::vector<std::pair<int, int>> &sizes, double kappa,
                        double mass) {
    if (kind != "cond" && kind != "trace") {
        throw ConfigError("scaling kind must be 'cond' or 'trace'");
    }
    StudyResult out;
    out.kind = kind;
    for (const auto &[r, c] : sizes) {
        const SystemMatrices sys = physical_subsystem(build_system(LatticeSpec(r, c), kappa, mass));
        ScalingRecord rec{r, c, sys.size(), 0};
        rec.value = kind == "cond" ? condition_number_B(sys) : pseudoinverse_trace(sys);
        if (!out.records.empty() && rec.nodes <= out.records.back().nodes) {
            throw ConfigError("sizes must be strictly increasing in physical node count");
        }
        out.records.push_back(rec);
    }
    if (out.records.size() >= 2) {
        std::vector<double> n, v;
        for (const auto &rec : out.records) {
            n.push_back(static_cast<double>(rec.nodes));
            v.push_back(rec.value);
        }
        out.fit = kind == "cond" ? fit_power_law(n, v) : fit_line(n, v);
    }
    return out;
}

void initial_conditions(const RunConfig &config, const SystemMatrices &sys, AxisVectors &x0, AxisVectors &v0) {
    const auto n = static_cast<Eigen::Index>(sys.size());
    x0.assign(static_cast<std::size_t>(config.dims), Eigen::VectorXd::Zero(n));
    v0.assign(static_cast<std::size_t>(config.dims), Eigen::VectorXd::Zero(n));
    if (config.initial == "zero") {
        return;
    }
    std::mt19937_64 rng(derive_seed(config.seed, streams::kPerturbation));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto j : config.perturbed_nodes) {
        for (auto &xa : x0) {
            xa[static_cast<Eigen::Index>(j)] = config.perturbation * unit(rng);
        }
    }
    if (config.initial == "boltzmann") {
        const MBParams params{config.mass, config.temperature, config.k_B, config.dims};
        const int bits = config.spec().index_bits();
        const auto physical = sys.active_nodes();
        for (int a = 0; a < config.dims; a++) {
            const std::uint64_t stream = derive_seed(config.seed, streams::kBoltzmannKey);
            const BucketKey key = random_bucket_key(bits, derive_seed(stream, static_cast<std::uint64_t>(a)));
            v0[static_cast<std::size_t>(a)] = two_bucket_velocities(params, key, physical, sys.size());
        }
    }
}

std::string lattice_svg(const LatticeSpec &spec) {
    const auto geometric = reference::brute_force_adjacency(spec).bonds();
    const double unit = 40;
    const double margin = 30;
    double max_x = 0;
    double max_y = 0;
    std::vector<Point> pos(spec.node_count());
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        pos[j] = node_position(decode_index(j, spec));
        max_x = std::max(max_x, pos[j].x);
        max_y = std::max(max_y, pos[j].y);
    }
    const double w = max_x * unit + 2 * margin;
    const double h = max_y * unit + 2 * margin;
    auto sx = [&](double x) { return format_double(margin + x * unit); };
    auto sy = [&](double y) { return format_double(h - margin - y * unit); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(w) << "\" height=\""
        << format_double(h) << "\" viewBox=\"0 0 " << format_double(w) << ' ' << format_double(h) << "\">\n";
    svg << "<title>" << io::xml_escape("graphene lattice " + spec.str()) << "</title>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto &[j, k] : geometric) {
        svg << "<line x1=\"" << sx(pos[j].x) << "\" y1=\"" << sy(pos[j].y) << "\" x2=\"" << sx(pos[k].x)
            << "\" y2=\"" << sy(pos[k].y) << "\" stroke=\"#444\" stroke-width=\"2\"/>\n";
    }
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        const bool dummy = is_dummy_index(j, spec);
        svg << "<circle cx=\"" << sx(pos[j].x) << "\" cy=\"" << sy(pos[j].y) << "\" r=\"7\" fill=\""
            << (dummy ? "white" : "#2b6cb0") << "\" stroke=\"#2b6cb0\" stroke-width=\"1.5\""
            << (dummy ? " stroke-dasharray=\"3,2\"" : "") << "/>\n";
        svg << "<text x=\"" << sx(pos[j].x) << "\" y=\"" << format_double(h - margin - pos[j].y * unit - 10)
            << "\" font-size=\"9\" text-anchor=\"middle\" font-family=\"sans-serif\">" << j << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_lattice(const RunConfig &config, std::ostream &log) {
    const LatticeSpec spec = config.spec();
    Outputs out(config);
    out.write("lattice.csv", lattice_csv(spec));
    out.write("lattice.svg", lattice_svg(spec));
    std::size_t dummies = 0;
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        dummies += is_dummy_index(j, spec);
    }
    const auto bonds = shift_adjacency(spec).bonds().size();
    out.manifest("lattice", {{"nodes", spec.node_count()}, {"dummy_nodes", dummies}, {"bonds", bonds}});
    log << "lattice " << spec.str() << ": " << spec.node_count() << " nodes, " << dummies << " dummy, " << bonds
        << " bonds\n";
    return kExitOk;
}

int cmd_validate(const RunConfig &config, std::ostream &log) {
    const ValidationReport report = run_validation(config);
    io::CsvWriter csv({"check", "passed", "detail"});
    std::size_t failed = 0;
    for (const auto &c : report.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        csv.row({c.name, c.passed ? "1" : "0", detail});
        failed += !c.passed;
    }
    log << report.checks.size() << " checks, " << failed << " failed\n";
    Outputs out(config);
    out.write("validate.csv", csv.str());
    out.manifest("validate", {{"checks", report.checks.size()}, {"failed", failed}});
    return report.passed() ? kExitOk : kExitValidationFailure;
}

int cmd_simulate(const RunConfig &config, std::ostream &log) {
    const LatticeSpec spec = config.spec();
    const SystemMatrices sys = build_system(spec, config.kappa, config.mass);
    if (sys.size() > kMaxSimulatedNodes) {
        throw ConfigError("lattice with " + std::to_string(sys.size()) + " nodes exceeds the desk-scale limit");
    }
    const SpectralData spectral = spectral_decomposition(sys);
    AxisVectors x0, v0;
    initial_conditions(config, sys, x0, v0);
    const auto times = config.times();
    const Trajectory traj = evolve_classical(sys, spectral, x0, v0, times);
    const Encoding kind = config.encoding == "standard" ? Encoding::standard : Encoding::alternative;

    Outputs out(config);
    out.write("trajectory.csv", trajectory_csv(sys, traj));
    io::CsvWriter cmp({"t", "energy", "observable_quantum", "observable_classical", "norm", "max_deviation"});

    const double energy = total_energy(sys, x0, v0);
    double worst = 0;
    if (energy == 0) {
        for (double t : times) {
            cmp.row({format_double(t), "0", "0", "0", "0", "0"});
        }
        out.write("comparison.csv", cmp.str());
        out.write("state.csv", "axis,part,j,k,real,imag\n");
        out.manifest("simulate", {{"max_deviation", 0.0}, {"energy", 0.0}});
        log << "zero initial conditions: nothing to evolve\n";
        return kExitOk;
    }

    PrepOptions prep;
    if (config.initial == "boltzmann") {
        prep.thermal = MBParams{config.mass, config.temperature, config.k_B, config.dims};
    }
    const EncodedState st0 = kind == Encoding::standard ? prepare_standard(sys, x0, v0, prep)
                                                        : prepare_alternative(sys, spectral, x0, v0);
    const Propagator prop(sys, spectral);
    const auto physical = sys.active_nodes();
    SubsetSelector sel;
    sel.target = kind == Encoding::standard ? Target::kinetic : Target::displacement;
    sel.nodes = physical;
    EncodedState last = st0;
    for (std::size_t i = 0; i < times.size(); i++) {
        const EncodedState st = prop.evolve(st0, times[i]);
        const EncodedState ref = kind == Encoding::standard
                                     ? prepare_standard(sys, traj.x[i], traj.v[i], prep)
                                     : prepare_alternative(sys, spectral, traj.x[i], traj.v[i]);
        // Both states are normalized by the same conserved quantity; undo the reference's own normalization.
        const double rescale = std::sqrt(ref.normalization / st0.normalization);
        const double dev = max_abs_diff(st.amplitudes, ref.amplitudes * rescale);
        worst = std::max(worst, dev);
        double q = 0;
        double c = 0;
        if (kind == Encoding::standard) {
            q = energy_fraction(st, sel).fraction;
            c = kinetic_energy(sys, traj.v[i], physical) / energy;
        } else {
            q = msd_fraction(st, sys, sel).estimate;
            c = msd_subset(traj, i, physical);
        }
        cmp.row({format_double(times[i]), format_double(total_energy(sys, traj.x[i], traj.v[i])), format_double(q),
                 format_double(c), format_double(st.amplitudes.norm()), format_double(dev)});
        last = st;
    }
    out.write("comparison.csv", cmp.str());
    out.write("state.csv", last.csv());
    out.manifest("simulate", {{"encoding", to_string(kind)},
                              {"max_deviation", worst},
                              {"energy", energy},
                              {"aa_rounds", st0.aa_rounds},
                              {"theta", st0.theta}});
    log << "simulate " << spec.str() << " (" << to_string(kind) << "): max amplitude deviation "
        << format_double(worst) << "\n";
    return kExitOk;
}

int cmd_heat(const RunConfig &config, std::ostream &log) {
    const LatticeSpec spec = config.spec();
    const SystemMatrices sys = build_system(spec, config.kappa, config.mass);
    const SpectralData spectral = spectral_decomposition(sys);
    const auto regions = column_regions(spec);
    const MBParams params{config.mass, config.temperature, config.k_B, config.dims};
    const AxisVectors v0 = hotspot_velocities(sys, params, regions.front(),
                                              derive_seed(config.seed, streams::kBoltzmannKey));
    const AxisVectors x0(v0.size(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size())));
    if (total_energy(sys, x0, v0) == 0) {
        throw ConfigError("hotspot carries no energy; raise the temperature");
    }
    const auto times = config.times();
    const Trajectory traj = evolve_classical(sys, spectral, x0, v0, times);
    const EncodedState st0 = prepare_standard(sys, x0, v0);
    const Propagator prop(sys, spectral);

    io::CsvWriter queries({"t", "round", "lo", "mid", "hi", "lower_fraction", "upper_fraction", "kept"});
    io::CsvWriter summary({"t", "region", "classical_argmax", "contains_argmax", "queries"});
    std::size_t misses = 0;
    std::vector<io::PlotSeries> plot(2);
    plot[0].label = "search result";
    plot[1].label = "classical argmax";
    for (std::size_t i = 0; i < times.size(); i++) {
        const EncodedState st = prop.evolve(st0, times[i]);
        const HeatSearchResult found = heat_binary_search(st, regions);
        const std::size_t argmax = classical_argmax_region(sys, traj.v[i], regions);
        const bool contains = argmax >= found.begin && argmax < found.end;
        misses += !contains;
        for (std::size_t r = 0; r < found.log.size(); r++) {
            const HeatQuery &q = found.log[r];
            queries.row({format_double(times[i]), std::to_string(r), std::to_string(q.lo), std::to_string(q.mid),
                         std::to_string(q.hi), format_double(q.lower_fraction), format_double(q.upper_fraction),
                         q.kept_upper ? "upper" : "lower"});
        }
        summary.row({format_double(times[i]), std::to_string(found.begin), std::to_string(argmax),
                     contains ? "1" : "0", std::to_string(found.log.size())});
        plot[0].x.push_back(times[i]);
        plot[0].y.push_back(static_cast<double>(found.begin));
        plot[1].x.push_back(times[i]);
        plot[1].y.push_back(static_cast<double>(argmax));
    }
    plot[1].draw_points = false;
    plot[1].draw_line = true;
    Outputs out(config);
    out.write("heat_queries.csv", queries.str());
    out.write("heat_summary.csv", summary.str());
    out.write("heat.svg", io::svg_plot(plot, {"Hottest column", "t", "column", false, false}));
    out.manifest("heat", {{"regions", regions.size()}, {"misses", misses}, {"time_points", times.size()}});
    log << "heat " << spec.str() << ": " << regions.size() << " regions, " << misses << " of " << times.size()
        << " time points missed the classical argmax\n";
    return kExitOk;
}

int cmd_ripple(const RunConfig &config, std::ostream &log) {
    RippleConfig rc;
    rc.spec = config.spec();
    rc.kappa = config.kappa;
    rc.mass = config.mass;
    rc.k_B = config.k_B;
    rc.temperatures = config.temperatures;
    rc.times = config.ripple_times();
    rc.seed = config.seed;
    const RippleResult result = ripple_msd(rc);
    if (result.window_too_short) {
        log << "warning: averaging window " << format_double(rc.times.back()) << " is shorter than the slowest period "
            << format_double(result.longest_period) << "\n";
    }

    io::CsvWriter series({"t", "temperature", "msd_quantum", "msd_classical"});
    io::CsvWriter summary({"temperature", "time_average", "b_factor", "max_deviation"});
    std::vector<io::PlotSeries> msd_plot;
    io::PlotSeries avg{"time-averaged MSD", {}, {}, false, true};
    double worst = 0;
    for (const auto &s : result.series) {
        io::PlotSeries ps{"T = " + format_double(s.temperature), result.times, s.msd_quantum, true, false};
        msd_plot.push_back(ps);
        for (std::size_t i = 0; i < result.times.size(); i++) {
            series.row({format_double(result.times[i]), format_double(s.temperature), format_double(s.msd_quantum[i]),
                        format_double(s.msd_classical[i])});
        }
        summary.row({format_double(s.temperature), format_double(s.time_average), format_double(s.b_factor),
                     format_double(s.max_deviation)});
        avg.x.push_back(s.temperature);
        avg.y.push_back(s.time_average);
        worst = std::max(worst, s.max_deviation);
    }
    std::vector<io::PlotSeries> fit_plot{avg};
    json fit_json = nullptr;
    if (result.fit) {
        io::PlotSeries line{"linear fit", avg.x, {}, true, false};
        for (double t : avg.x) {
            line.y.push_back(result.fit->slope * t + result.fit->intercept);
        }
        fit_plot.push_back(line);
        fit_json = {{"slope", result.fit->slope}, {"intercept", result.fit->intercept},
                    {"r_squared", result.fit->r_squared}};
    }
    Outputs out(config);
    out.write("ripple_msd.csv", series.str());
    out.write("ripple_summary.csv", summary.str());
    out.write("ripple_msd.svg", io::svg_plot(msd_plot, {"Out-of-plane MSD", "t", "MSD", false, false}));
    out.write("ripple_fit.svg", io::svg_plot(fit_plot, {"Time-averaged MSD vs temperature", "T", "<M>", false, false}));
    out.manifest("ripple", {{"fit", fit_json},
                            {"max_deviation", worst},
                            {"longest_period", result.longest_period},
                            {"window_too_short", result.window_too_short}});
    log << "ripple " << rc.spec.str() << ": max quantum/classical MSD deviation " << format_double(worst);
    if (result.fit) {
        log << ", fit R^2 " << format_double(result.fit->r_squared);
    }
    log << "\n";
    return kExitOk;
}

int cmd_scaling(const RunConfig &config, std::ostream &log) {
    const StudyResult study = run_scaling(config.scaling_kind, config.sizes, config.kappa, config.mass);
    io::CsvWriter csv({"n_r", "n_c", "nodes", study.kind});
    io::PlotSeries pts{study.kind, {}, {}, false, true};
    for (const auto &r : study.records) {
        csv.row({std::to_string(r.n_r), std::to_string(r.n_c), std::to_string(r.nodes), format_double(r.value)});
        pts.x.push_back(static_cast<double>(r.nodes));
        pts.y.push_back(r.value);
    }
    std::vector<io::PlotSeries> plot{pts};
    json fit_json = nullptr;
    const bool loglog = study.kind == "cond";
    if (study.fit) {
        io::PlotSeries line{"fit", pts.x, {}, true, false};
        for (double n : pts.x) {
            line.y.push_back(loglog ? std::exp(study.fit->intercept) * std::pow(n, study.fit->slope)
                                    : study.fit->slope * n + study.fit->intercept);
        }
        plot.push_back(line);
        fit_json = {{"slope", study.fit->slope}, {"intercept", study.fit->intercept},
                    {"r_squared", study.fit->r_squared}, {"model", loglog ? "power_law" : "linear"}};
    }
    Outputs out(config);
    out.write("scaling_" + study.kind + ".csv", csv.str());
    out.write("scaling_" + study.kind + ".svg",
              io::svg_plot(plot, {loglog ? "cond(B) vs N" : "Tr(A+) vs N", "N", study.kind, loglog, loglog}));
    out.manifest("scaling", {{"kind", study.kind}, {"fit", fit_json}});
    log << "scaling " << study.kind << ": " << study.records.size() << " sizes";
    if (study.fit) {
        log << ", slope " << format_double(study.fit->slope) << ", R^2 " << format_double(study.fit->r_squared);
    }
    log << "\n";
    return kExitOk;
}

}  // namespace qenm::cli
