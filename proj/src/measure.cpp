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

#include "qenm/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qenm {

namespace {

std::vector<std::size_t> selected_axes(const EncodedState &state, const SubsetSelector &selector) {
    if (selector.axis) {
        if (*selector.axis >= state.layout.axes) {
            throw std::out_of_range("selector axis out of range");
        }
        return {*selector.axis};
    }
    std::vector<std::size_t> out(state.layout.axes);
    for (std::size_t a = 0; a < out.size(); a++) {
        out[a] = a;
    }
    return out;
}

void require_nodes(const SubsetSelector &selector, std::size_t n) {
    if (selector.nodes.empty()) {
        throw std::invalid_argument("node subset is empty");
    }
    for (auto j : selector.nodes) {
        if (j >= n) {
            throw std::out_of_range("subset node " + std::to_string(j) + " out of range");
        }
    }
}

EstimateReport exact_report(double fraction, double estimate, const AccuracyTarget &accuracy) {
    EstimateReport r;
    r.mode = EstimateMode::exact;
    r.fraction = fraction;
    r.estimate = estimate;
    r.oracle_calls = oracle_calls(accuracy.epsilon, accuracy.delta);
    r.detectability = fraction;
    return r;
}

}  // namespace

std::string to_string(Target t) {
    switch (t) {
        case Target::kinetic:
            return "kinetic";
        case Target::potential:
            return "potential";
        case Target::displacement:
            return "displacement";
    }
    return "unknown";
}

void SubsetSelector::validate(const SystemMatrices &sys) const {
    if (target == Target::potential) {
        if (bonds.empty()) {
            throw std::invalid_argument("bond subset is empty");
        }
        for (const auto &[j, k] : bonds) {
            if (j > k || k >= sys.size()) {
                throw std::invalid_argument("bond (" + std::to_string(j) + ", " + std::to_string(k) + ") is invalid");
            }
        }
        return;
    }
    require_nodes(*this, sys.size());
    for (auto j : nodes) {
        if (!sys.active[j]) {
            throw std::invalid_argument("subset node " + std::to_string(j) + " is not physical");
        }
    }
}

std::uint64_t oracle_calls(double epsilon, double delta) {
    if (!(epsilon > 0) || !(delta > 0 && delta < 1)) {
        throw std::invalid_argument("need epsilon > 0 and 0 < delta < 1");
    }
    return static_cast<std::uint64_t>(std::ceil(std::log(1 / delta) / epsilon));
}

double subset_probability(const EncodedState &state, const SubsetSelector &selector) {
    const auto axes = selected_axes(state, selector);
    const std::size_t n = state.layout.nodes;
    double p = 0;
    switch (selector.target) {
        case Target::kinetic:
        case Target::displacement:
            require_nodes(selector, n);
            for (auto a : axes) {
                for (auto j : selector.nodes) {
                    p += std::norm(state.amplitudes[static_cast<Eigen::Index>(state.layout.node_index(a, j))]);
                }
            }
            break;
        case Target::potential:
            for (auto a : axes) {
                for (const auto &[j, k] : selector.bonds) {
                    p += std::norm(state.amplitudes[static_cast<Eigen::Index>(state.layout.pair_index(a, j, k))]);
                }
            }
            break;
    }
    return p;
}

EstimateReport energy_fraction(const EncodedState &state, const SubsetSelector &selector,
                               const AccuracyTarget &accuracy) {
    if (state.kind != Encoding::standard) {
        throw std::invalid_argument("energy fractions need the standard encoding");
    }
    if (selector.target == Target::displacement) {
        throw std::invalid_argument(
            "displacements are not observable in the standard encoding without tethers to rest positions");
    }
    const double p = subset_probability(state, selector);
    return exact_report(p, p * state.normalization, accuracy);
}

EstimateReport msd_fraction(const EncodedState &state, const SystemMatrices &sys, const SubsetSelector &selector,
                            const AccuracyTarget &accuracy) {
    if (state.kind != Encoding::alternative) {
        throw std::invalid_argument("MSD needs the alternative encoding");
    }
    if (selector.target != Target::displacement) {
        throw std::invalid_argument("MSD needs a displacement selector");
    }
    if (!(state.normalization > 0)) {
        throw std::invalid_argument("MSD needs the conserved quantity F");
    }
    require_nodes(selector, sys.size());
    const double p = subset_probability(state, selector);
    double weighted = 0;
    for (auto a : selected_axes(state, selector)) {
        for (auto j : selector.nodes) {
            weighted += std::norm(state.amplitudes[static_cast<Eigen::Index>(state.layout.node_index(a, j))]) /
                        sys.masses[static_cast<Eigen::Index>(j)];
        }
    }
    const double msd = 2 * state.normalization * weighted / static_cast<double>(selector.nodes.size());
    return exact_report(p, msd, accuracy);
}

EstimateReport shot_sample(const EstimateReport &exact, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("need at least one shot");
    }
    const double p = std::clamp(exact.fraction, 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    const std::uint64_t hits = draw(rng);
    const double factor = exact.fraction > 0 ? exact.estimate / exact.fraction : 0;
    const double p_hat = static_cast<double>(hits) / static_cast<double>(shots);

    EstimateReport r = exact;
    r.mode = EstimateMode::shots;
    r.shots = shots;
    r.fraction = p_hat;
    r.estimate = p_hat * factor;
    r.std_error = std::sqrt(p_hat * (1 - p_hat) / static_cast<double>(shots)) * factor;
    return r;
}

std::vector<std::vector<std::uint64_t>> column_regions(const LatticeSpec &spec) {
    std::vector<std::vector<std::uint64_t>> out(spec.cols());
    for (std::uint64_t j : physical_nodes(spec)) {
        out[decode_index(j, spec).c].push_back(j);
    }
    return out;
}

HeatSearchResult heat_binary_search(const EncodedState &state,
                                    const std::vector<std::vector<std::uint64_t>> &regions) {
    if (regions.empty() || !std::has_single_bit(regions.size())) {
        throw std::invalid_argument("region count must be a power of two");
    }
    auto fraction = [&](std::size_t lo, std::size_t hi) {
        SubsetSelector sel;
        for (std::size_t i = lo; i < hi; i++) {
            sel.nodes.insert(sel.nodes.end(), regions[i].begin(), regions[i].end());
        }
        return sel.nodes.empty() ? 0.0 : energy_fraction(state, sel).fraction;
    };
    HeatSearchResult out;
    std::size_t lo = 0;
    std::size_t hi = regions.size();
    while (hi - lo > 1) {
        HeatQuery q;
        q.lo = lo;
        q.hi = hi;
        q.mid = lo + (hi - lo) / 2;
        q.lower_fraction = fraction(q.lo, q.mid);
        q.upper_fraction = fraction(q.mid, q.hi);
        q.kept_upper = q.upper_fraction > q.lower_fraction;
        (q.kept_upper ? lo : hi) = q.mid;
        out.log.push_back(q);
    }
    out.begin = lo;
    out.end = hi;
    return out;
}

std::size_t classical_argmax_region(const SystemMatrices &sys, const AxisVectors &v,
                                    const std::vector<std::vector<std::uint64_t>> &regions) {
    std::size_t best = 0;
    double best_k = -1;
    for (std::size_t i = 0; i < regions.size(); i++) {
        const double k = regions[i].empty() ? 0.0 : kinetic_energy(sys, v, regions[i]);
        if (k > best_k) {
            best_k = k;
            best = i;
        }
    }
    return best;
}

AxisVectors hotspot_velocities(const SystemMatrices &sys, const MBParams &params,
                               const std::vector<std::uint64_t> &hotspot, std::uint64_t seed) {
    const int n = std::max(1, static_cast<int>(std::bit_width(sys.size() - 1)));
    AxisVectors v;
    for (int a = 0; a < params.D; a++) {
        const BucketKey key = random_bucket_key(n, derive_seed(seed, static_cast<std::uint64_t>(a)));
        v.push_back(two_bucket_velocities(params, key, hotspot, sys.size()));
    }
    return v;
}

RippleResult ripple_msd(const RippleConfig &config) {
    if (config.times.empty()) {
        throw std::invalid_argument("ripple run needs a time grid");
    }
    const SystemMatrices sys = build_system(config.spec, config.kappa, config.mass);
    const SpectralData spectral = spectral_decomposition(sys);
    const auto physical = sys.active_nodes();
    const int n = config.spec.index_bits();
    const BucketKey key = random_bucket_key(n, derive_seed(config.seed, streams::kBoltzmannKey));

    RippleResult out;
    out.times = config.times;
    double lambda_min = 0;
    for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); i++) {
        if (!spectral.is_null(i) && (lambda_min == 0 || spectral.eigenvalues[i] < lambda_min)) {
            lambda_min = spectral.eigenvalues[i];
        }
    }
    if (lambda_min > 0) {
        out.longest_period = 2 * std::numbers::pi / std::sqrt(lambda_min);
        out.window_too_short = config.times.back() - config.times.front() < out.longest_period;
    }

    const bool dense = 2 * sys.size() * sys.size() <= kDenseEvolutionLimit;
    std::optional<DensePropagator> dense_prop;
    if (dense) {
        dense_prop.emplace(build_block_H(sys));
    }
    const FactoredPropagator factored(sys, spectral);
    const Eigen::MatrixXd projector = spectral.projector();

    for (double T : config.temperatures) {
        RippleSeries series;
        series.temperature = T;
        if (T == 0) {
            series.msd_quantum.assign(config.times.size(), 0.0);
            series.msd_classical.assign(config.times.size(), 0.0);
            out.series.push_back(series);
            continue;
        }
        const MBParams params{config.mass, T, config.k_B, 1};
        Eigen::VectorXd v = two_bucket_velocities(params, key, physical, sys.size());
        // Drop the rigid drift so the sheet oscillates about its rest plane.
        const Eigen::VectorXd sqrt_m = sys.masses.cwiseSqrt();
        v = (projector * sqrt_m.cwiseProduct(v)).cwiseQuotient(sqrt_m);
        const AxisVectors x0{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size()))};
        const AxisVectors v0{v};
        const EncodedState st0 = prepare_alternative(sys, spectral, x0, v0);
        const Trajectory traj = evolve_classical(sys, spectral, x0, v0, config.times);

        SubsetSelector sel;
        sel.target = Target::displacement;
        sel.nodes = physical;
        for (std::size_t t = 0; t < config.times.size(); t++) {
            const EncodedState st = dense ? dense_prop->evolve(st0, config.times[t])
                                          : factored.evolve(st0, config.times[t]);
            const double q = msd_fraction(st, sys, sel).estimate;
            const double c = msd_subset(traj, t, physical);
            series.msd_quantum.push_back(q);
            series.msd_classical.push_back(c);
            series.max_deviation = std::max(series.max_deviation, std::abs(q - c));
        }
        series.time_average = time_average(config.times, series.msd_quantum);
        series.b_factor = b_factor(series.time_average);
        out.series.push_back(std::move(series));
    }
    if (out.series.size() >= 2) {
        std::vector<double> ts, ms;
        for (const auto &s : out.series) {
            ts.push_back(s.temperature);
            ms.push_back(s.time_average);
        }
        out.fit = fit_line(ts, ms);
    }
    return out;
}

}  // namespace qenm
