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

#ifndef QENM_MEASURE_HPP
#define QENM_MEASURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qenm/boltzmann.hpp"
#include "qenm/encoding.hpp"
#include "qenm/enm.hpp"
#include "qenm/lattice.hpp"
#include "qenm/stats.hpp"

namespace qenm {

/// SI constants for physical-units runs.
namespace units {
constexpr double kAmu = 1.66053906660e-27;       // kg
constexpr double kBoltzmann = 1.380649e-23;      // J/K
constexpr double kAngstrom = 1e-10;              // m
constexpr double kCarbonMass = 12 * kAmu;
constexpr double kRippleWindow = 1e-9;           // s
}  // namespace units

enum class Target { kinetic, potential, displacement };

std::string to_string(Target t);

/// A node subset (kinetic, displacement) or bond subset (potential).
/// Bonds are (j, k) node pairs with j <= k. `axis` restricts to one axis block.
struct SubsetSelector {
    Target target = Target::kinetic;
    std::vector<std::uint64_t> nodes;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> bonds;
    std::optional<std::size_t> axis;

    void validate(const SystemMatrices &sys) const;
};

enum class EstimateMode { exact, shots };

struct EstimateReport {
    EstimateMode mode = EstimateMode::exact;
    /// Probability of the selected basis states.
    double fraction = 0;
    /// Fraction converted to the observable (energy ratio, or MSD in length^2).
    double estimate = 0;
    std::uint64_t shots = 0;
    double std_error = 0;
    /// Amplitude-estimation calls implied by (epsilon, delta).
    std::uint64_t oracle_calls = 0;
    /// Selected probability; queries far below 1 are effectively unmeasurable.
    double detectability = 0;
};

/// ceil(log(1/delta) / epsilon).
std::uint64_t oracle_calls(double epsilon, double delta);

struct AccuracyTarget {
    double epsilon = 1e-3;
    double delta = 1e-2;
};

/// Sum of |amplitude|^2 over the selected basis states.
double subset_probability(const EncodedState &state, const SubsetSelector &selector);

/// K_V / E or U_V / E from a standard-encoded state.
EstimateReport energy_fraction(const EncodedState &state, const SubsetSelector &selector,
                               const AccuracyTarget &accuracy = {});

/// MSD over the selected nodes from an alternative-encoded state; needs the masses to undo sqrt(M).
EstimateReport msd_fraction(const EncodedState &state, const SystemMatrices &sys, const SubsetSelector &selector,
                            const AccuracyTarget &accuracy = {});

/// Replaces the exact fraction with the hit rate of `shots` simulated
/// measurements; the estimate keeps the exact report's conversion factor.
EstimateReport shot_sample(const EstimateReport &exact, std::uint64_t shots, std::uint64_t seed);

/// Physical nodes grouped by unit-cell column, one region per column.
std::vector<std::vector<std::uint64_t>> column_regions(const LatticeSpec &spec);

struct HeatQuery {
    std::size_t lo = 0;
    std::size_t mid = 0;
    std::size_t hi = 0;
    double lower_fraction = 0;
    double upper_fraction = 0;
    bool kept_upper = false;
};

struct HeatSearchResult {
    /// Final half-open range of region indices.
    std::size_t begin = 0;
    std::size_t end = 0;
    std::vector<HeatQuery> log;
};

/// Halves the region range until one region is left, keeping the half with
/// the larger kinetic fraction. Ties keep the lower half. The region count
/// must be a power of two.
HeatSearchResult heat_binary_search(const EncodedState &state,
                                    const std::vector<std::vector<std::uint64_t>> &regions);

/// Region with the largest classical kinetic energy (lowest index on ties).
std::size_t classical_argmax_region(const SystemMatrices &sys, const AxisVectors &v,
                                    const std::vector<std::vector<std::uint64_t>> &regions);

/// Velocities drawn for the hotspot nodes only; every other node starts at rest.
AxisVectors hotspot_velocities(const SystemMatrices &sys, const MBParams &params,
                               const std::vector<std::uint64_t> &hotspot, std::uint64_t seed);

struct RippleConfig {
    LatticeSpec spec{2, 2};
    double kappa = 1;
    double mass = 1;
    double k_B = 1;
    std::vector<double> temperatures;
    std::vector<double> times;
    std::uint64_t seed = 0;
};

struct RippleSeries {
    double temperature = 0;
    std::vector<double> msd_quantum;
    std::vector<double> msd_classical;
    double time_average = 0;
    double b_factor = 0;
    double max_deviation = 0;
};

struct RippleResult {
    std::vector<double> times;
    std::vector<RippleSeries> series;
    /// Time-averaged MSD against temperature; empty with fewer than two temperatures.
    std::optional<LinearFit> fit;
    /// Longest nonzero-mode period; windows shorter than this are flagged.
    double longest_period = 0;
    bool window_too_short = false;
};

/// Out-of-plane MSD through the alternative encoding, one run per temperature.
/// The z velocities come from the two-bucket distribution with the mean drift removed.
RippleResult ripple_msd(const RippleConfig &config);

}  // namespace qenm

#endif
