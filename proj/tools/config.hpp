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

#ifndef QENM_TOOLS_CONFIG_HPP
#define QENM_TOOLS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qenm/lattice.hpp"

namespace qenm::cli {

/// Raised for malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One shift-table entry overwritten for fault-injection runs of `validate`.
struct ShiftFault {
    int r0 = 0;
    int s = 0;
    int ell = 0;
    int dr = 0;
    int dc = 0;
};

struct RunConfig {
    int n_r = 2;
    int n_c = 2;

    /// "reduced" (all constants 1 by default) or "physical" (SI, carbon mass).
    std::string units = "reduced";
    double kappa = 1;
    double mass = 1;
    double temperature = 1;
    double k_B = 1;
    int dims = 2;

    std::string encoding = "standard";
    /// "zero", "perturbed" or "boltzmann".
    std::string initial = "boltzmann";
    std::vector<std::uint64_t> perturbed_nodes;
    double perturbation = 0.05;

    double t_end = 10;
    int time_steps = 50;
    /// Ripple averaging window; 50 in reduced units, 1 ns in physical units, t_end when unset.
    std::optional<double> window;

    std::vector<double> temperatures{0.5, 1.0, 1.5, 2.0};
    std::vector<std::pair<int, int>> sizes{{2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 4}, {5, 5}};
    std::string scaling_kind = "cond";
    int subsets = 4;

    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::optional<ShiftFault> fault;

    LatticeSpec spec() const;
    /// time_steps + 1 uniform points on [0, t_end].
    std::vector<double> times() const;
    std::vector<double> ripple_times() const;

    /// Throws ConfigError on any inconsistency.
    void validate() const;
    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json &j);
};

/// Reads a JSON config; physical units fill in SI defaults for mass and k_B.
RunConfig load_config(const std::filesystem::path &path);
RunConfig default_config(const std::string &units = "reduced");

/// Parses "2x2,3x3" into size pairs.
std::vector<std::pair<int, int>> parse_sizes(const std::string &text);
/// Parses "r0,s,ell,dr,dc".
ShiftFault parse_fault(const std::string &text);

}  // namespace qenm::cli

#endif
