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

#ifndef QENM_TOOLS_COMMANDS_HPP
#define QENM_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "qenm/enm.hpp"
#include "qenm/stats.hpp"

namespace qenm::cli {

/// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool passed() const;
};

/// Oracle-vs-classical sweeps and factorization checks for the configured lattice.
ValidationReport run_validation(const RunConfig &config);

struct ScalingRecord {
    int n_r = 0;
    int n_c = 0;
    std::size_t nodes = 0;
    double value = 0;
};

struct StudyResult {
    std::string kind;
    std::vector<ScalingRecord> records;
    /// Power law for cond(B), straight line for Tr(A^+); absent for a single size.
    std::optional<LinearFit> fit;
};

/// cond(B) or Tr(A^+) of the physical sheet for each lattice size.
StudyResult run_scaling(const std::string &kind, const std::vector<std::pair<int, int>> &sizes, double kappa,
                        double mass);

/// Initial displacements and velocities described by the config.
void initial_conditions(const RunConfig &config, const SystemMatrices &sys, AxisVectors &x0, AxisVectors &v0);

/// Honeycomb sketch with bonds, node labels and hollow dummy nodes.
std::string lattice_svg(const LatticeSpec &spec);

int cmd_lattice(const RunConfig &config, std::ostream &log);
int cmd_validate(const RunConfig &config, std::ostream &log);
int cmd_simulate(const RunConfig &config, std::ostream &log);
int cmd_heat(const RunConfig &config, std::ostream &log);
int cmd_ripple(const RunConfig &config, std::ostream &log);
int cmd_scaling(const RunConfig &config, std::ostream &log);

}  // namespace qenm::cli

#endif
