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

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using qenm::cli::RunConfig;

struct Overrides {
    std::string config_path;
    std::string units;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> sizes;
    std::optional<double> temperature;
    std::optional<int> time_steps;
    std::optional<double> t_end;
    std::optional<std::string> lattice;
    std::optional<std::string> encoding;
    std::optional<std::string> initial;
    std::optional<std::string> kind;
    std::optional<std::string> fault;
};

RunConfig resolve(const Overrides &o) {
    RunConfig c = o.config_path.empty() ? qenm::cli::default_config(o.units.empty() ? "reduced" : o.units)
                                        : qenm::cli::load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.out_dir) c.out_dir = *o.out_dir;
    if (o.sizes) c.sizes = qenm::cli::parse_sizes(*o.sizes);
    if (o.temperature) c.temperature = *o.temperature;
    if (o.time_steps) c.time_steps = *o.time_steps;
    if (o.t_end) c.t_end = *o.t_end;
    if (o.lattice) {
        const auto parsed = qenm::cli::parse_sizes(*o.lattice);
        if (parsed.size() != 1) {
            throw qenm::cli::ConfigError("--lattice takes a single <n_r>x<n_c>");
        }
        c.n_r = parsed.front().first;
        c.n_c = parsed.front().second;
    }
    if (o.encoding) c.encoding = *o.encoding;
    if (o.initial) c.initial = *o.initial;
    if (o.kind) c.scaling_kind = *o.kind;
    if (o.fault) c.fault = qenm::cli::parse_fault(*o.fault);
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum elastic network model toolkit for padded graphene lattices"};
    app.require_subcommand(1);
    Overrides o;
    app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--units", o.units, "reduced or physical (without --config)");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--out-dir", o.out_dir, "output directory");
    app.add_option("--sizes", o.sizes, "scaling sizes, e.g. 2x2,3x3");
    app.add_option("--temperature", o.temperature, "temperature");
    app.add_option("--time-steps", o.time_steps, "number of time steps");
    app.add_option("--t-end", o.t_end, "final time");
    app.add_option("--lattice", o.lattice, "lattice address bits <n_r>x<n_c>");
    app.add_option("--encoding", o.encoding, "standard or alternative");
    app.add_option("--initial", o.initial, "zero, perturbed or boltzmann");
    app.add_option("--kind", o.kind, "scaling study: cond or trace");
    app.add_option("--fault", o.fault, "validate with a corrupted shift entry r0,s,ell,dr,dc");

    using Command = int (*)(const RunConfig &, std::ostream &);
    const std::map<std::string, std::pair<Command, std::string>> commands = {
        {"lattice", {qenm::cli::cmd_lattice, "node table and lattice sketch"}},
        {"validate", {qenm::cli::cmd_validate, "oracle and factorization checks"}},
        {"simulate", {qenm::cli::cmd_simulate, "classical and quantum trajectories side by side"}},
        {"heat", {qenm::cli::cmd_heat, "hotspot binary search"}},
        {"ripple", {qenm::cli::cmd_ripple, "out-of-plane MSD temperature sweep"}},
        {"scaling", {qenm::cli::cmd_scaling, "cond(B) or Tr(A+) against lattice size"}},
    };
    for (const auto &[name, entry] : commands) {
        app.add_subcommand(name, entry.second)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qenm::cli::kExitConfigError;
    }

    try {
        const RunConfig config = resolve(o);
        for (const auto &[name, entry] : commands) {
            if (app.got_subcommand(name)) {
                return entry.first(config, std::cout);
            }
        }
    } catch (const qenm::cli::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qenm::cli::kExitConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qenm::cli::kExitValidationFailure;
    }
    return qenm::cli::kExitConfigError;
}
