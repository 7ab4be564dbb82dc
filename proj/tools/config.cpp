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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qenm/io.hpp"
#include "qenm/measure.hpp"

namespace qenm::cli {

namespace {

using nlohmann::json;

template <typename T>
void read(const json &j, const char *key, T &out) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

const std::vector<std::string> kKnownKeys = {
    "lattice", "units", "kappa", "mass", "temperature", "k_B", "dims", "encoding", "initial",
    "perturbed_nodes", "perturbation", "t_end", "time_steps", "window", "temperatures", "sizes",
    "scaling_kind", "subsets", "seed", "out_dir", "fault"};

}  // namespace

LatticeSpec RunConfig::spec() const {
    try {
        return LatticeSpec(n_r, n_c);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("lattice: ") + e.what());
    }
}

std::vector<double> RunConfig::times() const {
    std::vector<double> out;
    for (int i = 0; i <= time_steps; i++) {
        out.push_back(t_end * i / time_steps);
    }
    return out;
}

std::vector<double> RunConfig::ripple_times() const {
    const double span = window.value_or(t_end);
    std::vector<double> out;
    for (int i = 0; i <= time_steps; i++) {
        out.push_back(span * i / time_steps);
    }
    return out;
}

void RunConfig::validate() const {
    const LatticeSpec s = spec();
    if (units != "reduced" && units != "physical") {
        throw ConfigError("units must be 'reduced' or 'physical'");
    }
    if (!(kappa > 0) || !(mass > 0) || !(k_B > 0)) {
        throw ConfigError("kappa, mass and k_B must be positive");
    }
    if (!(temperature >= 0)) {
        throw ConfigError("temperature must be non-negative");
    }
    if (dims < 1 || dims > 3) {
        throw ConfigError("dims must be 1, 2 or 3");
    }
    if (encoding != "standard" && encoding != "alternative") {
        throw ConfigError("encoding must be 'standard' or 'alternative'");
    }
    if (initial != "zero" && initial != "perturbed" && initial != "boltzmann") {
        throw ConfigError("initial must be 'zero', 'perturbed' or 'boltzmann'");
    }
    const auto bits = static_cast<std::size_t>(s.index_bits());
    if (perturbed_nodes.size() > bits * bits) {
        throw ConfigError("perturbed node list longer than (address bits)^2 = " + std::to_string(bits * bits));
    }
    for (auto j : perturbed_nodes) {
        if (j >= s.node_count()) {
            throw ConfigError("perturbed node " + std::to_string(j) + " outside the lattice");
        }
        if (is_dummy_index(j, s)) {
            throw ConfigError("perturbed node " + std::to_string(j) + " is a dummy node");
        }
    }
    if (units == "physical" && std::abs(perturbation) > units::kAngstrom) {
        throw ConfigError("physical displacements must not exceed 1 angstrom");
    }
    if (!(t_end > 0) || time_steps < 1) {
        throw ConfigError("need t_end > 0 and time_steps >= 1");
    }
    if (window && !(*window > 0)) {
        throw ConfigError("window must be positive");
    }
    for (double t : temperatures) {
        if (!(t >= 0)) {
            throw ConfigError("temperatures must be non-negative");
        }
    }
    if (scaling_kind != "cond" && scaling_kind != "trace") {
        throw ConfigError("scaling_kind must be 'cond' or 'trace'");
    }
    std::size_t prev = 0;
    for (const auto &[r, c] : sizes) {
        LatticeSpec ls;
        try {
            ls = LatticeSpec(r, c);
        } catch (const std::exception &e) {
            throw ConfigError(std::string("sizes: ") + e.what());
        }
        const std::size_t n = ls.node_count();
        if (n <= prev) {
            throw ConfigError("sizes must be strictly increasing in node count");
        }
        prev = n;
    }
    if (subsets < 1) {
        throw ConfigError("subsets must be positive");
    }
    if (fault) {
        if (fault->r0 < 0 || fault->r0 > 1 || fault->s < 0 || fault->s > 1 || fault->ell < 0 || fault->ell > 2 ||
            std::abs(fault->dr) > 1 || std::abs(fault->dc) > 1) {
            throw ConfigError("fault entry out of range");
        }
    }
}

nlohmann::json RunConfig::to_json() const {
    json j;
    j["lattice"] = {{"n_r", n_r}, {"n_c", n_c}};
    j["units"] = units;
    j["kappa"] = kappa;
    j["mass"] = mass;
    j["temperature"] = temperature;
    j["k_B"] = k_B;
    j["dims"] = dims;
    j["encoding"] = encoding;
    j["initial"] = initial;
    j["perturbed_nodes"] = perturbed_nodes;
    j["perturbation"] = perturbation;
    j["t_end"] = t_end;
    j["time_steps"] = time_steps;
    if (window) {
        j["window"] = *window;
    }
    j["temperatures"] = temperatures;
    json sz = json::array();
    for (const auto &[r, c] : sizes) {
        sz.push_back({r, c});
    }
    j["sizes"] = sz;
    j["scaling_kind"] = scaling_kind;
    j["subsets"] = subsets;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    if (fault) {
        j["fault"] = {{"r0", fault->r0}, {"s", fault->s}, {"ell", fault->ell}, {"dr", fault->dr}, {"dc", fault->dc}};
    }
    return j;
}

RunConfig default_config(const std::string &units) {
    RunConfig c;
    c.units = units;
    c.window = 50;
    if (units == "physical") {
        c.mass = units::kCarbonMass;
        c.k_B = units::kBoltzmann;
        c.temperature = 300;
        c.temperatures = {100, 200, 300, 400};
        c.perturbation = 0.1 * units::kAngstrom;
        c.t_end = 1e-12;
        c.window = units::kRippleWindow;
    }
    return c;
}

RunConfig RunConfig::from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto &item : j.items()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), item.key()) == kKnownKeys.end()) {
            throw ConfigError("unknown config field '" + item.key() + "'");
        }
    }
    std::string units = "reduced";
    read(j, "units", units);
    RunConfig c = default_config(units);
    if (j.contains("lattice")) {
        read(j.at("lattice"), "n_r", c.n_r);
        read(j.at("lattice"), "n_c", c.n_c);
    }
    read(j, "kappa", c.kappa);
    read(j, "mass", c.mass);
    read(j, "temperature", c.temperature);
    read(j, "k_B", c.k_B);
    read(j, "dims", c.dims);
    read(j, "encoding", c.encoding);
    read(j, "initial", c.initial);
    read(j, "perturbed_nodes", c.perturbed_nodes);
    read(j, "perturbation", c.perturbation);
    read(j, "t_end", c.t_end);
    read(j, "time_steps", c.time_steps);
    if (j.contains("window")) {
        double w = 0;
        read(j, "window", w);
        c.window = w;
    }
    read(j, "temperatures", c.temperatures);
    if (j.contains("sizes")) {
        std::vector<std::vector<int>> raw;
        read(j, "sizes", raw);
        c.sizes.clear();
        for (const auto &p : raw) {
            if (p.size() != 2) {
                throw ConfigError("each size must be a [n_r, n_c] pair");
            }
            c.sizes.emplace_back(p[0], p[1]);
        }
    }
    read(j, "scaling_kind", c.scaling_kind);
    read(j, "subsets", c.subsets);
    read(j, "seed", c.seed);
    read(j, "out_dir", c.out_dir);
    if (j.contains("fault")) {
        ShiftFault f;
        const json &fj = j.at("fault");
        read(fj, "r0", f.r0);
        read(fj, "s", f.s);
        read(fj, "ell", f.ell);
        read(fj, "dr", f.dr);
        read(fj, "dc", f.dc);
        c.fault = f;
    }
    return c;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return RunConfig::from_json(j);
}

std::vector<std::pair<int, int>> parse_sizes(const std::string &text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto x = item.find('x');
        try {
            if (x == std::string::npos) {
                throw std::invalid_argument(item);
            }
            std::size_t used_r = 0;
            std::size_t used_c = 0;
            const int r = std::stoi(item.substr(0, x), &used_r);
            const int c = std::stoi(item.substr(x + 1), &used_c);
            if (used_r != x || used_c != item.size() - x - 1) {
                throw std::invalid_argument(item);
            }
            out.emplace_back(r, c);
        } catch (const std::exception &) {
            throw ConfigError("size '" + item + "' is not of the form <n_r>x<n_c>");
        }
    }
    if (out.empty()) {
        throw ConfigError("size list is empty");
    }
    return out;
}

ShiftFault parse_fault(const std::string &text) {
    std::vector<int> v;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            v.push_back(std::stoi(item));
        } catch (const std::exception &) {
            throw ConfigError("fault '" + text + "' is not r0,s,ell,dr,dc");
        }
    }
    if (v.size() != 5) {
        throw ConfigError("fault '" + text + "' is not r0,s,ell,dr,dc");
    }
    return {v[0], v[1], v[2], v[3], v[4]};
}

}  // namespace qenm::cli
