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

#include "geometry.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace qenm::reference {

namespace {

constexpr double kEps = 1e-6;

struct Atom {
    double x;
    double y;
};

// Axial coordinates: u along a1 = (sqrt3, 0), v along a2 = (sqrt3/2, 3/2).
// The A atom of each cell sits one bond length above the B atom.
Atom place(std::uint64_t j, const LatticeSpec &spec) {
    const std::uint64_t s = j & 1;
    const std::uint64_t c = (j >> 1) % spec.cols();
    const std::uint64_t r = j >> (spec.n_c + 1);
    const double v = static_cast<double>(r);
    const double u = static_cast<double>(c) - std::ceil(v / 2);
    const double root3 = std::sqrt(3.0);
    Atom a;
    a.x = root3 * u + root3 / 2 * v + root3 / 2;
    a.y = 1.5 * v + static_cast<double>(s);
    return a;
}

bool inside_sheet(const Atom &a, const LatticeSpec &spec) {
    const double x_max = std::sqrt(3.0) * static_cast<double>(spec.cols() - 1);
    const double y_max = 1.5 * static_cast<double>(spec.rows() - 2);
    return a.x <= x_max + kEps && a.y >= 1 - kEps && a.y <= y_max + kEps;
}

}  // namespace

std::vector<bool> geometric_dummy_map(const LatticeSpec &spec) {
    std::vector<bool> dummy(spec.node_count());
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        dummy[j] = !inside_sheet(place(j, spec), spec);
    }
    return dummy;
}

Adjacency brute_force_adjacency(const LatticeSpec &spec) {
    const std::uint64_t n = spec.node_count();
    std::vector<Atom> atoms(n);
    std::map<std::pair<long, long>, std::vector<std::uint64_t>> grid;
    auto cell = [](const Atom &a) {
        return std::make_pair(static_cast<long>(std::floor(a.x)), static_cast<long>(std::floor(a.y)));
    };
    for (std::uint64_t j = 0; j < n; j++) {
        atoms[j] = place(j, spec);
        if (inside_sheet(atoms[j], spec)) {
            grid[cell(atoms[j])].push_back(j);
        }
    }

    Adjacency adj;
    adj.lists.resize(n);
    for (const auto &[key, members] : grid) {
        for (std::uint64_t j : members) {
            for (long dx = -1; dx <= 1; dx++) {
                for (long dy = -1; dy <= 1; dy++) {
                    auto it = grid.find({key.first + dx, key.second + dy});
                    if (it == grid.end()) {
                        continue;
                    }
                    for (std::uint64_t k : it->second) {
                        if (k == j) {
                            continue;
                        }
                        double ddx = atoms[j].x - atoms[k].x;
                        double ddy = atoms[j].y - atoms[k].y;
                        if (std::abs(std::hypot(ddx, ddy) - 1.0) < kEps) {
                            adj.lists[j].push_back({k, true});
                        }
                    }
                }
            }
        }
    }
    return adj;
}

}  // namespace qenm::reference
