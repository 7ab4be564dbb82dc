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

#include "qenm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qenm {

namespace {

constexpr int kMaxIndexBits = 40;

std::uint64_t wrap(std::uint64_t value, int delta, std::uint64_t modulus) {
    auto m = static_cast<std::int64_t>(modulus);
    auto v = (static_cast<std::int64_t>(value) + delta) % m;
    return static_cast<std::uint64_t>(v < 0 ? v + m : v);
}

}  // namespace

LatticeSpec::LatticeSpec(int n_r, int n_c) : n_r(n_r), n_c(n_c) {
    if (n_r < 1 || n_c < 1) {
        throw std::invalid_argument("lattice register widths must be at least 1");
    }
    if (n_r + n_c + 1 > kMaxIndexBits) {
        throw std::invalid_argument("lattice too large: " + std::to_string(n_r + n_c + 1) + " index bits");
    }
}

std::string LatticeSpec::str() const {
    return "(n_r=" + std::to_string(n_r) + ", n_c=" + std::to_string(n_c) + ")";
}

NodeCoord decode_index(std::uint64_t j, const LatticeSpec &spec) {
    if (j >= spec.node_count()) {
        throw std::out_of_range("node index " + std::to_string(j) + " out of range for lattice " + spec.str());
    }
    NodeCoord out;
    out.s = static_cast<int>(j & 1);
    out.c = (j >> 1) & (spec.cols() - 1);
    out.r = j >> (spec.n_c + 1);
    return out;
}

std::uint64_t encode_coord(const NodeCoord &coord, const LatticeSpec &spec) {
    if (coord.r >= spec.rows() || coord.c >= spec.cols() || (coord.s != 0 && coord.s != 1)) {
        throw std::out_of_range("coordinate out of range for lattice " + spec.str());
    }
    return (coord.r << (spec.n_c + 1)) | (coord.c << 1) | static_cast<std::uint64_t>(coord.s);
}

ShiftTable ShiftTable::graphene() {
    ShiftTable t;
    for (int r0 = 0; r0 < 2; r0++) {
        for (int s = 0; s < 2; s++) {
            t.set(r0, s, 0, {0, 0});
        }
    }
    t.set(0, 0, 1, {-1, 0});
    t.set(0, 0, 2, {-1, +1});
    t.set(0, 1, 1, {+1, 0});
    t.set(0, 1, 2, {+1, +1});
    t.set(1, 0, 1, {-1, -1});
    t.set(1, 0, 2, {-1, 0});
    t.set(1, 1, 1, {+1, -1});
    t.set(1, 1, 2, {+1, 0});
    return t;
}

std::size_t ShiftTable::slot(int r0, int s, int ell) {
    if (r0 < 0 || r0 > 1 || s < 0 || s > 1) {
        throw std::invalid_argument("row parity and sublattice must be bits");
    }
    if (ell < 0 || ell >= kGrapheneSparsity) {
        throw std::invalid_argument("invalid neighbor index " + std::to_string(ell));
    }
    return static_cast<std::size_t>((r0 * 2 + s) * kGrapheneSparsity + ell);
}

Shift ShiftTable::at(int r0, int s, int ell) const {
    return entries_[slot(r0, s, ell)];
}

void ShiftTable::set(int r0, int s, int ell, Shift shift) {
    if (std::abs(shift.dr) > 1 || std::abs(shift.dc) > 1) {
        throw std::invalid_argument("shift components must lie in {-1, 0, +1}");
    }
    entries_[slot(r0, s, ell)] = shift;
}

Shift shift_vector(int r0, int s, int ell) {
    static const ShiftTable table = ShiftTable::graphene();
    return table.at(r0, s, ell);
}

Neighbor neighbor(std::uint64_t j, int ell, const LatticeSpec &spec) {
    static const ShiftTable table = ShiftTable::graphene();
    return neighbor(j, ell, spec, table);
}

Neighbor neighbor(std::uint64_t j, int ell, const LatticeSpec &spec, const ShiftTable &table) {
    NodeCoord a = decode_index(j, spec);
    Shift d = table.at(static_cast<int>(a.r & 1), a.s, ell);
    NodeCoord b;
    b.r = wrap(a.r, d.dr, spec.rows());
    b.c = wrap(a.c, d.dc, spec.cols());
    b.s = a.s ^ 1;
    Neighbor out;
    out.k = encode_coord(b, spec);
    out.valid = !(is_dummy(a, spec) || is_dummy(b, spec));
    return out;
}

BoundaryRules boundary_rules(const NodeCoord &coord, const LatticeSpec &spec) {
    BoundaryRules b;
    b.bottom_edge = coord.s == 0 && coord.r == 0;
    b.top_buffer = coord.r == spec.rows() - 1;
    b.top_edge = coord.s == 1 && coord.r == spec.rows() - 2;
    b.right_buffer = coord.c == spec.cols() - 1 && (coord.r & 1) == 0;
    return b;
}

bool is_dummy(const NodeCoord &coord, const LatticeSpec &spec) {
    return boundary_rules(coord, spec).any();
}

bool is_dummy_index(std::uint64_t j, const LatticeSpec &spec) {
    return is_dummy(decode_index(j, spec), spec);
}

std::vector<std::uint64_t> physical_nodes(const LatticeSpec &spec) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        if (!is_dummy_index(j, spec)) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<Bond> Adjacency::bonds() const {
    std::vector<Bond> out;
    for (std::uint64_t j = 0; j < lists.size(); j++) {
        for (const auto &nb : lists[j]) {
            if (nb.valid) {
                out.emplace_back(std::min(j, nb.k), std::max(j, nb.k));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Adjacency::degree(std::uint64_t j) const {
    int n = 0;
    for (const auto &nb : lists.at(j)) {
        n += nb.valid ? 1 : 0;
    }
    return n;
}

bool Adjacency::symmetric() const {
    for (std::uint64_t j = 0; j < lists.size(); j++) {
        for (const auto &nb : lists[j]) {
            if (!nb.valid) {
                continue;
            }
            const auto &back = lists.at(nb.k);
            bool found = std::any_of(back.begin(), back.end(), [&](const Neighbor &x) {
                return x.valid && x.k == j;
            });
            if (!found) {
                return false;
            }
        }
    }
    return true;
}

Adjacency shift_adjacency(const LatticeSpec &spec) {
    return shift_adjacency(spec, ShiftTable::graphene());
}

Adjacency shift_adjacency(const LatticeSpec &spec, const ShiftTable &table) {
    Adjacency adj;
    adj.lists.resize(spec.node_count());
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        for (int ell = 0; ell < kGrapheneSparsity; ell++) {
            adj.lists[j].push_back(neighbor(j, ell, spec, table));
        }
    }
    return adj;
}

Point node_position(const NodeCoord &coord) {
    const double root3 = std::sqrt(3.0);
    Point p;
    p.x = root3 * static_cast<double>(coord.c) + ((coord.r & 1) == 0 ? root3 / 2 : 0.0);
    p.y = 1.5 * static_cast<double>(coord.r) + coord.s;
    return p;
}

std::string lattice_csv(const LatticeSpec &spec) {
    std::ostringstream out;
    out << "j,r,c,s,dummy,neigh0,neigh1,neigh2,valid0,valid1,valid2\n";
    for (std::uint64_t j = 0; j < spec.node_count(); j++) {
        NodeCoord a = decode_index(j, spec);
        out << j << ',' << a.r << ',' << a.c << ',' << a.s << ',' << (is_dummy(a, spec) ? 1 : 0);
        std::array<Neighbor, kGrapheneSparsity> nbs;
        for (int ell = 0; ell < kGrapheneSparsity; ell++) {
            nbs[ell] = neighbor(j, ell, spec);
        }
        for (const auto &nb : nbs) {
            out << ',' << nb.k;
        }
        for (const auto &nb : nbs) {
            out << ',' << (nb.valid ? 1 : 0);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qenm
