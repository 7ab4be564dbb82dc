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

#include "qenm/loaders.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qenm::circuits {

Loader velocity_loader_two_bucket(const BucketKey &key, std::array<double, 2> normalized_velocities) {
    if (key.n < 1 || key.n > 40 || (key.s >> key.n) != 0) {
        throw std::invalid_argument("bucket key does not match the index width");
    }
    for (double v : normalized_velocities) {
        if (!(std::abs(v) <= 1)) {
            throw std::invalid_argument("normalized velocities must satisfy |v| <= 1");
        }
    }
    Loader out;
    out.index_register = "j";
    Circuit &c = out.circuit;
    const Register j = c.add_register("j", key.n);
    const int bucket = c.add_register("bucket", 1, RegisterRole::ancilla).qubit(0);
    const int anc = c.add_register("anc", 1, RegisterRole::flag).qubit(0);

    Circuit parity;
    parity.add_register("j", key.n);
    parity.add_register("bucket", 1, RegisterRole::ancilla);
    if (key.r & 1) {
        parity.x(bucket);
    }
    for (int i = 0; i < key.n; i++) {
        if ((key.s >> i) & 1) {
            parity.cx(j.qubit(i), bucket);
        }
    }

    for (int q : j.qubits()) {
        c.h(q);
    }
    c.append(parity);
    c.ry(anc, 2 * std::asin(normalized_velocities[0]), {{bucket, false}});
    c.ry(anc, 2 * std::asin(normalized_velocities[1]), {{bucket, true}});
    c.append(parity.inverse());
    out.postselect_mask = std::uint64_t{1} << anc;
    out.postselect_value = out.postselect_mask;
    return out;
}

Loader inequality_test_loader(const std::vector<std::int64_t> &values, int precision_bits) {
    if (values.empty() || !std::has_single_bit(values.size())) {
        throw std::invalid_argument("value table length must be a power of two");
    }
    if (precision_bits < 1 || precision_bits > 20) {
        throw std::invalid_argument("precision must lie in [1, 20] bits");
    }
    const std::int64_t limit = std::int64_t{1} << precision_bits;
    std::vector<std::uint64_t> table;
    for (std::int64_t v : values) {
        if (std::abs(v) >= limit) {
            throw std::invalid_argument("value " + std::to_string(v) + " needs more than " +
                                        std::to_string(precision_bits) + " bits");
        }
        const auto magnitude = static_cast<std::uint64_t>(std::abs(v));
        table.push_back(magnitude | (v < 0 ? std::uint64_t{1} << precision_bits : 0));
    }
    const int n = std::countr_zero(values.size());

    Loader out;
    out.index_register = "j";
    Circuit &c = out.circuit;
    const Register j = c.add_register("j", std::max(n, 1));
    const Register value = c.add_register("value", precision_bits + 1, RegisterRole::ancilla);
    const Register x = c.add_register("x", precision_bits, RegisterRole::flag);
    const int flag = c.add_register("cmp", 1, RegisterRole::flag).qubit(0);
    c.add_register("carry", 1, RegisterRole::ancilla);
    if (n == 0) {
        table.push_back(0);
    }
    const std::vector<int> magnitude = value.qubits(0, precision_bits);
    const int sign = value.qubit(precision_bits);

    for (int q : j.qubits()) {
        if (n > 0) {
            c.h(q);
        }
    }
    c.lookup(value.qubits(), j.qubits(), table);
    for (int q : x.qubits()) {
        c.h(q);
    }
    // flag = [x >= |v|]; the postselected branch keeps x < |v|.
    c.compare(flag, x.qubits(), magnitude);
    c.x(flag);
    for (int q : x.qubits()) {
        c.h(q);
    }
    c.z(sign);
    c.lookup(value.qubits(), j.qubits(), table);

    out.postselect_mask = register_mask(x) | (std::uint64_t{1} << flag);
    out.postselect_value = 0;
    return out;
}

LoadResult run_loader(const Loader &loader) {
    const Circuit &c = loader.circuit;
    SparseState state(c.num_qubits());
    state.apply(c);
    const Register idx = c.reg(loader.index_register);
    const std::uint64_t keep = register_mask(idx) | loader.postselect_mask;

    LoadResult out;
    out.amplitudes.assign(std::size_t{1} << idx.width, Amplitude{0});
    for (const auto &[basis, amp] : state.entries()) {
        if ((basis & loader.postselect_mask) != loader.postselect_value) {
            continue;
        }
        if ((basis & ~keep) != 0) {
            out.scratch_leak = std::max(out.scratch_leak, std::abs(amp));
            continue;
        }
        out.amplitudes[get_register(basis, idx)] += amp;
        out.success_probability += std::norm(amp);
    }
    return out;
}

std::vector<std::int64_t> quantize_velocities(const Eigen::VectorXd &normalized, int precision_bits) {
    const double scale = std::ldexp(1.0, precision_bits);
    std::vector<std::int64_t> out;
    for (Eigen::Index i = 0; i < normalized.size(); i++) {
        if (!(std::abs(normalized[i]) <= 1)) {
            throw std::invalid_argument("normalized velocities must satisfy |v| <= 1");
        }
        auto q = static_cast<std::int64_t>(std::llround(normalized[i] * scale));
        const std::int64_t cap = static_cast<std::int64_t>(scale) - 1;
        out.push_back(std::clamp(q, -cap, cap));
    }
    return out;
}

}  // namespace qenm::circuits
