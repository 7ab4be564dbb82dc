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

#ifndef QENM_CIRCUIT_HPP
#define QENM_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qenm::circuits {

/// Qubits are numbered globally; a register occupies a contiguous run with
/// its bit 0 (least significant) at `offset`.
enum class RegisterRole { data, ancilla, flag };

struct Register {
    std::string name;
    int offset = 0;
    int width = 0;
    RegisterRole role = RegisterRole::data;

    int qubit(int bit) const;
    std::vector<int> qubits() const;
    std::vector<int> qubits(int first_bit, int count) const;
};

struct Control {
    int qubit = 0;
    bool on_one = true;

    bool operator==(const Control &) const = default;
};

enum class GateKind {
    H,
    X,
    Z,
    S,
    Ry,
    Swap,
    /// Multiplies the amplitude by -1 when all controls are satisfied.
    PhaseFlip,
    /// targets += a (mod 2^width), or -= when `inverse`.
    Add,
    /// targets[0] ^= [value(a) < value(b)].
    Compare,
    /// targets ^= table[value(a)].
    Lookup,
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<Control> controls;
    std::vector<int> targets;
    std::vector<int> a;
    std::vector<int> b;
    double angle = 0;
    bool inverse = false;
    std::vector<std::uint64_t> table;

    bool is_composite() const;
    /// True when the gate maps basis states to basis states (up to phase).
    bool is_permutation() const;
    Gate adjoint() const;
    std::vector<int> touched_qubits() const;
    std::string str() const;
};

class Circuit {
   public:
    Circuit() = default;

    Register add_register(const std::string &name, int width, RegisterRole role = RegisterRole::data);
    const Register &reg(const std::string &name) const;
    bool has_register(const std::string &name) const;
    const std::vector<Register> &registers() const { return registers_; }
    int num_qubits() const { return num_qubits_; }

    const std::vector<Gate> &gates() const { return gates_; }
    void append(Gate gate);
    /// Appends another circuit whose registers all exist here by name and width.
    void append(const Circuit &other);

    Circuit inverse() const;
    /// Every gate additionally conditioned on `extra`.
    Circuit controlled(const std::vector<Control> &extra) const;

    void h(int q, std::vector<Control> controls = {});
    void x(int q, std::vector<Control> controls = {});
    void z(int q, std::vector<Control> controls = {});
    void s(int q, std::vector<Control> controls = {});
    void ry(int q, double angle, std::vector<Control> controls = {});
    void cx(int control, int target);
    void swap(int q1, int q2, std::vector<Control> controls = {});
    void phase_flip(std::vector<Control> controls);
    void add(const std::vector<int> &target, const std::vector<int> &addend, std::vector<Control> controls = {});
    void subtract(const std::vector<int> &target, const std::vector<int> &subtrahend, std::vector<Control> controls = {});
    void compare(int flag, const std::vector<int> &lhs, const std::vector<int> &rhs, std::vector<Control> controls = {});
    void lookup(const std::vector<int> &value, const std::vector<int> &address, std::vector<std::uint64_t> table,
                std::vector<Control> controls = {});

    /// Line-oriented text: a register header followed by one gate per line.
    std::string dump() const;

   private:
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    int num_qubits_ = 0;
};

/// Controls requiring `reg` to hold `value` (bit i of value on qubit i of reg).
std::vector<Control> value_controls(const Register &reg, std::uint64_t value);
std::vector<Control> value_controls(const std::vector<int> &qubits, std::uint64_t value);

/// Rewrites adder, comparator and lookup gates into X/CNOT/Toffoli networks.
/// Adds a one-qubit ancilla register "carry" when an adder or comparator is present.
Circuit expand_composites(const Circuit &circuit);

}  // namespace qenm::circuits

#endif
