// Copyright 2026 The fermiml Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermiml/gates.hpp"

namespace fermiml {

/// Kernel circuit families. The two unrestricted baselines (PQC, tensor_PQC)
/// contain non-matchgate operations and can only run on the statevector
/// oracle or, for tensor_PQC, the exact product-state evaluator.
enum class AnsatzKind : std::uint8_t { fPQC, hfPQC, tensor_fPQC, PQC, tensor_PQC };

std::string_view to_string(AnsatzKind kind);
/// Accepts the canonical names plus "tfPQC"/"tPQC" shorthands. Throws ConfigError.
AnsatzKind parse_ansatz_kind(std::string_view name);
bool is_fermionic(AnsatzKind kind);
bool has_entanglers(AnsatzKind kind);

enum class RotationAxis : std::uint8_t { Y, Z };
enum class EntanglerBlocks : std::uint8_t { ZX, HH };

/// U(R(theta_a), R(theta_b)) on wires (wire, wire + 1).
struct MatchgateRotation {
    RotationAxis axis;
    std::size_t wire;
    std::size_t slot_even;
    std::size_t slot_odd;
};

/// Fixed U(Z, X) or U(H, H) matchgate.
struct MatchgateEntangler {
    EntanglerBlocks blocks;
    std::size_t wire;
};

/// Single-qubit rotation (PQC baselines only).
struct QubitRotation {
    RotationAxis axis;
    std::size_t qubit;
    std::size_t slot;
};

/// CNOT with control `wire` and target `wire + 1` (PQC baseline only).
struct ControlledX {
    std::size_t wire;
};

using Placement = std::variant<MatchgateRotation, MatchgateEntangler, QubitRotation, ControlledX>;

struct CircuitSpec {
    std::size_t n_qubits = 0;
    AnsatzKind kind = AnsatzKind::fPQC;
    std::size_t depth = 0;  // layer pairs
    std::vector<Placement> layout;
    std::size_t num_params = 0;
};

struct EncodingParams {
    double c_theta = std::numbers::pi / 2;
    double c_x = std::numbers::pi / 2;
    std::vector<double> theta_r;
    std::uint64_t seed = 0;
};

using AngleVector = std::vector<double>;

/// Number of layer pairs, ceil(chi / n).
std::size_t depth(std::size_t chi, std::size_t n_qubits);

/// Builds the layered brick-wall ansatz and draws theta_r uniformly from
/// [0, 1) with a generator seeded by `seed`.
///
/// Each layer pair is: Ry rotation row, entangler row, Rz rotation row,
/// entangler row. A row covers pairs (1,2), (3,4), ... then (2,3), (4,5), ...
/// Tensor kinds skip entangler rows. The PQC baselines replace each matchgate
/// rotation row by one single-qubit rotation per wire and use CNOT rows as
/// entanglers.
std::pair<CircuitSpec, EncodingParams> build_ansatz(std::size_t n_qubits, std::size_t chi, AnsatzKind kind,
                                                    std::uint64_t seed);

/// theta_j = c_theta * theta_r[j] + c_x * x[j mod chi].
AngleVector encode_angles(std::span<const double> x, const EncodingParams &params, const CircuitSpec &spec);

/// Debug / golden-test dump of the layout: gate list with wires and slots.
nlohmann::json layout_json(const CircuitSpec &spec);

/// Concrete single-qubit gate.
struct QubitGate {
    Mat2 matrix;
    std::size_t qubit;
};

using Gate = std::variant<Matchgate, QubitGate, ControlledX>;

/// A bound circuit: concrete gates applied in order, gate 0 first.
struct Circuit {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    bool is_matchgate_circuit() const;
};

/// Binds the angle vector into the layout, validating every matchgate.
Circuit bind_circuit(const CircuitSpec &spec, std::span<const double> angles);

/// Serializes a bound circuit (block matrices included) for reproduction.
nlohmann::json circuit_json(const Circuit &circuit);

}  // namespace fermiml
