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

#include "fermiml/circuit.hpp"

#include <random>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

// Brick-wall order: odd pairs (1,2), (3,4), ... then even pairs (2,3), ...
std::vector<std::size_t> brick_wall_wires(std::size_t n_qubits) {
    std::vector<std::size_t> wires;
    for (std::size_t k = 1; k + 1 <= n_qubits; k += 2) {
        wires.push_back(k);
    }
    for (std::size_t k = 2; k + 1 <= n_qubits; k += 2) {
        wires.push_back(k);
    }
    return wires;
}

BlockKind rotation_kind(RotationAxis axis) { return axis == RotationAxis::Y ? BlockKind::Ry : BlockKind::Rz; }

const char *axis_name(RotationAxis axis) { return axis == RotationAxis::Y ? "Ry" : "Rz"; }

Matchgate entangler_gate(EntanglerBlocks blocks, std::size_t wire) {
    if (blocks == EntanglerBlocks::ZX) {
        return make_matchgate(rotation_block(BlockKind::Z), rotation_block(BlockKind::X), wire);
    }
    return make_matchgate(rotation_block(BlockKind::H), rotation_block(BlockKind::H), wire);
}

nlohmann::json complex_matrix_json(const Mat2 &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 2; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string_view to_string(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::fPQC:
            return "fPQC";
        case AnsatzKind::hfPQC:
            return "hfPQC";
        case AnsatzKind::tensor_fPQC:
            return "tensor_fPQC";
        case AnsatzKind::PQC:
            return "PQC";
        case AnsatzKind::tensor_PQC:
            return "tensor_PQC";
    }
    return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
    if (name == "fPQC") return AnsatzKind::fPQC;
    if (name == "hfPQC") return AnsatzKind::hfPQC;
    if (name == "tensor_fPQC" || name == "tfPQC") return AnsatzKind::tensor_fPQC;
    if (name == "PQC") return AnsatzKind::PQC;
    if (name == "tensor_PQC" || name == "tPQC") return AnsatzKind::tensor_PQC;
    throw ConfigError("unknown ansatz kind '" + std::string(name) +
                      "' (expected fPQC, hfPQC, tensor_fPQC, PQC or tensor_PQC)");
}

bool is_fermionic(AnsatzKind kind) {
    return kind == AnsatzKind::fPQC || kind == AnsatzKind::hfPQC || kind == AnsatzKind::tensor_fPQC;
}

bool has_entanglers(AnsatzKind kind) {
    return kind == AnsatzKind::fPQC || kind == AnsatzKind::hfPQC || kind == AnsatzKind::PQC;
}

std::size_t depth(std::size_t chi, std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw ConfigError("depth: qubit count must be positive");
    }
    return (chi + n_qubits - 1) / n_qubits;
}

std::pair<CircuitSpec, EncodingParams> build_ansatz(std::size_t n_qubits, std::size_t chi, AnsatzKind kind,
                                                    std::uint64_t seed) {
    if (n_qubits < 2) {
        throw ConfigError("ansatz needs at least 2 qubits, got " + std::to_string(n_qubits));
    }
    CircuitSpec spec;
    spec.n_qubits = n_qubits;
    spec.kind = kind;
    spec.depth = depth(chi, n_qubits);

    const auto wires = brick_wall_wires(n_qubits);
    std::size_t slot = 0;

    auto rotation_row = [&](RotationAxis axis) {
        if (is_fermionic(kind)) {
            for (std::size_t w : wires) {
                spec.layout.emplace_back(MatchgateRotation{axis, w, slot, slot + 1});
                slot += 2;
            }
        } else {
            for (std::size_t q = 1; q <= n_qubits; ++q) {
                spec.layout.emplace_back(QubitRotation{axis, q, slot++});
            }
        }
    };
    auto entangler_row = [&] {
        for (std::size_t w : wires) {
            switch (kind) {
                case AnsatzKind::fPQC:
                    spec.layout.emplace_back(MatchgateEntangler{EntanglerBlocks::ZX, w});
                    break;
                case AnsatzKind::hfPQC:
                    spec.layout.emplace_back(MatchgateEntangler{EntanglerBlocks::HH, w});
                    break;
                case AnsatzKind::PQC:
                    spec.layout.emplace_back(ControlledX{w});
                    break;
                default:
                    return;
            }
        }
    };

    for (std::size_t layer = 0; layer < spec.depth; ++layer) {
        rotation_row(RotationAxis::Y);
        entangler_row();
        rotation_row(RotationAxis::Z);
        entangler_row();
    }
    spec.num_params = slot;

    EncodingParams params;
    params.seed = seed;
    params.theta_r.reserve(spec.num_params);
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < spec.num_params; ++j) {
        // 53 random mantissa bits -> uniform double in [0, 1), identical on every platform.
        params.theta_r.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
    return {std::move(spec), std::move(params)};
}

AngleVector encode_angles(std::span<const double> x, const EncodingParams &params, const CircuitSpec &spec) {
    if (x.empty()) {
        throw ConfigError("encode_angles: empty feature vector");
    }
    if (params.theta_r.size() != spec.num_params) {
        throw ConfigError("encode_angles: theta_r has " + std::to_string(params.theta_r.size()) +
                          " entries, circuit has " + std::to_string(spec.num_params) + " slots");
    }
    AngleVector angles(spec.num_params);
    for (std::size_t j = 0; j < spec.num_params; ++j) {
        angles[j] = params.c_theta * params.theta_r[j] + params.c_x * x[j % x.size()];
    }
    return angles;
}

nlohmann::json layout_json(const CircuitSpec &spec) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &placement : spec.layout) {
        std::visit(
            [&](const auto &p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, MatchgateRotation>) {
                    gates.push_back({{"type", "matchgate_rotation"},
                                     {"rotation", axis_name(p.axis)},
                                     {"wires", {p.wire, p.wire + 1}},
                                     {"slots", {p.slot_even, p.slot_odd}}});
                } else if constexpr (std::is_same_v<T, MatchgateEntangler>) {
                    gates.push_back({{"type", "entangler"},
                                     {"blocks", p.blocks == EntanglerBlocks::ZX ? "ZX" : "HH"},
                                     {"wires", {p.wire, p.wire + 1}}});
                } else if constexpr (std::is_same_v<T, QubitRotation>) {
                    gates.push_back({{"type", "qubit_rotation"},
                                     {"rotation", axis_name(p.axis)},
                                     {"wires", {p.qubit}},
                                     {"slots", {p.slot}}});
                } else {
                    gates.push_back({{"type", "cnot"}, {"wires", {p.wire, p.wire + 1}}});
                }
            },
            placement);
    }
    return {{"n_qubits", spec.n_qubits},
            {"kind", to_string(spec.kind)},
            {"depth", spec.depth},
            {"num_params", spec.num_params},
            {"gates", gates}};
}

bool Circuit::is_matchgate_circuit() const {
    for (const auto &g : gates) {
        if (!std::holds_alternative<Matchgate>(g)) {
            return false;
        }
    }
    return true;
}

Circuit bind_circuit(const CircuitSpec &spec, std::span<const double> angles) {
    if (angles.size() != spec.num_params) {
        throw ConfigError("bind_circuit: expected " + std::to_string(spec.num_params) + " angles, got " +
                          std::to_string(angles.size()));
    }
    Circuit circuit;
    circuit.n_qubits = spec.n_qubits;
    circuit.gates.reserve(spec.layout.size());
    for (const auto &placement : spec.layout) {
        std::visit(
            [&](const auto &p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, MatchgateRotation>) {
                    const BlockKind kind = rotation_kind(p.axis);
                    circuit.gates.emplace_back(make_matchgate(rotation_block(kind, angles[p.slot_even]),
                                                              rotation_block(kind, angles[p.slot_odd]), p.wire));
                } else if constexpr (std::is_same_v<T, MatchgateEntangler>) {
                    circuit.gates.emplace_back(entangler_gate(p.blocks, p.wire));
                } else if constexpr (std::is_same_v<T, QubitRotation>) {
                    circuit.gates.emplace_back(QubitGate{rotation_block(rotation_kind(p.axis), angles[p.slot]), p.qubit});
                } else {
                    circuit.gates.emplace_back(p);
                }
            },
            placement);
    }
    return circuit;
}

nlohmann::json circuit_json(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &gate : circuit.gates) {
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Matchgate>) {
                    gates.push_back({{"type", "matchgate"},
                                     {"wires", {g.wire(), g.wire() + 1}},
                                     {"A", complex_matrix_json(g.even_block())},
                                     {"W", complex_matrix_json(g.odd_block())}});
                } else if constexpr (std::is_same_v<T, QubitGate>) {
                    gates.push_back(
                        {{"type", "qubit_gate"}, {"wires", {g.qubit}}, {"U", complex_matrix_json(g.matrix)}});
                } else {
                    gates.push_back({{"type", "cnot"}, {"wires", {g.wire, g.wire + 1}}});
                }
            },
            gate);
    }
    return {{"n_qubits", circuit.n_qubits}, {"gates", gates}};
}

}  // namespace fermiml
