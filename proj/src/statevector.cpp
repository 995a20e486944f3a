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

#include "fermiml/statevector.hpp"

#include <array>
#include <string>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

void require_state_size(std::size_t n) {
    if (n > kMaxStateQubits) {
        throw ConfigError("statevector oracle limited to " + std::to_string(kMaxStateQubits) + " qubits, got " +
                          std::to_string(n));
    }
}

std::uint64_t bit_of(std::size_t n, std::size_t qubit) { return std::uint64_t{1} << (n - qubit); }

void apply_two_qubit(Eigen::VectorXcd &psi, std::size_t n, std::size_t wire, const Mat4 &u) {
    const std::uint64_t hi = bit_of(n, wire);
    const std::uint64_t lo = bit_of(n, wire + 1);
    const auto dim = static_cast<std::uint64_t>(psi.size());
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & (hi | lo)) != 0) {
            continue;
        }
        const std::array<std::uint64_t, 4> idx{base, base | lo, base | hi, base | hi | lo};
        Eigen::Vector4cd local;
        for (int i = 0; i < 4; ++i) {
            local(i) = psi(static_cast<Eigen::Index>(idx[i]));
        }
        local = (u * local).eval();
        for (int i = 0; i < 4; ++i) {
            psi(static_cast<Eigen::Index>(idx[i])) = local(i);
        }
    }
}

void apply_one_qubit(Eigen::VectorXcd &psi, std::size_t n, std::size_t qubit, const Mat2 &u) {
    const std::uint64_t b = bit_of(n, qubit);
    const auto dim = static_cast<std::uint64_t>(psi.size());
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & b) != 0) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(base);
        const auto i1 = static_cast<Eigen::Index>(base | b);
        const cplx a0 = psi(i0);
        const cplx a1 = psi(i1);
        psi(i0) = u(0, 0) * a0 + u(0, 1) * a1;
        psi(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_cnot(Eigen::VectorXcd &psi, std::size_t n, std::size_t wire) {
    const std::uint64_t control = bit_of(n, wire);
    const std::uint64_t target = bit_of(n, wire + 1);
    const auto dim = static_cast<std::uint64_t>(psi.size());
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & control) != 0 && (base & target) == 0) {
            std::swap(psi(static_cast<Eigen::Index>(base)), psi(static_cast<Eigen::Index>(base | target)));
        }
    }
}

void apply_gate(Eigen::VectorXcd &psi, std::size_t n, const Gate &gate) {
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Matchgate>) {
                if (g.wire() + 1 > n) {
                    throw ConfigError("matchgate wire out of range");
                }
                apply_two_qubit(psi, n, g.wire(), matchgate_unitary(g));
            } else if constexpr (std::is_same_v<T, QubitGate>) {
                if (g.qubit < 1 || g.qubit > n) {
                    throw ConfigError("single-qubit gate out of range");
                }
                apply_one_qubit(psi, n, g.qubit, g.matrix);
            } else {
                if (g.wire < 1 || g.wire + 1 > n) {
                    throw ConfigError("CNOT wire out of range");
                }
                apply_cnot(psi, n, g.wire);
            }
        },
        gate);
}

}  // namespace

StateVector simulate_state(const Circuit &circuit, std::uint64_t initial) {
    const std::size_t n = circuit.n_qubits;
    require_state_size(n);
    StateVector out;
    out.n_qubits = n;
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    if (initial >= static_cast<std::uint64_t>(dim)) {
        throw ConfigError("initial basis state out of range");
    }
    out.amplitudes = Eigen::VectorXcd::Zero(dim);
    out.amplitudes(static_cast<Eigen::Index>(initial)) = 1.0;
    for (const auto &gate : circuit.gates) {
        apply_gate(out.amplitudes, n, gate);
    }
    return out;
}

StateVector simulate_state(const CircuitSpec &spec, std::span<const double> angles) {
    require_state_size(spec.n_qubits);
    return simulate_state(bind_circuit(spec, angles));
}

double oracle_kernel(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                     std::span<const double> x_prime) {
    if (x.size() != x_prime.size()) {
        throw ConfigError("oracle_kernel: feature vectors differ in length");
    }
    const StateVector a = simulate_state(spec, encode_angles(x, params, spec));
    const StateVector b = simulate_state(spec, encode_angles(x_prime, params, spec));
    return std::norm(b.amplitudes.dot(a.amplitudes));
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit) {
    if (circuit.n_qubits > kMaxBruteForceQubits) {
        throw ConfigError("dense unitary limited to " + std::to_string(kMaxBruteForceQubits) + " qubits");
    }
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << circuit.n_qubits);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        u.col(col) = simulate_state(circuit, static_cast<std::uint64_t>(col)).amplitudes;
    }
    return u;
}

TransferMatrix brute_force_transfer(const Circuit &circuit) {
    const std::size_t n = circuit.n_qubits;
    const Eigen::MatrixXcd u = circuit_unitary(circuit);
    std::vector<Eigen::MatrixXcd> c;
    c.reserve(2 * n);
    for (std::size_t mu = 1; mu <= 2 * n; ++mu) {
        c.push_back(majorana_pauli_string(mu, n).to_matrix());
    }
    const double norm = 1.0 / static_cast<double>(u.rows());
    TransferMatrix out = TransferMatrix::identity(n);
    for (std::size_t mu = 0; mu < 2 * n; ++mu) {
        const Eigen::MatrixXcd conjugated = u * c[mu] * u.adjoint();
        for (std::size_t nu = 0; nu < 2 * n; ++nu) {
            const cplx entry = (conjugated * c[nu]).trace() * norm;
            out.r(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = entry.real();
        }
    }
    return out;
}

TransferMatrix brute_force_transfer(const CircuitSpec &spec, std::span<const double> angles) {
    return brute_force_transfer(bind_circuit(spec, angles));
}

double oracle_marginal_probability(const Circuit &circuit, std::span<const std::size_t> input_ones,
                                   std::span<const std::size_t> measured, std::span<const int> outcomes) {
    const std::size_t n = circuit.n_qubits;
    std::uint64_t initial = 0;
    for (std::size_t p : input_ones) {
        initial |= bit_of(n, p);
    }
    const StateVector psi = simulate_state(circuit, initial);
    double total = 0.0;
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        bool match = true;
        for (std::size_t m = 0; m < measured.size() && match; ++m) {
            const bool one = (static_cast<std::uint64_t>(i) & bit_of(n, measured[m])) != 0;
            match = one == (outcomes[m] == 1);
        }
        if (match) {
            total += std::norm(psi.amplitudes(i));
        }
    }
    return total;
}

std::vector<Eigen::Vector2cd> product_state(const CircuitSpec &spec, std::span<const double> angles) {
    if (angles.size() != spec.num_params) {
        throw ConfigError("product_state: angle count does not match circuit");
    }
    std::vector<Eigen::Vector2cd> qubits(spec.n_qubits, Eigen::Vector2cd(1.0, 0.0));
    for (const auto &placement : spec.layout) {
        const auto *rot = std::get_if<QubitRotation>(&placement);
        if (rot == nullptr) {
            throw ConfigError("product_state_kernel needs a circuit of single-qubit gates; " +
                              std::string(to_string(spec.kind)) + " couples neighbouring qubits");
        }
        const BlockKind kind = rot->axis == RotationAxis::Y ? BlockKind::Ry : BlockKind::Rz;
        qubits[rot->qubit - 1] = rotation_block(kind, angles[rot->slot]) * qubits[rot->qubit - 1];
    }
    return qubits;
}

double product_state_kernel(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                            std::span<const double> x_prime) {
    if (x.size() != x_prime.size()) {
        throw ConfigError("product_state_kernel: feature vectors differ in length");
    }
    const auto a = product_state(spec, encode_angles(x, params, spec));
    const auto b = product_state(spec, encode_angles(x_prime, params, spec));
    double value = 1.0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        value *= std::norm(b[q].dot(a[q]));
    }
    return value;
}

}  // namespace fermiml
