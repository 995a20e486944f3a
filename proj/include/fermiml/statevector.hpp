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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fermiml/circuit.hpp"
#include "fermiml/transfer.hpp"

namespace fermiml {

inline constexpr std::size_t kMaxStateQubits = 12;
inline constexpr std::size_t kMaxBruteForceQubits = 6;

/// Dense 2^N amplitude vector. Qubit 1 is the most significant index bit.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    std::size_t n_qubits = 0;
};

/// Runs `circuit` on the computational basis state `initial` (default |0...0>).
/// Throws ConfigError above 12 qubits.
StateVector simulate_state(const Circuit &circuit, std::uint64_t initial = 0);
StateVector simulate_state(const CircuitSpec &spec, std::span<const double> angles);

/// |<psi(x')|psi(x)>|^2 by dense inner product. Works for every ansatz kind.
double oracle_kernel(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                     std::span<const double> x_prime);

/// Full 2^N x 2^N unitary (N <= 6).
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit);

/// R_{mu nu} = 2^-N Tr[(U c_mu U^dag) c_nu] from dense Jordan-Wigner
/// matrices. The 2^-N normalization makes R(identity) = I. N <= 6.
TransferMatrix brute_force_transfer(const Circuit &circuit);
TransferMatrix brute_force_transfer(const CircuitSpec &spec, std::span<const double> angles);

/// Exact marginal probability by summing squared amplitudes.
double oracle_marginal_probability(const Circuit &circuit, std::span<const std::size_t> input_ones,
                                   std::span<const std::size_t> measured, std::span<const int> outcomes);

/// Per-qubit states of a circuit made only of single-qubit rotations.
std::vector<Eigen::Vector2cd> product_state(const CircuitSpec &spec, std::span<const double> angles);

/// prod_j |<phi_j(x')|phi_j(x)>|^2, valid at any N. Only defined for circuits
/// of single-qubit gates (tensor_PQC): matchgate rotations couple neighbouring
/// qubits even without entangler rows, so tensor_fPQC is rejected.
double product_state_kernel(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                            std::span<const double> x_prime);

}  // namespace fermiml
