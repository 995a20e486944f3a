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
#include <span>

#include <Eigen/Dense>

#include "fermiml/circuit.hpp"

namespace fermiml {

/// Real orthogonal 2N x 2N matrix R with U c_mu U^dag = sum_nu R_{mu nu} c_nu.
///
/// For U = U_L ... U_1 (gate 1 applied first) the composite transfer matrix is
/// R_1 R_2 ... R_L, so appending a gate right-multiplies R by its block.
struct TransferMatrix {
    Eigen::MatrixXd r;

    std::size_t n_qubits() const { return static_cast<std::size_t>(r.rows() / 2); }

    static TransferMatrix identity(std::size_t n_qubits);

    /// Max-abs deviation of R R^T from the identity.
    double orthogonality_error() const;
};

/// N x 2N dressed-annihilator coefficients: U^dag a_j U = sum_nu T_{j nu} c_nu.
struct TransitionMatrix {
    Eigen::MatrixXcd t;
};

/// Vacuum two-point function <0|c_mu c_nu|0>: N copies of [[1, i], [-i, 1]].
struct ContractionBasis {
    Eigen::MatrixXcd b;
};

inline constexpr double kCompiledOrthogonalityTolerance = 1e-9;

/// Right-multiplies `r` by the embedded single-gate block of `g` (in place).
void append_gate(TransferMatrix &r, const Matchgate &g);

/// Compiles a matchgate-only circuit. Throws ConfigError if the circuit holds
/// non-matchgate operations and NumericalError if the result is not
/// orthogonal within 1e-9.
TransferMatrix compile_transfer(const Circuit &circuit);

/// Binds and compiles a fermionic ansatz.
TransferMatrix compile_transfer(const CircuitSpec &spec, std::span<const double> angles);

/// Transfer matrix of "apply `first`, then `second`".
TransferMatrix compose(const TransferMatrix &first, const TransferMatrix &second);

/// Transfer matrix of U^dag, i.e. R^T.
TransferMatrix adjoint_transfer(const TransferMatrix &r);

/// T_{j nu} = (R^T_{2j-1, nu} + i R^T_{2j, nu}) / 2.
TransitionMatrix transition_matrix(const TransferMatrix &r);

ContractionBasis contraction_basis(std::size_t n_qubits);

}  // namespace fermiml
