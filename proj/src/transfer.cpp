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

#include "fermiml/transfer.hpp"

#include <string>

#include "fermiml/errors.hpp"

namespace fermiml {

TransferMatrix TransferMatrix::identity(std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(2 * n_qubits);
    return TransferMatrix{Eigen::MatrixXd::Identity(dim, dim)};
}

double TransferMatrix::orthogonality_error() const {
    if (r.size() == 0) {
        return 0.0;
    }
    return (r * r.transpose() - Eigen::MatrixXd::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
}

void append_gate(TransferMatrix &r, const Matchgate &g) {
    const auto offset = static_cast<Eigen::Index>(2 * (g.wire() - 1));
    if (offset + 4 > r.r.cols()) {
        throw ConfigError("matchgate on wire " + std::to_string(g.wire()) + " does not fit " +
                          std::to_string(r.n_qubits()) + " qubits");
    }
    const RealMat4 block = single_gate_transfer(g);
    r.r.middleCols(offset, 4) = (r.r.middleCols(offset, 4) * block).eval();
}

TransferMatrix compile_transfer(const Circuit &circuit) {
    TransferMatrix r = TransferMatrix::identity(circuit.n_qubits);
    for (const auto &gate : circuit.gates) {
        const auto *g = std::get_if<Matchgate>(&gate);
        if (g == nullptr) {
            throw ConfigError("compile_transfer: circuit contains non-matchgate operations");
        }
        append_gate(r, *g);
    }
    const double err = r.orthogonality_error();
    if (err > kCompiledOrthogonalityTolerance) {
        throw NumericalError("compiled transfer matrix not orthogonal (error " + std::to_string(err) + ")");
    }
    return r;
}

TransferMatrix compile_transfer(const CircuitSpec &spec, std::span<const double> angles) {
    if (!is_fermionic(spec.kind)) {
        throw ConfigError("compile_transfer: " + std::string(to_string(spec.kind)) +
                          " is not a matchgate circuit (statevector oracle only)");
    }
    return compile_transfer(bind_circuit(spec, angles));
}

TransferMatrix compose(const TransferMatrix &first, const TransferMatrix &second) {
    if (first.r.rows() != second.r.rows()) {
        throw ConfigError("compose: transfer matrices act on different qubit counts");
    }
    return TransferMatrix{first.r * second.r};
}

TransferMatrix adjoint_transfer(const TransferMatrix &r) { return TransferMatrix{r.r.transpose()}; }

TransitionMatrix transition_matrix(const TransferMatrix &r) {
    const Eigen::Index n = static_cast<Eigen::Index>(r.n_qubits());
    TransitionMatrix out{Eigen::MatrixXcd(n, 2 * n)};
    // Row 2j-1 of R^T is column 2j-1 of R.
    for (Eigen::Index j = 0; j < n; ++j) {
        out.t.row(j).real() = 0.5 * r.r.col(2 * j).transpose();
        out.t.row(j).imag() = 0.5 * r.r.col(2 * j + 1).transpose();
    }
    return out;
}

ContractionBasis contraction_basis(std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(2 * n_qubits);
    ContractionBasis out{Eigen::MatrixXcd::Zero(dim, dim)};
    for (Eigen::Index k = 0; k < dim; k += 2) {
        out.b(k, k) = 1.0;
        out.b(k, k + 1) = cplx{0.0, 1.0};
        out.b(k + 1, k) = cplx{0.0, -1.0};
        out.b(k + 1, k + 1) = 1.0;
    }
    return out;
}

}  // namespace fermiml
