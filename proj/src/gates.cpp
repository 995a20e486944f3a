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

#include "fermiml/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat2 pauli_matrix(Pauli p) {
    Mat2 m;
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -kI, kI, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

// Local two-qubit Majoranas c1 = XI, c2 = YI, c3 = ZX, c4 = ZY.
const std::array<Mat4, 4> &local_majoranas() {
    static const std::array<Mat4, 4> ops = [] {
        std::array<Mat4, 4> out;
        for (std::size_t mu = 1; mu <= 4; ++mu) {
            out[mu - 1] = majorana_pauli_string(mu, 2).to_matrix();
        }
        return out;
    }();
    return ops;
}

}  // namespace

std::string to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::I:
            return "I";
        case BlockKind::X:
            return "X";
        case BlockKind::Z:
            return "Z";
        case BlockKind::H:
            return "H";
        case BlockKind::Ry:
            return "Ry";
        case BlockKind::Rz:
            return "Rz";
    }
    return "?";
}

Mat2 rotation_block(BlockKind kind, std::optional<double> angle) {
    const bool parameterized = kind == BlockKind::Ry || kind == BlockKind::Rz;
    if (parameterized && !angle) {
        throw ConfigError(to_string(kind) + " requires an angle");
    }
    if (!parameterized && angle) {
        throw ConfigError(to_string(kind) + " does not take an angle");
    }
    Mat2 m;
    switch (kind) {
        case BlockKind::I:
            return pauli_matrix(Pauli::I);
        case BlockKind::X:
            return pauli_matrix(Pauli::X);
        case BlockKind::Z:
            return pauli_matrix(Pauli::Z);
        case BlockKind::H: {
            const double s = std::numbers::sqrt2 / 2;
            m << s, s, s, -s;
            return m;
        }
        case BlockKind::Ry: {
            const double c = std::cos(*angle / 2);
            const double s = std::sin(*angle / 2);
            m << c, -s, s, c;
            return m;
        }
        case BlockKind::Rz: {
            const cplx phase = std::polar(1.0, *angle / 2);
            m << std::conj(phase), 0, 0, phase;
            return m;
        }
    }
    return m;
}

bool is_unitary(const Eigen::MatrixXcd &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const Eigen::MatrixXcd residual = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return residual.cwiseAbs().maxCoeff() <= tol;
}

Matchgate make_matchgate(const Mat2 &even, const Mat2 &odd, std::size_t wire) {
    if (wire < 1) {
        throw ConfigError("matchgate wire index is 1-based, got 0");
    }
    if (!is_unitary(even)) {
        throw ConfigError("matchgate even-parity block A is not unitary");
    }
    if (!is_unitary(odd)) {
        throw ConfigError("matchgate odd-parity block W is not unitary");
    }
    const cplx det_even = even.determinant();
    const cplx det_odd = odd.determinant();
    if (std::abs(det_even - det_odd) > kGateTolerance) {
        throw ConfigError(
            "matchgate constraint violated: |det A - det W| = " + std::to_string(std::abs(det_even - det_odd)));
    }
    return Matchgate(even, odd, wire);
}

Mat4 matchgate_unitary(const Matchgate &g) {
    const Mat2 &a = g.even_block();
    const Mat2 &w = g.odd_block();
    Mat4 u = Mat4::Zero();
    u(0, 0) = a(0, 0);
    u(0, 3) = a(0, 1);
    u(3, 0) = a(1, 0);
    u(3, 3) = a(1, 1);
    u(1, 1) = w(0, 0);
    u(1, 2) = w(0, 1);
    u(2, 1) = w(1, 0);
    u(2, 2) = w(1, 1);
    return u;
}

RealMat4 single_gate_transfer(const Matchgate &g) {
    const Mat4 u = matchgate_unitary(g);
    const auto &c = local_majoranas();
    RealMat4 r;
    for (int mu = 0; mu < 4; ++mu) {
        const Mat4 conjugated = u * c[mu] * u.adjoint();
        for (int nu = 0; nu < 4; ++nu) {
            const cplx entry = (conjugated * c[nu]).trace() / 4.0;
            if (std::abs(entry.imag()) > kTransferTolerance) {
                throw NumericalError("transfer block has imaginary residue " + std::to_string(entry.imag()));
            }
            r(mu, nu) = entry.real();
        }
    }
    return r;
}

cplx PauliString::phase() const {
    static constexpr std::array<cplx, 4> phases{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    return phases[log_i & 3];
}

std::string PauliString::str() const {
    static constexpr std::array<const char *, 4> prefix{"+", "+i", "-", "-i"};
    std::string out = prefix[log_i & 3];
    for (Pauli p : ops) {
        out += "IXYZ"[static_cast<int>(p)];
    }
    return out;
}

Eigen::MatrixXcd PauliString::to_matrix() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1) * phase();
    for (Pauli p : ops) {
        out = Eigen::kroneckerProduct(out, pauli_matrix(p)).eval();
    }
    return out;
}

PauliString majorana_pauli_string(std::size_t mu, std::size_t n_qubits) {
    if (mu < 1 || mu > 2 * n_qubits) {
        throw ConfigError(
            "Majorana index " + std::to_string(mu) + " out of range 1.." + std::to_string(2 * n_qubits));
    }
    PauliString out;
    out.ops.assign(n_qubits, Pauli::I);
    const std::size_t k = (mu + 1) / 2;
    for (std::size_t q = 0; q + 1 < k; ++q) {
        out.ops[q] = Pauli::Z;
    }
    out.ops[k - 1] = (mu % 2 == 1) ? Pauli::X : Pauli::Y;
    return out;
}

}  // namespace fermiml
