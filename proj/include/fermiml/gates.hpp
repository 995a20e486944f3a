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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fermiml {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using RealMat4 = Eigen::Matrix4d;

inline constexpr double kGateTolerance = 1e-12;
inline constexpr double kTransferTolerance = 1e-10;

/// Single-qubit blocks used to assemble matchgates and baseline circuits.
/// Rotations follow R_a(theta) = exp(-i theta a / 2).
enum class BlockKind : std::uint8_t { I, X, Z, H, Ry, Rz };

std::string to_string(BlockKind kind);

/// Returns the 2x2 matrix for `kind`. An angle must be given for Ry/Rz and
/// must be absent otherwise.
Mat2 rotation_block(BlockKind kind, std::optional<double> angle = std::nullopt);

bool is_unitary(const Eigen::MatrixXcd &m, double tol = kGateTolerance);

/// Two-qubit matchgate U(A, W) on wires (wire, wire + 1), wires 1-based.
///
/// A acts on the even-parity subspace {|00>, |11>} and W on the odd-parity
/// subspace {|01>, |10>}. Both blocks are unitary with det A == det W, which is
/// what makes nearest-neighbour circuits of these gates free-fermionic.
class Matchgate {
  public:
    const Mat2 &even_block() const { return even_; }
    const Mat2 &odd_block() const { return odd_; }
    std::size_t wire() const { return wire_; }

  private:
    Matchgate(const Mat2 &even, const Mat2 &odd, std::size_t wire) : even_(even), odd_(odd), wire_(wire) {}
    friend Matchgate make_matchgate(const Mat2 &, const Mat2 &, std::size_t);

    Mat2 even_;
    Mat2 odd_;
    std::size_t wire_;
};

/// Validates and builds a matchgate. Throws ConfigError when a block is not
/// unitary, when |det A - det W| > 1e-12, or when wire < 1.
Matchgate make_matchgate(const Mat2 &even, const Mat2 &odd, std::size_t wire);

/// 4x4 unitary in the basis {|00>, |01>, |10>, |11>} (first wire is the high bit).
Mat4 matchgate_unitary(const Matchgate &g);

/// 4x4 real orthogonal block of the Majorana transfer matrix acting on
/// indices {2k-1, 2k, 2k+1, 2k+2} for a gate on wire k:
///   R_{mu nu} = Tr[(U c_mu U^dag) c_nu] / 4
/// with local Majoranas c1 = XI, c2 = YI, c3 = ZX, c4 = ZY.
/// Throws NumericalError if any entry has imaginary part above 1e-10.
RealMat4 single_gate_transfer(const Matchgate &g);

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Dense-matrix friendly Pauli string. `log_i` encodes the phase i^log_i.
struct PauliString {
    std::vector<Pauli> ops;
    std::uint8_t log_i = 0;

    std::size_t num_qubits() const { return ops.size(); }
    cplx phase() const;
    /// e.g. "+ZXI"
    std::string str() const;
    /// 2^N x 2^N matrix with qubit 1 as the most significant tensor factor.
    Eigen::MatrixXcd to_matrix() const;
};

/// Jordan-Wigner string for Majorana c_mu (1-based, 1 <= mu <= 2N):
/// c_{2k-1} = Z^{k-1} X I^{N-k}, c_{2k} = Z^{k-1} Y I^{N-k}.
PauliString majorana_pauli_string(std::size_t mu, std::size_t n_qubits);

}  // namespace fermiml
