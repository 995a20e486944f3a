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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fermiml/pfaffian.hpp"
#include "fermiml/transfer.hpp"

namespace fermiml {

/// U^dag a_j U for qubit line j (1-based).
struct Annih {
    std::size_t line;
};
/// U^dag a_j^dag U for qubit line j (1-based).
struct Creat {
    std::size_t line;
};
/// Bare Majorana c_{2p} from expanding an occupied input position p (1-based).
struct InputMajorana {
    std::size_t position;
};

using DressedOperatorTag = std::variant<Annih, Creat, InputMajorana>;

inline constexpr double kProbabilityTolerance = 1e-8;

/// Wick-contraction matrix for <0| op_1 op_2 ... op_2m |0>.
///
/// Each operator is a linear form v . c in the Majoranas (T_j for Annih,
/// conj(T_j) for Creat, the unit vector e_{2p} for InputMajorana), so the
/// entry above the diagonal is M_{kl} = v_k B v_l^T. That reproduces the
/// TBT^T / TBT^dag / T*BT^T / T*BT^dag / TB / BT^T / delta lookup.
SkewSymmetricMatrix build_M(const TransitionMatrix &t, const ContractionBasis &b,
                            std::span<const DressedOperatorTag> ops);

/// Converts a Pfaffian to a probability: asserts |Im| < 1e-8 and
/// -1e-8 <= Re <= 1 + 1e-8, then clamps to [0, 1]. Throws NumericalError.
double validated_probability(std::complex<double> pf);

/// |<0|U|0>|^2 from the 2N-dimensional Pfaffian with operator order
/// Annih(1), Creat(1), ..., Annih(N), Creat(N).
double vacuum_probability(const TransferMatrix &r);

/// Probability that the qubits in `measured` (1-based) read `outcomes` after
/// running the circuit on the basis state with ones at `input_ones`
/// (ascending, 1-based). The Pfaffian has dimension 2(l + k).
double marginal_probability(const TransferMatrix &r, std::span<const std::size_t> input_ones,
                            std::span<const std::size_t> measured, std::span<const int> outcomes);

}  // namespace fermiml
