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

#include "fermiml/contraction.hpp"

#include <algorithm>
#include <string>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

// Each tag is a linear form on the Majorana operators. Line tags are
// Re(T_j) + i*sign*Im(T_j); input tags pick a single Majorana.
struct OperatorRow {
    bool majorana = false;
    Eigen::Index index = 0;  // Majorana column, or line row (0-based)
    double sign = 1.0;       // +1 annihilator, -1 creator
};

OperatorRow describe(const DressedOperatorTag &tag, std::size_t n) {
    return std::visit(
        [&](const auto &op) -> OperatorRow {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, InputMajorana>) {
                if (op.position < 1 || op.position > n) {
                    throw ConfigError("input position " + std::to_string(op.position) + " out of range");
                }
                return {true, static_cast<Eigen::Index>(2 * op.position - 1), 1.0};
            } else {
                if (op.line < 1 || op.line > n) {
                    throw ConfigError("qubit line " + std::to_string(op.line) + " out of range");
                }
                return {false, static_cast<Eigen::Index>(op.line - 1), std::is_same_v<T, Annih> ? 1.0 : -1.0};
            }
        },
        tag);
}

bool is_standard_basis(const ContractionBasis &b) {
    const Eigen::Index m = b.b.rows();
    if (b.b.cols() != m || m % 2 != 0) {
        return false;
    }
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            cplx expected = 0.0;
            if (i == j) {
                expected = 1.0;
            } else if (i / 2 == j / 2) {
                expected = i < j ? cplx(0, 1) : cplx(0, -1);
            }
            if (b.b(i, j) != expected) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

// With B = I + iJ (J the 2x2-block symplectic form) and rows u + i s w over the
// real parts of T, every contraction reduces to entries of U U^T and U J U^T.
SkewSymmetricMatrix build_M(const TransitionMatrix &t, const ContractionBasis &b,
                            std::span<const DressedOperatorTag> ops) {
    if (ops.size() % 2 != 0) {
        throw ConfigError("build_M: operator list must have even length");
    }
    if (b.b.rows() != t.t.cols() || !is_standard_basis(b)) {
        throw ConfigError("build_M: basis does not match the transition matrix");
    }
    const auto lines = t.t.rows();
    const auto modes = t.t.cols();
    const auto n = static_cast<std::size_t>(lines);
    std::vector<OperatorRow> rows;
    rows.reserve(ops.size());
    bool any_line = false;
    for (const auto &op : ops) {
        rows.push_back(describe(op, n));
        any_line = any_line || !rows.back().majorana;
    }

    Eigen::MatrixXd u(2 * lines, modes);
    u.topRows(lines) = t.t.real();
    u.bottomRows(lines) = t.t.imag();
    Eigen::MatrixXd p;
    Eigen::MatrixXd q;
    if (any_line) {
        Eigen::MatrixXd uj(2 * lines, modes);
        for (Eigen::Index c = 0; c < modes; c += 2) {
            uj.col(c) = -u.col(c + 1);
            uj.col(c + 1) = u.col(c);
        }
        p.noalias() = u * u.transpose();
        q.noalias() = uj * u.transpose();
    }
    // v_k B e_c for a line row k and Majorana column c.
    auto line_majorana = [&](const OperatorRow &r, Eigen::Index c) {
        const Eigen::Index partner = c ^ 1;
        const cplx v_c(u(r.index, c), r.sign * u(lines + r.index, c));
        const cplx v_p(u(r.index, partner), r.sign * u(lines + r.index, partner));
        return v_c + v_p * b.b(partner, c);
    };

    const auto m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index l = 1; l < m; ++l) {
        const OperatorRow &rl = rows[static_cast<std::size_t>(l)];
        for (Eigen::Index k = 0; k < l; ++k) {
            const OperatorRow &rk = rows[static_cast<std::size_t>(k)];
            cplx value;
            if (rk.majorana && rl.majorana) {
                value = b.b(rk.index, rl.index);
            } else if (rk.majorana) {
                // e_c B v^T = (B v^T)_c; B^T = conj(B) for this basis.
                const Eigen::Index c = rk.index;
                const Eigen::Index partner = c ^ 1;
                const cplx v_c(u(rl.index, c), rl.sign * u(lines + rl.index, c));
                const cplx v_p(u(rl.index, partner), rl.sign * u(lines + rl.index, partner));
                value = v_c + b.b(c, partner) * v_p;
            } else if (rl.majorana) {
                value = line_majorana(rk, rl.index);
            } else {
                const Eigen::Index a = rk.index;
                const Eigen::Index c = rl.index;
                const double sk = rk.sign;
                const double sl = rl.sign;
                // (x + i sk y) (P + i Q) (x' + i sl y')^T
                const cplx sym(p(a, c) - sk * sl * p(lines + a, lines + c),
                               sl * p(a, lines + c) + sk * p(lines + a, c));
                const cplx skew(q(a, c) - sk * sl * q(lines + a, lines + c),
                                sl * q(a, lines + c) + sk * q(lines + a, c));
                value = sym + cplx(0, 1) * skew;
            }
            out(k, l) = value;
            out(l, k) = -value;
        }
    }
    return SkewSymmetricMatrix(std::move(out), 0.0);
}

double validated_probability(std::complex<double> pf) {
    if (std::abs(pf.imag()) >= kProbabilityTolerance || pf.real() < -kProbabilityTolerance ||
        pf.real() > 1.0 + kProbabilityTolerance) {
        throw NumericalError("Pfaffian " + std::to_string(pf.real()) + (pf.imag() < 0 ? "" : "+") +
                             std::to_string(pf.imag()) + "i is not a probability");
    }
    return std::clamp(pf.real(), 0.0, 1.0);
}

double vacuum_probability(const TransferMatrix &r) {
    const std::size_t n = r.n_qubits();
    std::vector<DressedOperatorTag> ops;
    ops.reserve(2 * n);
    for (std::size_t j = 1; j <= n; ++j) {
        ops.emplace_back(Annih{j});
        ops.emplace_back(Creat{j});
    }
    return validated_probability(pfaffian(build_M(transition_matrix(r), contraction_basis(n), ops)));
}

double marginal_probability(const TransferMatrix &r, std::span<const std::size_t> input_ones,
                            std::span<const std::size_t> measured, std::span<const int> outcomes) {
    const std::size_t n = r.n_qubits();
    if (measured.size() != outcomes.size()) {
        throw ConfigError("marginal_probability: one outcome per measured qubit required");
    }
    for (std::size_t i = 0; i < input_ones.size(); ++i) {
        if (input_ones[i] < 1 || input_ones[i] > n || (i > 0 && input_ones[i] <= input_ones[i - 1])) {
            throw ConfigError("marginal_probability: input positions must be strictly ascending in 1..N");
        }
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t q : measured) {
        if (q < 1 || q > n || seen[q]) {
            throw ConfigError("marginal_probability: measured qubits must be distinct and in 1..N");
        }
        seen[q] = true;
    }

    std::vector<DressedOperatorTag> ops;
    ops.reserve(2 * (input_ones.size() + measured.size()));
    for (auto it = input_ones.rbegin(); it != input_ones.rend(); ++it) {
        ops.emplace_back(InputMajorana{*it});
    }
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (outcomes[i] == 0) {
            ops.emplace_back(Annih{measured[i]});
            ops.emplace_back(Creat{measured[i]});
        } else if (outcomes[i] == 1) {
            ops.emplace_back(Creat{measured[i]});
            ops.emplace_back(Annih{measured[i]});
        } else {
            throw ConfigError("marginal_probability: outcomes must be 0 or 1");
        }
    }
    for (std::size_t p : input_ones) {
        ops.emplace_back(InputMajorana{p});
    }
    return validated_probability(pfaffian(build_M(transition_matrix(r), contraction_basis(n), ops)));
}

}  // namespace fermiml
