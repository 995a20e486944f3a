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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "fermiml/errors.hpp"
#include "fermiml/kernel.hpp"
#include "test_util.hpp"

using namespace fermiml;

namespace {

Eigen::VectorXcd basis(std::size_t n, std::size_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

// Single Ry on qubit 1 of a two-qubit register, one parameter.
CircuitSpec single_ry_spec() {
    CircuitSpec spec;
    spec.n_qubits = 2;
    spec.kind = AnsatzKind::tensor_PQC;
    spec.depth = 1;
    spec.layout = {QubitRotation{RotationAxis::Y, 1, 0}};
    spec.num_params = 1;
    return spec;
}

}  // namespace

TEST(statevector, empty_circuit_is_vacuum) {
    const auto psi = simulate_state(Circuit{2, {}});
    EXPECT_EQ(psi.amplitudes, basis(2, 0));
}

TEST(statevector, xx_flips_both) {
    const Mat2 x = rotation_block(BlockKind::X);
    const auto psi = simulate_state(Circuit{2, {make_matchgate(x, x, 1)}});
    EXPECT_LT(testutil::max_abs_diff(psi.amplitudes, basis(2, 3)), 1e-15);
}

TEST(statevector, hh_entangler_matches_dense_matrix) {
    const Mat2 h = rotation_block(BlockKind::H);
    const Matchgate g = make_matchgate(h, h, 1);
    const auto psi = simulate_state(Circuit{2, {g}});
    const Eigen::VectorXcd expected = matchgate_unitary(g).col(0);
    EXPECT_LT(testutil::max_abs_diff(psi.amplitudes, expected), 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitudes(0)), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitudes(3)), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(psi.amplitudes(1), cplx(0.0));
    EXPECT_EQ(psi.amplitudes(2), cplx(0.0));
}

TEST(statevector, qubit_one_is_most_significant) {
    const Mat2 x = rotation_block(BlockKind::X);
    const auto psi = simulate_state(Circuit{3, {QubitGate{x, 1}}});
    EXPECT_EQ(psi.amplitudes, basis(3, 4));
}

TEST(statevector, cnot_targets_next_wire) {
    const Mat2 x = rotation_block(BlockKind::X);
    const auto flipped = simulate_state(Circuit{2, {QubitGate{x, 1}, ControlledX{1}}});
    EXPECT_EQ(flipped.amplitudes, basis(2, 3));
    const auto idle = simulate_state(Circuit{2, {QubitGate{x, 2}, ControlledX{1}}});
    EXPECT_EQ(idle.amplitudes, basis(2, 1));
}

TEST(statevector, embedded_gate_matches_kronecker) {
    std::mt19937_64 rng(11);
    const Matchgate g = testutil::random_matchgate(rng, 2);
    const Eigen::MatrixXcd u = circuit_unitary(Circuit{4, {g}});
    const Eigen::MatrixXcd expected = Eigen::kroneckerProduct(
        Eigen::kroneckerProduct(Mat2::Identity(), matchgate_unitary(g)).eval(), Mat2::Identity());
    EXPECT_LT(testutil::max_abs_diff(u, expected), 1e-15);
}

TEST(statevector, norm_preserved_after_every_gate) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
        const auto kind = trial % 2 ? AnsatzKind::PQC : AnsatzKind::hfPQC;
        const auto [spec, params] = build_ansatz(n, 3 * n + 1, kind, rng());
        const Circuit c = bind_circuit(spec, encode_angles(testutil::random_features(rng, 3 * n + 1), params, spec));
        Circuit prefix{n, {}};
        for (const auto &gate : c.gates) {
            prefix.gates.push_back(gate);
            ASSERT_NEAR(simulate_state(prefix).amplitudes.norm(), 1.0, 1e-12);
        }
    }
}

TEST(statevector, oracle_kernel_examples) {
    std::mt19937_64 rng(13);
    const auto [spec, params] = build_ansatz(5, 9, AnsatzKind::PQC, 4);
    const auto x = testutil::random_features(rng, 9);
    EXPECT_NEAR(oracle_kernel(spec, params, x, x), 1.0, 1e-12);

    const Mat2 xm = rotation_block(BlockKind::X);
    const auto flipped = simulate_state(Circuit{2, {make_matchgate(xm, xm, 1)}});
    const auto vacuum = simulate_state(Circuit{2, {}});
    EXPECT_EQ(std::norm(flipped.amplitudes.dot(vacuum.amplitudes)), 0.0);
}

TEST(statevector, product_state_single_rotation) {
    const CircuitSpec spec = single_ry_spec();
    EncodingParams params;
    params.theta_r = {0.0};
    const std::vector<double> x{1.0};
    const std::vector<double> origin{0.0};
    EXPECT_NEAR(product_state_kernel(spec, params, x, origin), 0.5, 1e-15);
    EXPECT_NEAR(product_state_kernel(spec, params, x, x), 1.0, 1e-15);
}

TEST(statevector, product_state_matches_oracle) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
        const std::size_t chi = 1 + static_cast<std::size_t>(rng() % 24);
        const auto [spec, params] = build_ansatz(n, chi, AnsatzKind::tensor_PQC, rng());
        const auto x = testutil::random_features(rng, chi);
        const auto y = testutil::random_features(rng, chi);
        ASSERT_NEAR(product_state_kernel(spec, params, x, y), oracle_kernel(spec, params, x, y), 1e-10);
    }
}

TEST(statevector, product_state_rejects_coupled_layouts) {
    for (auto kind : {AnsatzKind::tensor_fPQC, AnsatzKind::fPQC, AnsatzKind::PQC}) {
        const auto [spec, params] = build_ansatz(3, 4, kind, 1);
        const std::vector<double> x(4, 0.3);
        EXPECT_THROW(product_state_kernel(spec, params, x, x), ConfigError) << to_string(kind);
    }
}

TEST(statevector, product_state_runs_beyond_oracle_limit) {
    const auto [spec, params] = build_ansatz(40, 64, AnsatzKind::tensor_PQC, 2);
    const std::vector<double> x(64, 0.25);
    EXPECT_NEAR(product_state_kernel(spec, params, x, x), 1.0, 1e-12);
}

TEST(statevector, resource_guards) {
    EXPECT_THROW(simulate_state(Circuit{13, {}}), ConfigError);
    EXPECT_THROW(circuit_unitary(Circuit{7, {}}), ConfigError);
    const auto [spec, params] = build_ansatz(13, 13, AnsatzKind::PQC, 1);
    EXPECT_THROW(KernelEvaluator(spec, params), ConfigError);
    const std::vector<double> x(13, 0.5);
    EXPECT_THROW(oracle_kernel(spec, params, x, x), ConfigError);
}

TEST(statevector, oracle_marginal_examples) {
    const Mat2 x = rotation_block(BlockKind::X);
    const Circuit c{3, {QubitGate{x, 2}}};
    const std::size_t q2[] = {2};
    const int one[] = {1};
    const int zero[] = {0};
    EXPECT_DOUBLE_EQ(oracle_marginal_probability(c, {}, q2, one), 1.0);
    const std::size_t input[] = {2};
    EXPECT_DOUBLE_EQ(oracle_marginal_probability(c, input, q2, zero), 1.0);
}
