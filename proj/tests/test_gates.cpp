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

#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "fermiml/errors.hpp"
#include "fermiml/statevector.hpp"
#include "test_util.hpp"

using namespace fermiml;

namespace {

const cplx I1{0.0, 1.0};

Eigen::MatrixXcd c_op(std::size_t mu, std::size_t n) { return majorana_pauli_string(mu, n).to_matrix(); }

// Two-site Pauli product P_k Q_{k+1} embedded in N qubits.
Eigen::MatrixXcd pair_op(Pauli p, Pauli q, std::size_t k, std::size_t n) {
    PauliString s;
    s.ops.assign(n, Pauli::I);
    s.ops[k - 1] = p;
    s.ops[k] = q;
    return s.to_matrix();
}

}  // namespace

TEST(gates, make_matchgate_identity) {
    const auto g = make_matchgate(Mat2::Identity(), Mat2::Identity(), 1);
    EXPECT_TRUE(matchgate_unitary(g).isApprox(Mat4::Identity()));
}

TEST(gates, make_matchgate_zx) {
    const auto g = make_matchgate(rotation_block(BlockKind::Z), rotation_block(BlockKind::X), 1);
    Mat4 expected;
    expected << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1;
    EXPECT_EQ(matchgate_unitary(g), expected);
}

TEST(gates, make_matchgate_rejects_determinant_mismatch) {
    EXPECT_THROW(make_matchgate(rotation_block(BlockKind::Z), Mat2::Identity(), 1), ConfigError);
}

TEST(gates, make_matchgate_rejects_non_unitary) {
    Mat2 a = Mat2::Identity() * 2.0;
    Mat2 w = Mat2::Identity();
    w(0, 0) = 4.0;
    EXPECT_THROW(make_matchgate(a, w, 1), ConfigError);
    EXPECT_THROW(make_matchgate(Mat2::Identity(), Mat2::Identity(), 0), ConfigError);
}

TEST(gates, unitary_of_xx_is_kronecker_product) {
    const Mat2 x = rotation_block(BlockKind::X);
    const Mat4 kron = Eigen::kroneckerProduct(x, x);
    EXPECT_EQ(matchgate_unitary(make_matchgate(x, x, 1)), kron);
}

TEST(gates, ry_zero_matchgate_is_identity) {
    const Mat2 r = rotation_block(BlockKind::Ry, 0.0);
    EXPECT_TRUE(matchgate_unitary(make_matchgate(r, r, 3)).isApprox(Mat4::Identity()));
}

TEST(gates, rotation_blocks_match_matrix_exponential) {
    Mat2 pauli_y;
    pauli_y << 0, -I1, I1, 0;
    const Mat2 pauli_z = rotation_block(BlockKind::Z);
    for (double theta : {0.0, 0.3, 1.0, std::numbers::pi, 2.5}) {
        const Mat2 ry = (Mat2(-I1 * theta / 2.0 * pauli_y)).exp();
        const Mat2 rz = (Mat2(-I1 * theta / 2.0 * pauli_z)).exp();
        EXPECT_LT(testutil::max_abs_diff(rotation_block(BlockKind::Ry, theta), ry), 1e-14) << theta;
        EXPECT_LT(testutil::max_abs_diff(rotation_block(BlockKind::Rz, theta), rz), 1e-14) << theta;
    }
    Mat2 rz_pi;
    rz_pi << -I1, 0, 0, I1;
    EXPECT_LT(testutil::max_abs_diff(rotation_block(BlockKind::Rz, std::numbers::pi), rz_pi), 1e-15);
    EXPECT_TRUE(rotation_block(BlockKind::Ry, 0.0).isApprox(Mat2::Identity()));
    Mat2 h;
    h << 1, 1, 1, -1;
    EXPECT_LT(testutil::max_abs_diff(rotation_block(BlockKind::H), h / std::sqrt(2.0)), 1e-15);
}

TEST(gates, rotation_block_angle_arity) {
    EXPECT_THROW(rotation_block(BlockKind::Ry), ConfigError);
    EXPECT_THROW(rotation_block(BlockKind::H, 0.5), ConfigError);
}

TEST(gates, majorana_pauli_strings) {
    EXPECT_EQ(majorana_pauli_string(1, 2).str(), "+XI");
    EXPECT_EQ(majorana_pauli_string(2, 2).str(), "+YI");
    EXPECT_EQ(majorana_pauli_string(3, 2).str(), "+ZX");
    EXPECT_EQ(majorana_pauli_string(4, 2).str(), "+ZY");
    EXPECT_EQ(majorana_pauli_string(6, 4).str(), "+ZZYI");
    EXPECT_THROW(majorana_pauli_string(0, 2), ConfigError);
    EXPECT_THROW(majorana_pauli_string(5, 2), ConfigError);
}

TEST(gates, majorana_anticommutation) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto dim = static_cast<Eigen::Index>(1) << n;
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
        for (std::size_t mu = 1; mu <= 2 * n; ++mu) {
            for (std::size_t nu = 1; nu <= 2 * n; ++nu) {
                const Eigen::MatrixXcd a = c_op(mu, n);
                const Eigen::MatrixXcd b = c_op(nu, n);
                const Eigen::MatrixXcd expected = mu == nu ? Eigen::MatrixXcd(2.0 * id) : Eigen::MatrixXcd::Zero(dim, dim);
                EXPECT_LT(testutil::max_abs_diff(a * b + b * a, expected), 1e-14) << mu << "," << nu;
            }
        }
    }
}

TEST(gates, six_generator_identities) {
    for (std::size_t n : {2u, 3u}) {
        for (std::size_t k = 1; k < n; ++k) {
            auto c = [&](std::size_t mu) { return c_op(mu, n); };
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::Z, Pauli::I, k, n), -I1 * c(2 * k - 1) * c(2 * k)), 1e-14);
            // X_k X_{k+1} carries -i: (Y Z) X = i X X, so the +i form contradicts the other five.
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::X, Pauli::X, k, n), -I1 * c(2 * k) * c(2 * k + 1)), 1e-14);
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::Y, Pauli::Y, k, n), I1 * c(2 * k - 1) * c(2 * k + 2)), 1e-14);
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::Y, Pauli::X, k, n), I1 * c(2 * k - 1) * c(2 * k + 1)), 1e-14);
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::X, Pauli::Y, k, n), -I1 * c(2 * k) * c(2 * k + 2)), 1e-14);
            EXPECT_LT(testutil::max_abs_diff(pair_op(Pauli::I, Pauli::Z, k, n), -I1 * c(2 * k + 1) * c(2 * k + 2)), 1e-14);
        }
    }
}

TEST(gates, generator_products_are_consistent) {
    // (X X)(Y Y) = -Z Z independently of any Majorana sign convention.
    const std::size_t n = 2;
    const Eigen::MatrixXcd xx = pair_op(Pauli::X, Pauli::X, 1, n);
    const Eigen::MatrixXcd yy = pair_op(Pauli::Y, Pauli::Y, 1, n);
    const Eigen::MatrixXcd zz = pair_op(Pauli::Z, Pauli::Z, 1, n);
    EXPECT_LT(testutil::max_abs_diff(xx * yy, -zz), 1e-15);
    const Eigen::MatrixXcd prod = c_op(1, n) * c_op(2, n) * c_op(3, n) * c_op(4, n);
    EXPECT_LT(testutil::max_abs_diff(zz, -prod), 1e-15);
    EXPECT_LT(testutil::max_abs_diff(xx * yy, prod), 1e-15);
}

TEST(gates, single_gate_transfer_examples) {
    EXPECT_TRUE(single_gate_transfer(make_matchgate(Mat2::Identity(), Mat2::Identity(), 1)).isApprox(RealMat4::Identity()));

    const Mat2 z = rotation_block(BlockKind::Z);
    const Mat2 x = rotation_block(BlockKind::X);
    RealMat4 zz_expected = Eigen::Vector4d(-1, -1, 1, 1).asDiagonal();
    RealMat4 xx_expected = Eigen::Vector4d(1, -1, -1, 1).asDiagonal();
    const auto zz = make_matchgate(z, z, 1);
    const auto xx = make_matchgate(x, x, 1);
    EXPECT_LT((single_gate_transfer(zz) - zz_expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((single_gate_transfer(xx) - xx_expected).cwiseAbs().maxCoeff(), 1e-15);

    // Independent route: dense conjugation through the statevector oracle.
    for (const auto &g : {zz, xx}) {
        const Circuit c{2, {g}};
        EXPECT_LT((brute_force_transfer(c).r - Eigen::MatrixXd(single_gate_transfer(g))).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(gates, random_matchgates_have_orthogonal_transfer_blocks) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matchgate g = testutil::random_matchgate(rng, 1);
        EXPECT_LE(std::abs(g.even_block().determinant() - g.odd_block().determinant()), 1e-12);
        const RealMat4 r = single_gate_transfer(g);
        ASSERT_LT((r * r.transpose() - RealMat4::Identity()).cwiseAbs().maxCoeff(), 1e-10);
        ASSERT_LT(std::abs(std::abs(r.determinant()) - 1.0), 1e-10);
    }
}
