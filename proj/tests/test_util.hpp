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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fermiml/circuit.hpp"
#include "fermiml/gates.hpp"
#include "fermiml/kernel.hpp"

namespace fermiml::testutil {

inline Mat2 random_unitary2(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Mat2 g;
    for (int i = 0; i < 4; ++i) {
        g(i / 2, i % 2) = {normal(rng), normal(rng)};
    }
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    return q;
}

/// Haar-ish random matchgate: independent unitaries, odd block rephased so
/// that det A == det W.
inline Matchgate random_matchgate(std::mt19937_64 &rng, std::size_t wire) {
    const Mat2 a = random_unitary2(rng);
    Mat2 w = random_unitary2(rng);
    const double phi = std::arg(a.determinant() / w.determinant()) / 2;
    w *= std::polar(1.0, phi);
    return make_matchgate(a, w, wire);
}

inline Circuit random_matchgate_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t gates) {
    Circuit c;
    c.n_qubits = n;
    std::uniform_int_distribution<std::size_t> wire(1, n - 1);
    for (std::size_t g = 0; g < gates; ++g) {
        c.gates.emplace_back(random_matchgate(rng, wire(rng)));
    }
    return c;
}

inline std::vector<double> random_features(std::mt19937_64 &rng, std::size_t chi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(chi);
    for (auto &v : x) {
        v = u(rng);
    }
    return x;
}

inline FeatureMatrix random_dataset(std::mt19937_64 &rng, std::size_t n, std::size_t chi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(chi));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x.data()[i] = u(rng);
    }
    return x;
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace fermiml::testutil
