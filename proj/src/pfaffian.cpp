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

#include "fermiml/pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fermiml/errors.hpp"

namespace fermiml {

SkewSymmetricMatrix::SkewSymmetricMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw ConfigError("Pfaffian input must be square");
    }
    if (m_.rows() % 2 != 0) {
        throw ConfigError("Pfaffian of odd dimension " + std::to_string(m_.rows()) + " requested");
    }
    if (m_.size() > 0) {
        const double skew2 = (m_ + m_.transpose()).cwiseAbs2().maxCoeff();
        if (skew2 > tol * tol) {
            throw ConfigError("matrix is not skew-symmetric (|M + M^T| = " + std::to_string(std::sqrt(skew2)) + ")");
        }
    }
}

// Parlett-Reid on the strictly lower triangle; the upper half is never read.
std::complex<double> pfaffian(const SkewSymmetricMatrix &skew) {
    const Eigen::Index n = skew.dim();
    if (n == 0) {
        return 1.0;
    }
    Eigen::MatrixXcd a = skew.matrix();
    double max2 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            max2 = std::max(max2, std::norm(a(i, j)));
        }
    }
    const double threshold = 1e-13 * std::sqrt(max2);
    std::complex<double> result = 1.0;
    std::vector<std::complex<double>> tau(static_cast<std::size_t>(n));

    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        const Eigen::Index q = k + 1;
        Eigen::Index p = q;
        double best = std::norm(a(q, k));
        for (Eigen::Index i = q + 1; i < n; ++i) {
            const double v = std::norm(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != q) {
            // Symmetric interchange of indices q and p, lower triangle only.
            std::swap(a(q, k), a(p, k));
            for (Eigen::Index j = q + 1; j < p; ++j) {
                const std::complex<double> t = a(j, q);
                a(j, q) = -a(p, j);
                a(p, j) = -t;
            }
            for (Eigen::Index i = p + 1; i < n; ++i) {
                std::swap(a(i, q), a(i, p));
            }
            a(p, q) = -a(p, q);
            result = -result;
        }
        const std::complex<double> pivot = a(q, k);
        if (std::abs(pivot) <= threshold) {
            return 0.0;
        }
        result *= -pivot;
        for (Eigen::Index i = q + 1; i < n; ++i) {
            tau[static_cast<std::size_t>(i)] = a(i, k) / pivot;
        }
        // Rank-2 skew update: a_ij += tau_i a_jq - a_iq tau_j.
        for (Eigen::Index j = q + 1; j < n; ++j) {
            const std::complex<double> tj = tau[static_cast<std::size_t>(j)];
            const std::complex<double> cj = a(j, q);
            std::complex<double> *colj = &a(0, j);
            const std::complex<double> *colq = &a(0, q);
            for (Eigen::Index i = j + 1; i < n; ++i) {
                colj[i] += tau[static_cast<std::size_t>(i)] * cj - colq[i] * tj;
            }
        }
    }
    return result;
}

std::complex<double> pfaffian(const Eigen::MatrixXcd &m) { return pfaffian(SkewSymmetricMatrix(m)); }

}  // namespace fermiml
