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

#include <Eigen/Dense>

namespace fermiml {

inline constexpr double kSkewTolerance = 1e-10;

/// Validated complex skew-symmetric matrix of even dimension.
class SkewSymmetricMatrix {
  public:
    /// Throws ConfigError on odd dimension, non-square input, or
    /// max |M + M^T| > tol.
    explicit SkewSymmetricMatrix(Eigen::MatrixXcd m, double tol = kSkewTolerance);

    const Eigen::MatrixXcd &matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Eigen::MatrixXcd m_;
};

/// Pfaffian by Parlett-Reid skew tridiagonalization with partial pivoting,
/// O(n^3). The empty matrix has Pfaffian 1. A pivot smaller than
/// 1e-13 * max|M| is treated as exact singularity and yields 0.
std::complex<double> pfaffian(const SkewSymmetricMatrix &m);

/// Convenience overload that validates `m` first.
std::complex<double> pfaffian(const Eigen::MatrixXcd &m);

}  // namespace fermiml
