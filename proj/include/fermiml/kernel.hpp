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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fermiml/circuit.hpp"
#include "fermiml/statevector.hpp"
#include "fermiml/transfer.hpp"

namespace fermiml {

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GramMatrix = Eigen::MatrixXd;

inline std::span<const double> row_span(const FeatureMatrix &x, Eigen::Index i) {
    return {x.row(i).data(), static_cast<std::size_t>(x.cols())};
}

/// Fidelity kernel via the matchgate route: the transfer matrix of
/// U^dag(x') U(x) is R(x) R(x')^T and the kernel is its vacuum probability.
/// tensor_PQC circuits use the exact product-state evaluation instead.
/// Throws ConfigError for PQC (oracle only) and mismatched feature lengths.
double kernel_value(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                    std::span<const double> x_prime);

/// Which evaluator backs a given ansatz kind.
enum class KernelBackend : std::uint8_t { Matchgate, ProductState, StateVector };

KernelBackend backend_for(AnsatzKind kind);

/// Kernel evaluation split into a per-point embedding (compiled transfer
/// matrix, dense state, or per-qubit states) and a pairwise overlap, so Gram
/// rows reuse each compilation.
class KernelEvaluator {
  public:
    using Embedding = std::variant<TransferMatrix, StateVector, std::vector<Eigen::Vector2cd>>;

    KernelEvaluator(CircuitSpec spec, EncodingParams params);

    KernelBackend backend() const { return backend_; }
    const CircuitSpec &spec() const { return spec_; }

    Embedding embed(std::span<const double> x) const;
    double overlap(const Embedding &a, const Embedding &b) const;
    double operator()(std::span<const double> x, std::span<const double> x_prime) const;

  private:
    CircuitSpec spec_;
    EncodingParams params_;
    KernelBackend backend_;
};

/// Symmetric Gram matrix of a dataset. The diagonal is set to 1 and only the
/// upper triangle is evaluated; rows are handed out to `threads` workers.
/// The result does not depend on the thread count.
GramMatrix gram_matrix(const CircuitSpec &spec, const EncodingParams &params, const FeatureMatrix &x,
                       unsigned threads = 1);

/// Cross-kernel block K[i, j] = k(rows_i, cols_j).
Eigen::MatrixXd cross_gram_matrix(const CircuitSpec &spec, const EncodingParams &params, const FeatureMatrix &rows,
                                  const FeatureMatrix &cols, unsigned threads = 1);

/// Full matrix, row-major, comma-separated, 17 significant digits.
void write_gram_csv(std::ostream &out, const GramMatrix &gram);
GramMatrix read_gram_csv(std::istream &in);

}  // namespace fermiml
