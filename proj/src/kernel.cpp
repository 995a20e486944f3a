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

#include "fermiml/kernel.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "fermiml/contraction.hpp"
#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

AngleVector angles_for(std::span<const double> x, const EncodingParams &params, const CircuitSpec &spec) {
    // An empty circuit has nothing to encode (chi = 0).
    if (spec.num_params == 0) {
        return {};
    }
    return encode_angles(x, params, spec);
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// processed exactly once and writes only its own outputs.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

KernelBackend backend_for(AnsatzKind kind) {
    if (is_fermionic(kind)) {
        return KernelBackend::Matchgate;
    }
    return kind == AnsatzKind::tensor_PQC ? KernelBackend::ProductState : KernelBackend::StateVector;
}

KernelEvaluator::KernelEvaluator(CircuitSpec spec, EncodingParams params)
    : spec_(std::move(spec)), params_(std::move(params)), backend_(backend_for(spec_.kind)) {
    if (backend_ == KernelBackend::StateVector && spec_.n_qubits > kMaxStateQubits) {
        throw ConfigError(std::string(to_string(spec_.kind)) + " needs the statevector oracle, limited to " +
                          std::to_string(kMaxStateQubits) + " qubits");
    }
}

KernelEvaluator::Embedding KernelEvaluator::embed(std::span<const double> x) const {
    const AngleVector angles = angles_for(x, params_, spec_);
    switch (backend_) {
        case KernelBackend::Matchgate:
            return compile_transfer(spec_, angles);
        case KernelBackend::ProductState:
            return product_state(spec_, angles);
        case KernelBackend::StateVector:
            return simulate_state(spec_, angles);
    }
    throw ConfigError("unknown kernel backend");
}

double KernelEvaluator::overlap(const Embedding &a, const Embedding &b) const {
    switch (backend_) {
        case KernelBackend::Matchgate:
            return vacuum_probability(compose(std::get<TransferMatrix>(a), adjoint_transfer(std::get<TransferMatrix>(b))));
        case KernelBackend::ProductState: {
            const auto &qa = std::get<std::vector<Eigen::Vector2cd>>(a);
            const auto &qb = std::get<std::vector<Eigen::Vector2cd>>(b);
            double value = 1.0;
            for (std::size_t q = 0; q < qa.size(); ++q) {
                value *= std::norm(qb[q].dot(qa[q]));
            }
            return value;
        }
        case KernelBackend::StateVector:
            return std::norm(std::get<StateVector>(b).amplitudes.dot(std::get<StateVector>(a).amplitudes));
    }
    throw ConfigError("unknown kernel backend");
}

double KernelEvaluator::operator()(std::span<const double> x, std::span<const double> x_prime) const {
    if (x.size() != x_prime.size()) {
        throw ConfigError("kernel: feature vectors differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(x_prime.size()) + ")");
    }
    return overlap(embed(x), embed(x_prime));
}

double kernel_value(const CircuitSpec &spec, const EncodingParams &params, std::span<const double> x,
                    std::span<const double> x_prime) {
    if (backend_for(spec.kind) == KernelBackend::StateVector) {
        throw ConfigError("kernel_value: PQC runs on the statevector oracle only (use oracle_kernel)");
    }
    return KernelEvaluator(spec, params)(x, x_prime);
}

GramMatrix gram_matrix(const CircuitSpec &spec, const EncodingParams &params, const FeatureMatrix &x,
                       unsigned threads) {
    const auto n = static_cast<std::size_t>(x.rows());
    if (n == 0) {
        throw DataError("gram_matrix: empty dataset");
    }
    const KernelEvaluator kernel(spec, params);
    std::vector<KernelEvaluator::Embedding> embeddings(n);
    parallel_for(n, threads, [&](std::size_t i) { embeddings[i] = kernel.embed(row_span(x, static_cast<Eigen::Index>(i))); });

    GramMatrix gram = GramMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = kernel.overlap(embeddings[i], embeddings[j]);
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
            gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
        }
    });
    return gram;
}

Eigen::MatrixXd cross_gram_matrix(const CircuitSpec &spec, const EncodingParams &params, const FeatureMatrix &rows,
                                  const FeatureMatrix &cols, unsigned threads) {
    if (rows.cols() != cols.cols()) {
        throw ConfigError("cross_gram_matrix: feature counts differ");
    }
    const KernelEvaluator kernel(spec, params);
    const auto nr = static_cast<std::size_t>(rows.rows());
    const auto nc = static_cast<std::size_t>(cols.rows());
    std::vector<KernelEvaluator::Embedding> col_embeddings(nc);
    parallel_for(nc, threads, [&](std::size_t j) { col_embeddings[j] = kernel.embed(row_span(cols, static_cast<Eigen::Index>(j))); });
    Eigen::MatrixXd out(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc));
    parallel_for(nr, threads, [&](std::size_t i) {
        const auto e = kernel.embed(row_span(rows, static_cast<Eigen::Index>(i)));
        for (std::size_t j = 0; j < nc; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kernel.overlap(e, col_embeddings[j]);
        }
    });
    return out;
}

void write_gram_csv(std::ostream &out, const GramMatrix &gram) {
    char buf[32];
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            const int len = std::snprintf(buf, sizeof buf, "%.17g", gram(i, j));
            out.write(buf, len);
        }
        out << '\n';
    }
}

GramMatrix read_gram_csv(std::istream &in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        const char *p = line.data();
        const char *end = line.data() + line.size();
        while (p < end) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc()) {
                throw DataError("gram csv: bad number in row " + std::to_string(rows.size() + 1));
            }
            row.push_back(v);
            p = (next < end && *next == ',') ? next + 1 : next;
        }
        rows.push_back(std::move(row));
    }
    GramMatrix gram(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw DataError("gram csv: row " + std::to_string(i + 1) + " has wrong length");
        }
        for (std::size_t j = 0; j < rows.size(); ++j) {
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return gram;
}

}  // namespace fermiml
