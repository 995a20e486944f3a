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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace fermiml {

struct SvmOptions {
    double c = 1.0;
    double tolerance = 1e-3;       // KKT violation at termination
    std::size_t max_passes = 10000;  // iteration cap = max_passes * n_train
};

/// Binary soft-margin SVM on a precomputed kernel.
/// decision(x) = sum_i coef_i K(x, x_i) + bias with coef_i = alpha_i y_i.
struct SvmModel {
    Eigen::VectorXd alpha;
    Eigen::VectorXd coef;
    double bias = 0.0;
    std::vector<std::size_t> support;
    double c = 1.0;
    double dual_objective = 0.0;  // sum alpha - 1/2 alpha^T Q alpha
    std::size_t iterations = 0;
};

/// SMO with second-order working-set selection. Labels must be +1/-1 with
/// both classes present. Deterministic: no randomness in pair selection.
SvmModel fit(const Eigen::MatrixXd &k_train, std::span<const int> y, const SvmOptions &options = {});

/// Decision values for a test x train kernel block.
Eigen::VectorXd decision_function(const SvmModel &model, const Eigen::MatrixXd &k_cross);

/// sign(decision), with exact zeros mapped to +1.
std::vector<int> predict(const SvmModel &model, const Eigen::MatrixXd &k_cross);

/// One binary model per class (class vs rest). With two classes a single
/// model (class 0 positive) is trained and class 1 uses the negated decision.
struct OneVsRestModel {
    std::vector<SvmModel> models;
    std::size_t n_classes = 0;
};

/// Labels in 0..C-1, at least two distinct classes.
OneVsRestModel one_vs_rest(const Eigen::MatrixXd &k_train, std::span<const int> labels,
                           const SvmOptions &options = {});

/// argmax over per-class decision values; ties go to the smallest class index.
std::vector<int> predict(const OneVsRestModel &model, const Eigen::MatrixXd &k_cross);

/// Stratified assignment of every sample to a fold in [0, folds). Each
/// class is shuffled with the seeded generator and dealt round-robin, the
/// dealing position carrying over between classes. Throws DataError if a
/// class has fewer samples than folds.
std::vector<int> stratified_folds(std::span<const int> labels, std::size_t folds, std::uint64_t seed);

struct FoldScore {
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct ExperimentResult {
    std::string ansatz;
    std::size_t n_qubits = 0;
    std::uint64_t seed = 0;
    std::string dataset;
    double c = 1.0;
    std::size_t folds = 0;
    std::vector<FoldScore> per_fold;
    double mean_train = 0.0;
    double std_train = 0.0;
    double mean_test = 0.0;
    double std_test = 0.0;
    double wall_time_s = 0.0;

    /// Recomputes mean/std (population) from per_fold.
    void summarize();
};

/// Trains one-vs-rest on `train` indices and scores on train and `test`.
FoldScore evaluate_fold(const Eigen::MatrixXd &gram, std::span<const int> labels,
                        std::span<const std::size_t> train, std::span<const std::size_t> test,
                        const SvmOptions &options = {});

/// Stratified k-fold CV on a precomputed Gram matrix.
ExperimentResult cross_validate(const Eigen::MatrixXd &gram, std::span<const int> labels, std::size_t folds,
                                std::uint64_t seed, const SvmOptions &options = {});

nlohmann::json to_json(const ExperimentResult &result);
ExperimentResult experiment_from_json(const nlohmann::json &j);

}  // namespace fermiml
