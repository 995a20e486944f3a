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

#include "fermiml/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd submatrix(const Eigen::MatrixXd &m, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
        }
    }
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (truth.empty()) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        hits += predicted[i] == truth[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::size_t class_count(std::span<const int> labels) {
    int max_label = -1;
    for (int l : labels) {
        if (l < 0) {
            throw DataError("class labels must be non-negative");
        }
        max_label = std::max(max_label, l);
    }
    return static_cast<std::size_t>(max_label + 1);
}

}  // namespace

SvmModel fit(const Eigen::MatrixXd &k, std::span<const int> y, const SvmOptions &options) {
    const auto n = static_cast<Eigen::Index>(y.size());
    if (k.rows() != n || k.cols() != n) {
        throw ConfigError("svm fit: kernel is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                          " but there are " + std::to_string(n) + " labels");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int label : y) {
        if (label != 1 && label != -1) {
            throw ConfigError("svm fit: labels must be +1 or -1");
        }
        (label > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw DataError("svm fit: both classes must be present");
    }
    const double c = options.c;
    Eigen::VectorXd yd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        yd(i) = y[static_cast<std::size_t>(i)];
    }

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    // Gradient of f(alpha) = 1/2 alpha^T Q alpha - e^T alpha, Q_ij = y_i y_j K_ij.
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
    auto at_upper = [&](Eigen::Index t) { return alpha(t) >= c; };
    auto at_lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };

    const std::size_t max_iter = std::max<std::size_t>(options.max_passes * static_cast<std::size_t>(n), 100);
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        // i: maximal violator in I_up.
        double gmax = -kInf;
        Eigen::Index i = -1;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (yd(t) > 0 ? !at_upper(t) : !at_lower(t)) {
                const double v = -yd(t) * grad(t);
                if (v >= gmax) {
                    gmax = v;
                    i = t;
                }
            }
        }
        // j: second-order choice in I_low.
        double gmax2 = -kInf;
        Eigen::Index j = -1;
        double best = kInf;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (yd(t) > 0 ? at_lower(t) : at_upper(t)) {
                continue;
            }
            const double v = yd(t) * grad(t);
            gmax2 = std::max(gmax2, v);
            if (i < 0) {
                continue;
            }
            const double grad_diff = gmax + v;
            if (grad_diff > 0) {
                double quad = k(i, i) + k(t, t) - 2.0 * k(i, t);
                if (quad <= 0) {
                    quad = kTau;
                }
                const double obj = -(grad_diff * grad_diff) / quad;
                if (obj <= best) {
                    best = obj;
                    j = t;
                }
            }
        }
        if (gmax + gmax2 < options.tolerance || i < 0 || j < 0) {
            break;
        }

        const double old_i = alpha(i);
        const double old_j = alpha(j);
        if (yd(i) != yd(j)) {
            double quad = k(i, i) + k(j, j) + 2.0 * yd(i) * yd(j) * k(i, j);
            if (quad <= 0) {
                quad = kTau;
            }
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = alpha(i) - alpha(j);
            alpha(i) += delta;
            alpha(j) += delta;
            if (diff > 0) {
                if (alpha(j) < 0) {
                    alpha(j) = 0;
                    alpha(i) = diff;
                }
            } else if (alpha(i) < 0) {
                alpha(i) = 0;
                alpha(j) = -diff;
            }
            if (diff > 0) {
                if (alpha(i) > c) {
                    alpha(i) = c;
                    alpha(j) = c - diff;
                }
            } else if (alpha(j) > c) {
                alpha(j) = c;
                alpha(i) = c + diff;
            }
        } else {
            double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
            if (quad <= 0) {
                quad = kTau;
            }
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = alpha(i) + alpha(j);
            alpha(i) -= delta;
            alpha(j) += delta;
            if (sum > c) {
                if (alpha(i) > c) {
                    alpha(i) = c;
                    alpha(j) = sum - c;
                }
            } else if (alpha(j) < 0) {
                alpha(j) = 0;
                alpha(i) = sum;
            }
            if (sum > c) {
                if (alpha(j) > c) {
                    alpha(j) = c;
                    alpha(i) = sum - c;
                }
            } else if (alpha(i) < 0) {
                alpha(i) = 0;
                alpha(j) = sum;
            }
        }
        const double di = (alpha(i) - old_i) * yd(i);
        const double dj = (alpha(j) - old_j) * yd(j);
        grad += yd.cwiseProduct(k.col(i) * di + k.col(j) * dj);
    }

    // Bias from free vectors, or the midpoint of the feasible interval.
    double ub = kInf;
    double lb = -kInf;
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = yd(t) * grad(t);
        if (at_upper(t)) {
            if (yd(t) < 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (at_lower(t)) {
            if (yd(t) > 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2;

    SvmModel model;
    model.alpha = alpha;
    model.coef = alpha.cwiseProduct(yd);
    model.bias = -rho;
    model.c = c;
    model.iterations = iter;
    // grad = Q alpha - e  =>  alpha^T Q alpha = alpha . (grad + e)
    model.dual_objective = alpha.sum() - 0.5 * alpha.dot(grad + Eigen::VectorXd::Ones(n));
    for (Eigen::Index t = 0; t < n; ++t) {
        if (alpha(t) > 0) {
            model.support.push_back(static_cast<std::size_t>(t));
        }
    }
    return model;
}

Eigen::VectorXd decision_function(const SvmModel &model, const Eigen::MatrixXd &k_cross) {
    if (k_cross.cols() != model.coef.size()) {
        throw ConfigError("svm predict: kernel block has " + std::to_string(k_cross.cols()) +
                          " columns, model was trained on " + std::to_string(model.coef.size()) + " points");
    }
    return (k_cross * model.coef).array() + model.bias;
}

std::vector<int> predict(const SvmModel &model, const Eigen::MatrixXd &k_cross) {
    const Eigen::VectorXd d = decision_function(model, k_cross);
    std::vector<int> out(static_cast<std::size_t>(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        out[static_cast<std::size_t>(i)] = d(i) >= 0 ? 1 : -1;
    }
    return out;
}

OneVsRestModel one_vs_rest(const Eigen::MatrixXd &k_train, std::span<const int> labels, const SvmOptions &options) {
    const std::size_t classes = class_count(labels);
    std::vector<bool> present(classes, false);
    for (int l : labels) {
        present[static_cast<std::size_t>(l)] = true;
    }
    if (classes < 2 || std::count(present.begin(), present.end(), true) < 2) {
        throw DataError("one_vs_rest: need at least two classes");
    }
    OneVsRestModel out;
    out.n_classes = classes;
    const std::size_t trained = classes == 2 ? 1 : classes;
    std::vector<int> binary(labels.size());
    for (std::size_t cls = 0; cls < trained; ++cls) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            binary[i] = labels[i] == static_cast<int>(cls) ? 1 : -1;
        }
        out.models.push_back(fit(k_train, binary, options));
    }
    return out;
}

std::vector<int> predict(const OneVsRestModel &model, const Eigen::MatrixXd &k_cross) {
    std::vector<Eigen::VectorXd> scores;
    for (const auto &m : model.models) {
        scores.push_back(decision_function(m, k_cross));
    }
    if (model.n_classes == 2) {
        scores.push_back(-scores.front());
    }
    std::vector<int> out(static_cast<std::size_t>(k_cross.rows()));
    for (Eigen::Index i = 0; i < k_cross.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t cls = 1; cls < scores.size(); ++cls) {
            if (scores[cls](i) > scores[best](i)) {
                best = cls;
            }
        }
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

std::vector<int> stratified_folds(std::span<const int> labels, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) {
        throw ConfigError("cross validation needs at least 2 folds");
    }
    const std::size_t classes = class_count(labels);
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    std::mt19937_64 rng(seed);
    std::vector<int> assignment(labels.size(), -1);
    std::size_t position = 0;
    for (std::size_t cls = 0; cls < classes; ++cls) {
        auto &idx = members[cls];
        if (idx.empty()) {
            continue;
        }
        if (idx.size() < folds) {
            throw DataError("class " + std::to_string(cls) + " has " + std::to_string(idx.size()) +
                            " samples, fewer than " + std::to_string(folds) + " folds");
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i : idx) {
            assignment[i] = static_cast<int>(position++ % folds);
        }
    }
    return assignment;
}

void ExperimentResult::summarize() {
    auto stats = [&](auto field, double &mean, double &sd) {
        mean = 0.0;
        sd = 0.0;
        if (per_fold.empty()) {
            return;
        }
        for (const auto &f : per_fold) {
            mean += f.*field;
        }
        mean /= static_cast<double>(per_fold.size());
        for (const auto &f : per_fold) {
            sd += (f.*field - mean) * (f.*field - mean);
        }
        sd = std::sqrt(sd / static_cast<double>(per_fold.size()));
    };
    stats(&FoldScore::train_accuracy, mean_train, std_train);
    stats(&FoldScore::test_accuracy, mean_test, std_test);
}

FoldScore evaluate_fold(const Eigen::MatrixXd &gram, std::span<const int> labels,
                        std::span<const std::size_t> train, std::span<const std::size_t> test,
                        const SvmOptions &options) {
    std::vector<int> y_train;
    std::vector<int> y_test;
    for (std::size_t i : train) {
        y_train.push_back(labels[i]);
    }
    for (std::size_t i : test) {
        y_test.push_back(labels[i]);
    }
    const Eigen::MatrixXd k_train = submatrix(gram, train, train);
    const OneVsRestModel model = one_vs_rest(k_train, y_train, options);
    FoldScore score;
    score.train_accuracy = accuracy(predict(model, k_train), y_train);
    score.test_accuracy = accuracy(predict(model, submatrix(gram, test, train)), y_test);
    return score;
}

ExperimentResult cross_validate(const Eigen::MatrixXd &gram, std::span<const int> labels, std::size_t folds,
                                std::uint64_t seed, const SvmOptions &options) {
    if (gram.rows() != static_cast<Eigen::Index>(labels.size()) || gram.cols() != gram.rows()) {
        throw ConfigError("cross_validate: Gram matrix does not match label count");
    }
    const std::vector<int> assignment = stratified_folds(labels, folds, seed);
    ExperimentResult result;
    result.seed = seed;
    result.c = options.c;
    result.folds = folds;
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            (assignment[i] == static_cast<int>(f) ? test : train).push_back(i);
        }
        result.per_fold.push_back(evaluate_fold(gram, labels, train, test, options));
    }
    result.summarize();
    return result;
}

nlohmann::json to_json(const ExperimentResult &r) {
    nlohmann::json folds = nlohmann::json::array();
    for (const auto &f : r.per_fold) {
        folds.push_back({{"train_acc", f.train_accuracy}, {"test_acc", f.test_accuracy}});
    }
    return {{"ansatz", r.ansatz},   {"n_qubits", r.n_qubits},     {"seed", r.seed},
            {"dataset", r.dataset}, {"C", r.c},                   {"folds", r.folds},
            {"per_fold", folds},    {"mean_test", r.mean_test},   {"std_test", r.std_test},
            {"mean_train", r.mean_train}, {"std_train", r.std_train}, {"wall_time_s", r.wall_time_s}};
}

ExperimentResult experiment_from_json(const nlohmann::json &j) {
    ExperimentResult r;
    r.ansatz = j.at("ansatz").get<std::string>();
    r.n_qubits = j.at("n_qubits").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.dataset = j.value("dataset", "");
    r.c = j.at("C").get<double>();
    r.folds = j.at("folds").get<std::size_t>();
    for (const auto &f : j.at("per_fold")) {
        r.per_fold.push_back({f.at("train_acc").get<double>(), f.at("test_acc").get<double>()});
    }
    r.mean_test = j.at("mean_test").get<double>();
    r.std_test = j.at("std_test").get<double>();
    r.mean_train = j.at("mean_train").get<double>();
    r.std_train = j.at("std_train").get<double>();
    r.wall_time_s = j.value("wall_time_s", 0.0);
    return r;
}

}  // namespace fermiml
