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
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fermiml/errors.hpp"
#include "fermiml/kernel.hpp"
#include "svm_fixtures.hpp"
#include "test_util.hpp"

using namespace fermiml;
using namespace fermiml::testutil;


TEST(svm, two_points_identity_kernel) {
    const std::vector<int> y{1, -1};
    const SvmModel m = fit(Eigen::MatrixXd::Identity(2, 2), y);
    EXPECT_NEAR(m.alpha(0), 1.0, 1e-9);
    EXPECT_NEAR(m.alpha(1), 1.0, 1e-9);
    EXPECT_EQ(m.support.size(), 2u);
    EXPECT_NEAR(m.bias, 0.0, 1e-12);
}

TEST(svm, separable_one_dimensional) {
    Eigen::VectorXd pts(6);
    pts << -3, -2, -1.5, 1, 2.5, 4;
    const std::vector<int> y{-1, -1, -1, 1, 1, 1};
    const Eigen::MatrixXd k = pts * pts.transpose();
    const SvmModel m = fit(k, y, {.c = 10.0});
    EXPECT_EQ(predict(m, k), y);
}

TEST(svm, xor_with_gaussian_kernel) {
    Eigen::MatrixXd points(4, 2);
    points << 0, 0, 1, 1, 0, 1, 1, 0;
    const std::vector<int> y{1, 1, -1, -1};
    const Eigen::MatrixXd k = gaussian_kernel(points, 1.0);
    const SvmModel m = fit(k, y);
    EXPECT_EQ(predict(m, k), y);
    EXPECT_NEAR(m.dual_objective, brute_force_dual(k, y, 1.0), 1e-4);
    EXPECT_NEAR(m.dual_objective, dual_objective(k, y, m.alpha), 1e-12);
}

TEST(svm, zero_kernel_row_predicts_bias_sign) {
    Eigen::MatrixXd points(5, 1);
    points << 0.0, 0.1, 0.2, 2.0, 2.1;
    const std::vector<int> y{1, 1, 1, -1, -1};
    const SvmModel m = fit(gaussian_kernel(points, 1.0), y, {.c = 0.5});
    const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(1, 5);
    EXPECT_DOUBLE_EQ(decision_function(m, zeros)(0), m.bias);
    EXPECT_EQ(predict(m, zeros)[0], m.bias >= 0 ? 1 : -1);
}

TEST(svm, matches_brute_force_dual) {
    for (const auto &inst : fixture_set()) {
        const SvmModel m = fit(inst.k, inst.y, {.c = inst.c});
        ASSERT_NEAR(m.dual_objective, brute_force_dual(inst.k, inst.y, inst.c), 1e-4)
            << "n=" << inst.y.size() << " C=" << inst.c;
    }
}

TEST(svm, dual_feasibility_and_kkt) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [spec, params] = build_ansatz(6, 5, AnsatzKind::hfPQC, rng());
        const FeatureMatrix x = testutil::random_dataset(rng, 60, 5);
        const Eigen::MatrixXd k = gram_matrix(spec, params, x);
        std::vector<int> y(60);
        for (Eigen::Index i = 0; i < 60; ++i) {
            y[static_cast<std::size_t>(i)] = x(i, 0) + x(i, 1) > 1.0 ? 1 : -1;
        }
        const double c = trial % 2 ? 1.0 : 5.0;
        const SvmModel m = fit(k, y, {.c = c});
        ASSERT_GE(m.alpha.minCoeff(), 0.0);
        ASSERT_LE(m.alpha.maxCoeff(), c);
        double balance = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            balance += m.alpha(static_cast<Eigen::Index>(i)) * y[i];
        }
        ASSERT_LT(std::abs(balance), 1e-6);
        // Maximal violating pair gap: m(alpha) - M(alpha) over I_up / I_low.
        Eigen::VectorXd yd(60);
        for (Eigen::Index i = 0; i < 60; ++i) {
            yd(i) = y[static_cast<std::size_t>(i)];
        }
        const Eigen::VectorXd grad = yd.asDiagonal() * k * yd.asDiagonal() * m.alpha - Eigen::VectorXd::Ones(60);
        double up = -1e300;
        double low = 1e300;
        for (Eigen::Index t = 0; t < 60; ++t) {
            const double v = -yd(t) * grad(t);
            const bool in_up = yd(t) > 0 ? m.alpha(t) < c : m.alpha(t) > 0;
            const bool in_low = yd(t) > 0 ? m.alpha(t) > 0 : m.alpha(t) < c;
            if (in_up) {
                up = std::max(up, v);
            }
            if (in_low) {
                low = std::min(low, v);
            }
        }
        ASSERT_LT(up - low, 1e-3);
    }
}

TEST(svm, fit_rejects_bad_input) {
    const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
    const std::vector<int> two{1, -1};
    EXPECT_THROW(fit(k, two), ConfigError);
    const std::vector<int> bad{1, 0, -1};
    EXPECT_THROW(fit(k, bad), ConfigError);
    const std::vector<int> single{1, 1, 1};
    EXPECT_THROW(fit(k, single), DataError);
    const std::vector<int> ok{1, -1, 1};
    const SvmModel m = fit(k, ok);
    EXPECT_THROW(predict(m, Eigen::MatrixXd::Zero(1, 2)), ConfigError);
}

TEST(svm, fit_is_deterministic) {
    const auto inst = fixture_set()[7];
    const SvmModel a = fit(inst.k, inst.y, {.c = inst.c});
    const SvmModel b = fit(inst.k, inst.y, {.c = inst.c});
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.bias, b.bias);
}

TEST(svm, two_class_ovr_equals_binary) {
    std::mt19937_64 rng(43);
    const auto [spec, params] = build_ansatz(4, 3, AnsatzKind::fPQC, 3);
    const FeatureMatrix x = testutil::random_dataset(rng, 30, 3);
    const Eigen::MatrixXd k = gram_matrix(spec, params, x);
    std::vector<int> labels(30);
    std::vector<int> binary(30);
    for (Eigen::Index i = 0; i < 30; ++i) {
        labels[static_cast<std::size_t>(i)] = x(i, 2) > 0.5 ? 1 : 0;
        binary[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(i)] == 0 ? 1 : -1;
    }
    const OneVsRestModel ovr = one_vs_rest(k, labels);
    ASSERT_EQ(ovr.models.size(), 1u);
    const auto multi = predict(ovr, k);
    const auto single = predict(fit(k, binary), k);
    for (std::size_t i = 0; i < 30; ++i) {
        // Exact-zero decisions go to class 0 in both schemes.
        EXPECT_EQ(multi[i], single[i] == 1 ? 0 : 1);
    }
}

TEST(svm, three_clusters_fit_perfectly) {
    Eigen::MatrixXd points(12, 2);
    std::vector<int> labels;
    const double centers[3][2] = {{0, 0}, {3, 0}, {0, 3}};
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (int i = 0; i < 12; ++i) {
        points(i, 0) = centers[i % 3][0] + jitter(rng);
        points(i, 1) = centers[i % 3][1] + jitter(rng);
        labels.push_back(i % 3);
    }
    const Eigen::MatrixXd k = gaussian_kernel(points, 1.0);
    const OneVsRestModel ovr = one_vs_rest(k, labels);
    EXPECT_EQ(ovr.models.size(), 3u);
    EXPECT_EQ(predict(ovr, k), labels);
}

TEST(svm, ten_classes_train_ten_models) {
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        labels.push_back(i % 10);
    }
    std::mt19937_64 rng(45);
    const auto [spec, params] = build_ansatz(4, 4, AnsatzKind::tensor_fPQC, 1);
    const Eigen::MatrixXd k = gram_matrix(spec, params, testutil::random_dataset(rng, 40, 4));
    const OneVsRestModel ovr = one_vs_rest(k, labels);
    EXPECT_EQ(ovr.models.size(), 10u);
    EXPECT_EQ(ovr.n_classes, 10u);
    for (int p : predict(ovr, k)) {
        EXPECT_GE(p, 0);
        EXPECT_LT(p, 10);
    }
}

TEST(svm, ovr_ties_go_to_smallest_class) {
    OneVsRestModel ovr;
    ovr.n_classes = 3;
    for (int cls = 0; cls < 3; ++cls) {
        SvmModel m;
        m.coef = Eigen::VectorXd::Zero(2);
        m.bias = cls == 0 ? -1.0 : 0.5;
        ovr.models.push_back(m);
    }
    EXPECT_EQ(predict(ovr, Eigen::MatrixXd::Zero(1, 2))[0], 1);
}

TEST(svm, ovr_rejects_single_class) {
    const std::vector<int> labels{2, 2, 2};
    EXPECT_THROW(one_vs_rest(Eigen::MatrixXd::Identity(3, 3), labels), DataError);
}

TEST(svm, ten_samples_five_folds) {
    const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    const auto folds = stratified_folds(labels, 5, 3);
    for (int f = 0; f < 5; ++f) {
        int zeros = 0;
        int ones = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (folds[i] == f) {
                (labels[i] == 0 ? zeros : ones)++;
            }
        }
        EXPECT_EQ(zeros, 1);
        EXPECT_EQ(ones, 1);
    }
}

TEST(svm, folds_are_stratified_disjoint_cover) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t classes = 2 + rng() % 9;
        const std::size_t k = 2 + rng() % 6;
        std::vector<int> labels;
        std::vector<std::size_t> counts(classes);
        for (std::size_t c = 0; c < classes; ++c) {
            counts[c] = k + rng() % 40;
            labels.insert(labels.end(), counts[c], static_cast<int>(c));
        }
        std::shuffle(labels.begin(), labels.end(), rng);
        const auto folds = stratified_folds(labels, k, rng());
        ASSERT_EQ(folds.size(), labels.size());
        std::vector<std::vector<std::size_t>> per(k, std::vector<std::size_t>(classes, 0));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ASSERT_GE(folds[i], 0);
            ASSERT_LT(folds[i], static_cast<int>(k));
            per[static_cast<std::size_t>(folds[i])][static_cast<std::size_t>(labels[i])]++;
        }
        for (std::size_t f = 0; f < k; ++f) {
            for (std::size_t c = 0; c < classes; ++c) {
                const double proportional = static_cast<double>(counts[c]) / static_cast<double>(k);
                ASSERT_LE(std::abs(static_cast<double>(per[f][c]) - proportional), 1.0);
            }
        }
    }
}

TEST(svm, folds_reject_small_classes) {
    const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1};
    EXPECT_THROW(stratified_folds(labels, 5, 1), DataError);
    EXPECT_THROW(stratified_folds(labels, 1, 1), ConfigError);
}

TEST(svm, cross_validate_separable_and_deterministic) {
    Eigen::MatrixXd points(40, 1);
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        points(i, 0) = i < 20 ? 0.05 * i : 5.0 + 0.05 * i;
        labels.push_back(i < 20 ? 0 : 1);
    }
    const Eigen::MatrixXd k = gaussian_kernel(points, 0.5);
    const ExperimentResult a = cross_validate(k, labels, 5, 17);
    EXPECT_EQ(a.per_fold.size(), 5u);
    EXPECT_DOUBLE_EQ(a.mean_test, 1.0);
    EXPECT_DOUBLE_EQ(a.std_test, 0.0);
    const ExperimentResult b = cross_validate(k, labels, 5, 17);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(svm, summary_uses_population_std) {
    ExperimentResult r;
    r.per_fold = {{1.0, 0.5}, {1.0, 1.0}};
    r.summarize();
    EXPECT_DOUBLE_EQ(r.mean_test, 0.75);
    EXPECT_DOUBLE_EQ(r.std_test, 0.25);
    EXPECT_DOUBLE_EQ(r.std_train, 0.0);
}

TEST(svm, result_json_round_trip) {
    ExperimentResult r;
    r.ansatz = "hfPQC";
    r.n_qubits = 8;
    r.seed = 3;
    r.dataset = "wbc";
    r.c = 1.0;
    r.folds = 2;
    r.per_fold = {{0.98, 0.9}, {0.97, 0.95}};
    r.summarize();
    r.wall_time_s = 1.5;
    const auto j = to_json(r);
    for (const char *key : {"ansatz", "n_qubits", "seed", "C", "folds", "per_fold", "mean_test", "std_test",
                            "mean_train", "std_train", "wall_time_s"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j["per_fold"][0].contains("train_acc"));
    EXPECT_EQ(to_json(experiment_from_json(j)), j);
}
