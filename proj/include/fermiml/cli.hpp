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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermiml/circuit.hpp"
#include "fermiml/dataset.hpp"
#include "fermiml/kernel.hpp"
#include "fermiml/svm.hpp"

namespace fermiml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

struct ExperimentConfig {
    std::string dataset;
    LabelColumn label_column = -1;
    std::vector<AnsatzKind> kinds{AnsatzKind::fPQC};
    std::vector<std::size_t> qubits;
    std::vector<std::uint64_t> seeds{0};
    std::size_t folds = 5;
    double c_reg = 1.0;
    bool scale_per_fold = false;
    std::filesystem::path out;
    unsigned threads = 1;
    bool overwrite = false;
    std::size_t subsample = 0;  // 0 keeps every row
};

/// "4,8,16", "2-8", "8-64:8" or any comma-separated mix.
std::vector<std::uint64_t> parse_int_list(std::string_view text);
std::vector<AnsatzKind> parse_kind_list(std::string_view text);

/// "wbc" and "digits" name the bundled datasets; anything else is a path.
std::filesystem::path resolve_dataset(std::string_view name);

/// Throws ConfigError on qubit counts below 2, oracle-backed kinds above
/// the statevector limit, too few folds, or a non-positive C.
void validate(const ExperimentConfig &config);

/// Loads the configured dataset (optionally subsampled). Features are
/// min-max scaled on the full dataset unless scale_per_fold is set.
Dataset load_dataset(const ExperimentConfig &config);

/// One (kind, N, seed) cross-validation cell.
ExperimentResult classify_one(const Dataset &ds, AnsatzKind kind, std::size_t n_qubits, std::uint64_t seed,
                              const ExperimentConfig &config);

nlohmann::json gram_header(const Dataset &ds, AnsatzKind kind, std::size_t n_qubits, std::uint64_t seed);

std::vector<ExperimentResult> read_results(const std::filesystem::path &path);
std::string summary_table(const std::vector<ExperimentResult> &results);
void write_plot_csv(std::ostream &out, const std::vector<ExperimentResult> &results);
std::filesystem::path plot_path(const std::filesystem::path &results_path);

int run_kernel(const ExperimentConfig &config, std::ostream &log);
int run_classify(const ExperimentConfig &config, std::ostream &log);

enum class Fault : std::uint8_t { None, PairOrderFlip };

struct VerifyOptions {
    std::size_t max_qubits = 8;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    Fault fault = Fault::None;
};

struct VerifyCategory {
    std::string name;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::optional<nlohmann::json> failing_case;  // smallest failing instance
    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    std::vector<VerifyCategory> categories;
    bool passed() const;
};

VerifyReport verify(const VerifyOptions &options);
int run_verify(const VerifyOptions &options, std::ostream &log);

struct BenchOptions {
    std::vector<AnsatzKind> kinds{AnsatzKind::fPQC};
    std::vector<std::size_t> qubits{8, 16, 32, 64};
    std::size_t repeats = 5;
    std::size_t row_points = 32;
    std::size_t features = 0;  // 0 matches the qubit count
    std::uint64_t seed = 0;
};

struct BenchRow {
    AnsatzKind kind;
    std::size_t n_qubits;
    std::size_t features;
    double median_kernel_s;
    double median_row_s;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    /// Least-squares exponent b of t = a N^b per kind (kernel medians).
    std::vector<std::pair<AnsatzKind, double>> exponents;
};

double fit_power_law(const std::vector<double> &n, const std::vector<double> &t);
BenchReport bench(const BenchOptions &options);
int run_bench(const BenchOptions &options, const std::filesystem::path &out, bool overwrite, std::ostream &log);

}  // namespace fermiml::cli
