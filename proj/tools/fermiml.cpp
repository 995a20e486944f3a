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

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fermiml/cli.hpp"
#include "fermiml/errors.hpp"

namespace {

using namespace fermiml;

struct RawFlags {
    std::string dataset;
    std::string label_col;
    std::string ansatz = "fPQC";
    std::string qubits;
    std::string seeds = "0";
    std::size_t folds = 5;
    double c_reg = 1.0;
    bool scale_per_fold = false;
    std::string out;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool overwrite = false;
    std::size_t subsample = 0;
};

void add_experiment_flags(CLI::App *cmd, RawFlags &f) {
    cmd->add_option("--dataset", f.dataset, "wbc, digits, or a CSV path")->required();
    cmd->add_option("--label-col", f.label_col, "label column name or index (default: last)");
    cmd->add_option("--ansatz", f.ansatz, "comma list of fPQC, hfPQC, tensor_fPQC, PQC, tensor_PQC")
        ->capture_default_str();
    cmd->add_option("--qubits", f.qubits, "qubit counts, e.g. 4,8,16 or 2-8 or 8-64:8")->required();
    cmd->add_option("--seeds", f.seeds, "seed list, same syntax as --qubits")->capture_default_str();
    cmd->add_option("--folds", f.folds, "cross-validation folds")->capture_default_str();
    cmd->add_option("--c-reg", f.c_reg, "SVM regularization C")->capture_default_str();
    cmd->add_flag("--scale-per-fold", f.scale_per_fold, "fit min-max scaling on each training fold");
    cmd->add_option("--out", f.out, "output file or directory");
    cmd->add_option("--threads", f.threads, "worker threads for Gram evaluation")->capture_default_str();
    cmd->add_flag("--overwrite", f.overwrite, "replace existing outputs");
    cmd->add_option("--subsample", f.subsample, "stratified subsample size (0 = all rows)")->capture_default_str();
}

cli::ExperimentConfig to_config(const RawFlags &f) {
    cli::ExperimentConfig c;
    c.dataset = f.dataset;
    if (!f.label_col.empty()) {
        c.label_column = f.label_col;
    }
    c.kinds = cli::parse_kind_list(f.ansatz);
    for (auto q : cli::parse_int_list(f.qubits)) {
        c.qubits.push_back(static_cast<std::size_t>(q));
    }
    c.seeds = cli::parse_int_list(f.seeds);
    c.folds = f.folds;
    c.c_reg = f.c_reg;
    c.scale_per_fold = f.scale_per_fold;
    c.out = f.out;
    c.threads = std::max(1u, f.threads);
    c.overwrite = f.overwrite;
    c.subsample = f.subsample;
    return c;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fermionic quantum kernel classification"};
    app.require_subcommand(1);

    RawFlags kernel_flags;
    auto *kernel = app.add_subcommand("kernel", "compute Gram matrices");
    add_experiment_flags(kernel, kernel_flags);

    RawFlags classify_flags;
    auto *classify = app.add_subcommand("classify", "cross-validated SVM experiments");
    add_experiment_flags(classify, classify_flags);

    cli::VerifyOptions verify_opts;
    std::string verify_seed = "1";
    std::string fault = "none";
    auto *verify = app.add_subcommand("verify", "differential checks against the statevector oracle");
    verify->add_option("--max-qubits", verify_opts.max_qubits, "largest register (2..8)")->capture_default_str();
    verify->add_option("--trials", verify_opts.trials, "random instances per category")->capture_default_str();
    verify->add_option("--seeds", verify_seed, "random seed")->capture_default_str();
    verify->add_option("--inject-fault", fault, "test hook: none or pair-order")
        ->check(CLI::IsMember({"none", "pair-order"}))
        ->capture_default_str();

    cli::BenchOptions bench_opts;
    std::string bench_kinds = "fPQC";
    std::string bench_qubits = "8,16,32,64";
    std::string bench_seed = "0";
    std::string bench_out;
    bool bench_overwrite = false;
    auto *bench = app.add_subcommand("bench", "kernel runtime scaling");
    bench->add_option("--ansatz", bench_kinds, "comma list of kinds")->capture_default_str();
    bench->add_option("--qubits", bench_qubits, "qubit counts")->capture_default_str();
    bench->add_option("--seeds", bench_seed, "random seed")->capture_default_str();
    bench->add_option("--repeats", bench_opts.repeats, "timed repetitions per point")->capture_default_str();
    bench->add_option("--row-points", bench_opts.row_points, "points in a timed Gram row")->capture_default_str();
    bench->add_option("--features", bench_opts.features, "feature count (0 = N)")->capture_default_str();
    bench->add_option("--out", bench_out, "timing CSV (default: stdout)");
    bench->add_flag("--overwrite", bench_overwrite, "replace an existing CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitConfig;
    }

    try {
        if (*kernel) {
            return cli::run_kernel(to_config(kernel_flags), std::cout);
        }
        if (*classify) {
            return cli::run_classify(to_config(classify_flags), std::cout);
        }
        if (*verify) {
            const auto seeds = cli::parse_int_list(verify_seed);
            if (seeds.size() != 1) {
                throw ConfigError("verify takes a single seed");
            }
            verify_opts.seed = seeds.front();
            verify_opts.fault = fault == "pair-order" ? cli::Fault::PairOrderFlip : cli::Fault::None;
            return cli::run_verify(verify_opts, std::cout);
        }
        bench_opts.kinds = cli::parse_kind_list(bench_kinds);
        bench_opts.qubits.clear();
        for (auto q : cli::parse_int_list(bench_qubits)) {
            bench_opts.qubits.push_back(static_cast<std::size_t>(q));
        }
        const auto seeds = cli::parse_int_list(bench_seed);
        bench_opts.seed = seeds.empty() ? 0 : seeds.front();
        return cli::run_bench(bench_opts, bench_out, bench_overwrite, std::cout);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kExitConfig;
    } catch (const DataError &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return cli::kExitData;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return cli::kExitNumerical;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return cli::kExitData;
    }
}
