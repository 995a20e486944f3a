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

#include "fermiml/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "fermiml/contraction.hpp"
#include "fermiml/errors.hpp"
#include "fermiml/pfaffian.hpp"
#include "fermiml/statevector.hpp"
#include "fermiml/transfer.hpp"

#ifndef FERMIML_DATA_DIR
#define FERMIML_DATA_DIR "data"
#endif

namespace fermiml::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::uint64_t parse_uint(const std::string &token, std::string_view whole) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw ConfigError("cannot parse '" + std::string(whole) + "' as a list of non-negative integers");
    }
    return v;
}

std::string format(const char *fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

void ensure_writable(const std::filesystem::path &path, bool overwrite) {
    if (!overwrite && std::filesystem::exists(path)) {
        throw ConfigError("refusing to overwrite '" + path.string() + "' (pass --overwrite)");
    }
}

std::ofstream open_output(const std::filesystem::path &path, std::ios::openmode mode = std::ios::trunc) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::out | mode);
    if (!out) {
        throw DataError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

FeatureMatrix uniform_features(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FeatureMatrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x.data()[i] = u(rng);
    }
    return x;
}

}  // namespace

std::vector<std::uint64_t> parse_int_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    for (const auto &token : split(text, ',')) {
        const auto dash = token.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(parse_uint(token, text));
            continue;
        }
        const std::string lo_text = trim(std::string_view(token).substr(0, dash));
        std::string hi_text = trim(std::string_view(token).substr(dash + 1));
        std::uint64_t step = 1;
        if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
            step = parse_uint(trim(std::string_view(hi_text).substr(colon + 1)), text);
            hi_text = trim(std::string_view(hi_text).substr(0, colon));
        }
        const std::uint64_t lo = parse_uint(lo_text, text);
        const std::uint64_t hi = parse_uint(hi_text, text);
        if (hi < lo || step == 0) {
            throw ConfigError("bad range '" + token + "'");
        }
        for (std::uint64_t v = lo; v <= hi; v += step) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<AnsatzKind> parse_kind_list(std::string_view text) {
    std::vector<AnsatzKind> out;
    for (const auto &token : split(text, ',')) {
        out.push_back(parse_ansatz_kind(token));
    }
    return out;
}

std::filesystem::path resolve_dataset(std::string_view name) {
    if (name.empty()) {
        throw ConfigError("no dataset given (--dataset wbc|digits|<path.csv>)");
    }
    if (name == "wbc" || name == "digits") {
        return std::filesystem::path(FERMIML_DATA_DIR) / (std::string(name) + ".csv");
    }
    return std::filesystem::path(name);
}

void validate(const ExperimentConfig &config) {
    if (config.kinds.empty()) {
        throw ConfigError("no ansatz kind given");
    }
    if (config.qubits.empty()) {
        throw ConfigError("no qubit counts given (--qubits)");
    }
    if (config.seeds.empty()) {
        throw ConfigError("no seeds given (--seeds)");
    }
    for (std::size_t n : config.qubits) {
        if (n < 2) {
            throw ConfigError("qubit count " + std::to_string(n) + " is below the minimum of 2");
        }
        for (AnsatzKind kind : config.kinds) {
            if (kind == AnsatzKind::PQC && n > kMaxStateQubits) {
                throw ConfigError("PQC runs on the statevector oracle and is limited to N <= " +
                                  std::to_string(kMaxStateQubits) + " (got " + std::to_string(n) + ")");
            }
        }
    }
    if (config.folds < 2) {
        throw ConfigError("--folds must be at least 2");
    }
    if (!(config.c_reg > 0.0)) {
        throw ConfigError("--c-reg must be positive");
    }
}

Dataset load_dataset(const ExperimentConfig &config) {
    Dataset ds = load_csv(resolve_dataset(config.dataset), config.label_column);
    if (config.subsample > 0) {
        ds = stratified_subsample(ds, config.subsample, 0);
    }
    if (ds.size() < 2) {
        throw DataError("dataset '" + ds.name + "' needs at least two rows");
    }
    if (!config.scale_per_fold) {
        ds = minmax_scale(ds).first;
    }
    return ds;
}

ExperimentResult classify_one(const Dataset &ds, AnsatzKind kind, std::size_t n_qubits, std::uint64_t seed,
                              const ExperimentConfig &config) {
    const auto start = Clock::now();
    const auto [spec, params] = build_ansatz(n_qubits, ds.feature_count(), kind, seed);
    SvmOptions options;
    options.c = config.c_reg;
    ExperimentResult result;
    if (!config.scale_per_fold) {
        const GramMatrix gram = gram_matrix(spec, params, ds.x, config.threads);
        result = cross_validate(gram, ds.y, config.folds, seed, options);
    } else {
        // Scaling fitted on the training rows of each fold; the Gram is rebuilt per fold.
        const std::vector<int> assignment = stratified_folds(ds.y, config.folds, seed);
        result.seed = seed;
        result.c = options.c;
        result.folds = config.folds;
        for (std::size_t f = 0; f < config.folds; ++f) {
            std::vector<std::size_t> train;
            std::vector<std::size_t> test;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                (assignment[i] == static_cast<int>(f) ? test : train).push_back(i);
            }
            const MinMaxScaling scaling = fit_minmax(select_rows(ds, train).x);
            const GramMatrix gram = gram_matrix(spec, params, scaling.apply(ds.x, true), config.threads);
            result.per_fold.push_back(evaluate_fold(gram, ds.y, train, test, options));
        }
        result.summarize();
    }
    result.ansatz = std::string(to_string(kind));
    result.n_qubits = n_qubits;
    result.dataset = ds.name;
    result.wall_time_s = seconds_since(start);
    return result;
}

nlohmann::json gram_header(const Dataset &ds, AnsatzKind kind, std::size_t n_qubits, std::uint64_t seed) {
    return {{"N", n_qubits},
            {"kind", std::string(to_string(kind))},
            {"seed", seed},
            {"dataset", ds.name},
            {"dataset_hash", dataset_hash(ds)},
            {"rows", ds.size()}};
}

std::vector<ExperimentResult> read_results(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read results file '" + path.string() + "'");
    }
    std::vector<ExperimentResult> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        try {
            out.push_back(experiment_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception &e) {
            throw DataError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::string summary_table(const std::vector<ExperimentResult> &results) {
    struct Group {
        std::string dataset;
        std::string ansatz;
        std::size_t n = 0;
        std::size_t seeds = 0;
        std::vector<double> test;
        std::vector<double> train;
    };
    std::vector<Group> groups;
    for (const auto &r : results) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group &g) {
            return g.dataset == r.dataset && g.ansatz == r.ansatz && g.n == r.n_qubits;
        });
        if (it == groups.end()) {
            groups.push_back({r.dataset, r.ansatz, r.n_qubits, 0, {}, {}});
            it = std::prev(groups.end());
        }
        ++it->seeds;
        for (const auto &f : r.per_fold) {
            it->test.push_back(f.test_accuracy);
            it->train.push_back(f.train_accuracy);
        }
    }
    auto stats = [](const std::vector<double> &v) {
        ExperimentResult tmp;
        for (double x : v) {
            tmp.per_fold.push_back({x, x});
        }
        tmp.summarize();
        return std::pair{tmp.mean_test, tmp.std_test};
    };
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %-12s %4s %5s  %-17s   %-17s   %7s\n", "dataset", "ansatz", "N", "seeds",
                  "test", "train", "gap");
    out << line;
    for (const auto &g : groups) {
        const auto [test_mean, test_std] = stats(g.test);
        const auto [train_mean, train_std] = stats(g.train);
        std::snprintf(line, sizeof line, "%-10s %-12s %4zu %5zu  %.4f +/- %.4f   %.4f +/- %.4f   %7.4f\n",
                      g.dataset.c_str(), g.ansatz.c_str(), g.n, g.seeds, test_mean, test_std, train_mean, train_std,
                      train_mean - test_mean);
        out << line;
    }
    return out.str();
}

void write_plot_csv(std::ostream &out, const std::vector<ExperimentResult> &results) {
    out << "kind,N,seed,mean,std\n";
    for (const auto &r : results) {
        out << r.ansatz << ',' << r.n_qubits << ',' << r.seed << ',' << format("%.17g", r.mean_test) << ','
            << format("%.17g", r.std_test) << '\n';
    }
}

std::filesystem::path plot_path(const std::filesystem::path &results_path) {
    return results_path.parent_path() / (results_path.stem().string() + "_plot.csv");
}

int run_kernel(const ExperimentConfig &config, std::ostream &log) {
    validate(config);
    if (config.scale_per_fold) {
        throw ConfigError("--scale-per-fold only applies to classify");
    }
    const Dataset ds = load_dataset(config);
    const std::size_t combos = config.kinds.size() * config.qubits.size() * config.seeds.size();
    const std::filesystem::path out = config.out.empty() ? std::filesystem::path(".") : config.out;
    const bool single_file = combos == 1 && out.extension() == ".csv";

    struct Job {
        AnsatzKind kind;
        std::size_t n;
        std::uint64_t seed;
        std::filesystem::path csv;
    };
    std::vector<Job> jobs;
    for (AnsatzKind kind : config.kinds) {
        for (std::size_t n : config.qubits) {
            for (std::uint64_t seed : config.seeds) {
                std::filesystem::path csv = single_file
                                                ? out
                                                : out / ("gram_" + ds.name + "_" + std::string(to_string(kind)) +
                                                         "_N" + std::to_string(n) + "_seed" + std::to_string(seed) +
                                                         ".csv");
                ensure_writable(csv, config.overwrite);
                ensure_writable(std::filesystem::path(csv).replace_extension(".json"), config.overwrite);
                jobs.push_back({kind, n, seed, std::move(csv)});
            }
        }
    }
    for (const auto &job : jobs) {
        const auto start = Clock::now();
        const auto [spec, params] = build_ansatz(job.n, ds.feature_count(), job.kind, job.seed);
        const GramMatrix gram = gram_matrix(spec, params, ds.x, config.threads);
        {
            auto csv = open_output(job.csv);
            write_gram_csv(csv, gram);
        }
        {
            auto header = open_output(std::filesystem::path(job.csv).replace_extension(".json"));
            header << gram_header(ds, job.kind, job.n, job.seed).dump(2) << '\n';
        }
        log << "wrote " << job.csv.string() << " (" << gram.rows() << "x" << gram.cols() << ", "
            << format("%.2f", seconds_since(start)) << " s)\n";
    }
    return kExitOk;
}

int run_classify(const ExperimentConfig &config, std::ostream &log) {
    validate(config);
    const std::filesystem::path out = config.out.empty() ? std::filesystem::path("results.jsonl") : config.out;
    const Dataset ds = load_dataset(config);
    {
        auto file = open_output(out, config.overwrite ? std::ios::trunc : std::ios::app);
        for (AnsatzKind kind : config.kinds) {
            for (std::size_t n : config.qubits) {
                for (std::uint64_t seed : config.seeds) {
                    const ExperimentResult r = classify_one(ds, kind, n, seed, config);
                    file << to_json(r).dump() << '\n';
                    file.flush();
                    log << to_string(kind) << " N=" << n << " seed=" << seed << ": test "
                        << format("%.4f", r.mean_test) << " +/- " << format("%.4f", r.std_test) << ", train "
                        << format("%.4f", r.mean_train) << " (" << format("%.1f", r.wall_time_s) << " s)\n";
                }
            }
        }
    }
    const std::vector<ExperimentResult> all = read_results(out);
    log << '\n' << summary_table(all);
    auto plot = open_output(plot_path(out));
    write_plot_csv(plot, all);
    return kExitOk;
}

bool VerifyReport::passed() const {
    return std::all_of(categories.begin(), categories.end(), [](const VerifyCategory &c) { return c.passed(); });
}

namespace {

Circuit random_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t gates) {
    std::normal_distribution<double> normal;
    auto unitary = [&] {
        Mat2 g;
        for (int i = 0; i < 4; ++i) {
            g(i / 2, i % 2) = {normal(rng), normal(rng)};
        }
        Mat2 q = Eigen::HouseholderQR<Mat2>(g).householderQ();
        return q;
    };
    std::uniform_int_distribution<std::size_t> wire(1, n - 1);
    Circuit c{n, {}};
    for (std::size_t k = 0; k < gates; ++k) {
        const Mat2 a = unitary();
        Mat2 w = unitary();
        w *= std::polar(1.0, std::arg(a.determinant() / w.determinant()) / 2);
        c.gates.emplace_back(make_matchgate(a, w, wire(rng)));
    }
    return c;
}

// Keeps the smallest failing instance by (qubits, gates).
void record(VerifyCategory &cat, double deviation, std::size_t size, std::size_t &best_size,
            const std::function<nlohmann::json()> &describe) {
    ++cat.checks;
    const bool failed = !(deviation < cat.tolerance);
    cat.max_deviation = std::max(cat.max_deviation, std::isnan(deviation) ? std::numeric_limits<double>::infinity()
                                                                            : deviation);
    if (failed) {
        ++cat.failures;
        if (!cat.failing_case || size < best_size) {
            best_size = size;
            nlohmann::json j = describe();
            j["deviation"] = deviation;
            cat.failing_case = std::move(j);
        }
    }
}

template <typename F>
double guarded(F f) {
    try {
        return f();
    } catch (const NumericalError &) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

VerifyReport verify(const VerifyOptions &options) {
    if (options.max_qubits < 2 || options.max_qubits > 8) {
        throw ConfigError("verify: max qubits must lie in 2..8");
    }
    auto category = [](std::string name, double tolerance) {
        VerifyCategory c;
        c.name = std::move(name);
        c.tolerance = tolerance;
        return c;
    };
    VerifyCategory transfer = category("transfer", 1e-10);
    VerifyCategory kernel = category("kernel", 1e-8);
    VerifyCategory marginal = category("marginal", 1e-8);
    VerifyCategory pfaff = category("pfaffian", 1e-8);
    std::size_t best_transfer = 0;
    std::size_t best_kernel = 0;
    std::size_t best_marginal = 0;
    std::size_t best_pf = 0;
    std::mt19937_64 rng(options.seed);
    constexpr AnsatzKind kinds[] = {AnsatzKind::fPQC, AnsatzKind::hfPQC, AnsatzKind::tensor_fPQC};
    const std::size_t transfer_max = std::min<std::size_t>(options.max_qubits, kMaxBruteForceQubits);

    for (std::size_t t = 0; t < options.trials; ++t) {
        {
            const std::size_t n = 2 + t % (transfer_max - 1);
            const Circuit c = random_circuit(rng, n, 1 + rng() % (3 * n));
            const double dev = guarded([&] { return (compile_transfer(c).r - brute_force_transfer(c).r).cwiseAbs().maxCoeff(); });
            record(transfer, dev, n * 1000 + c.gates.size(), best_transfer,
                   [&] { return nlohmann::json{{"circuit", circuit_json(c)}}; });
        }
        {
            const std::size_t n = 2 + t % (options.max_qubits - 1);
            const AnsatzKind kind = kinds[t % 3];
            const std::size_t chi = 1 + rng() % (4 * n);
            const std::uint64_t ansatz_seed = rng();
            const auto [spec, params] = build_ansatz(n, chi, kind, ansatz_seed);
            const FeatureMatrix xs = uniform_features(rng, 2, chi);
            const auto x = row_span(xs, 0);
            const auto y = row_span(xs, 1);
            const double dev = guarded([&] {
                double value = 0.0;
                if (options.fault == Fault::PairOrderFlip) {
                    // Creation before annihilation on line 1: P(qubit 1 reads 1, rest 0).
                    const TransferMatrix r = compose(compile_transfer(spec, encode_angles(x, params, spec)),
                                                     adjoint_transfer(compile_transfer(spec, encode_angles(y, params, spec))));
                    std::vector<std::size_t> all(n);
                    std::vector<int> outcomes(n, 0);
                    for (std::size_t q = 0; q < n; ++q) {
                        all[q] = q + 1;
                    }
                    outcomes[0] = 1;
                    value = marginal_probability(r, {}, all, outcomes);
                } else {
                    value = kernel_value(spec, params, x, y);
                }
                return std::abs(value - oracle_kernel(spec, params, x, y));
            });
            record(kernel, dev, n * 1000 + spec.layout.size(), best_kernel, [&] {
                return nlohmann::json{{"kind", std::string(to_string(kind))},
                                      {"N", n},
                                      {"chi", chi},
                                      {"ansatz_seed", ansatz_seed},
                                      {"x", std::vector<double>(x.begin(), x.end())},
                                      {"x_prime", std::vector<double>(y.begin(), y.end())},
                                      {"circuit", circuit_json(bind_circuit(spec, encode_angles(x, params, spec)))}};
            });
        }
        {
            const std::size_t n = 2 + t % (options.max_qubits - 1);
            const Circuit c = random_circuit(rng, n, 2 * n);
            std::vector<std::size_t> inputs;
            std::vector<std::size_t> measured;
            std::vector<int> outcomes;
            for (std::size_t q = 1; q <= n; ++q) {
                if (rng() % 2) {
                    inputs.push_back(q);
                }
                if (rng() % 2) {
                    measured.push_back(q);
                    outcomes.push_back(static_cast<int>(rng() % 2));
                }
            }
            const double dev = guarded([&] {
                return std::abs(marginal_probability(compile_transfer(c), inputs, measured, outcomes) -
                                oracle_marginal_probability(c, inputs, measured, outcomes));
            });
            record(marginal, dev, n * 1000 + c.gates.size(), best_marginal, [&] {
                return nlohmann::json{{"circuit", circuit_json(c)},
                                      {"input_ones", inputs},
                                      {"measured", measured},
                                      {"outcomes", outcomes}};
            });
        }
        {
            const auto dim = static_cast<Eigen::Index>(2 + 2 * (t % 20));
            std::normal_distribution<double> normal;
            Eigen::MatrixXcd a(dim, dim);
            for (Eigen::Index i = 0; i < a.size(); ++i) {
                a.data()[i] = {normal(rng), normal(rng)};
            }
            const Eigen::MatrixXcd m = a - a.transpose();
            const double dev = guarded([&] {
                const std::complex<double> pf = pfaffian(m);
                const std::complex<double> det = m.partialPivLu().determinant();
                return std::abs(pf * pf - det) / std::abs(det);
            });
            record(pfaff, dev, static_cast<std::size_t>(dim), best_pf,
                   [&] { return nlohmann::json{{"dimension", dim}, {"trial", t}}; });
        }
    }
    return {{transfer, kernel, marginal, pfaff}};
}

int run_verify(const VerifyOptions &options, std::ostream &log) {
    const VerifyReport report = verify(options);
    if (options.trials == 0) {
        log << "warning: 0 trials requested, nothing was checked\n";
    }
    for (const auto &c : report.categories) {
        char line[160];
        std::snprintf(line, sizeof line, "%-9s checks=%-5zu max_deviation=%-10.3e tolerance=%.0e  %s\n",
                      c.name.c_str(), c.checks, c.max_deviation, c.tolerance, c.passed() ? "PASS" : "FAIL");
        log << line;
        if (c.failing_case) {
            log << "  minimal failing case: " << c.failing_case->dump() << '\n';
        }
    }
    return report.passed() ? kExitOk : kExitNumerical;
}

double fit_power_law(const std::vector<double> &n, const std::vector<double> &t) {
    if (n.size() != t.size() || n.size() < 2) {
        throw ConfigError("power-law fit needs at least two points");
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n.size()), 2);
    Eigen::VectorXd b(static_cast<Eigen::Index>(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i) {
        a(static_cast<Eigen::Index>(i), 0) = 1.0;
        a(static_cast<Eigen::Index>(i), 1) = std::log(n[i]);
        b(static_cast<Eigen::Index>(i)) = std::log(t[i]);
    }
    return a.colPivHouseholderQr().solve(b)(1);
}

BenchReport bench(const BenchOptions &options) {
    if (options.qubits.empty() || options.kinds.empty() || options.repeats == 0 || options.row_points == 0) {
        throw ConfigError("bench: empty qubit list, kind list, repeat count or row size");
    }
    for (AnsatzKind kind : options.kinds) {
        for (std::size_t n : options.qubits) {
            if (n < 2) {
                throw ConfigError("bench: qubit count must be at least 2");
            }
            if (kind == AnsatzKind::PQC && n > kMaxStateQubits) {
                throw ConfigError("bench: PQC needs the statevector oracle, refused at N = " + std::to_string(n) +
                                  " (limit " + std::to_string(kMaxStateQubits) + ")");
            }
        }
    }
    BenchReport report;
    std::mt19937_64 rng(options.seed);
    for (AnsatzKind kind : options.kinds) {
        std::vector<double> ns;
        std::vector<double> ts;
        for (std::size_t n : options.qubits) {
            const std::size_t chi = options.features > 0 ? options.features : n;
            const auto [spec, params] = build_ansatz(n, chi, kind, options.seed);
            const KernelEvaluator kernel(spec, params);
            const FeatureMatrix x = uniform_features(rng, options.row_points + 1, chi);
            const FeatureMatrix others = x.bottomRows(static_cast<Eigen::Index>(options.row_points));
            std::vector<double> single;
            std::vector<double> row;
            for (std::size_t r = 0; r < options.repeats; ++r) {
                auto start = Clock::now();
                const double value = kernel(row_span(x, 0), row_span(x, 1));
                single.push_back(seconds_since(start));
                if (!(value >= -1e-9 && value <= 1.0 + 1e-9)) {
                    throw NumericalError("bench: kernel value out of range");
                }
                start = Clock::now();
                const Eigen::MatrixXd block = cross_gram_matrix(spec, params, x.topRows(1), others, 1);
                row.push_back(seconds_since(start));
            }
            report.rows.push_back({kind, n, chi, median(single), median(row)});
            ns.push_back(static_cast<double>(n));
            ts.push_back(report.rows.back().median_kernel_s);
        }
        if (ns.size() >= 2) {
            report.exponents.emplace_back(kind, fit_power_law(ns, ts));
        }
    }
    return report;
}

int run_bench(const BenchOptions &options, const std::filesystem::path &out, bool overwrite, std::ostream &log) {
    if (!out.empty()) {
        ensure_writable(out, overwrite);
    }
    const BenchReport report = bench(options);
    std::ostringstream csv;
    csv << "kind,N,features,median_kernel_s,median_row_s\n";
    for (const auto &r : report.rows) {
        csv << to_string(r.kind) << ',' << r.n_qubits << ',' << r.features << ',' << format("%.6e", r.median_kernel_s)
            << ',' << format("%.6e", r.median_row_s) << '\n';
    }
    if (out.empty()) {
        log << csv.str();
    } else {
        open_output(out) << csv.str();
        log << "wrote " << out.string() << '\n';
    }
    for (const auto &[kind, b] : report.exponents) {
        log << "# " << to_string(kind) << ": fitted exponent b = " << format("%.3f", b) << '\n';
    }
    return kExitOk;
}

}  // namespace fermiml::cli
