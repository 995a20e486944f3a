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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fermiml/circuit.hpp"
#include "fermiml/cli.hpp"
#include "fermiml/contraction.hpp"
#include "fermiml/dataset.hpp"
#include "fermiml/errors.hpp"
#include "fermiml/kernel.hpp"
#include "fermiml/pfaffian.hpp"
#include "fermiml/statevector.hpp"
#include "fermiml/svm.hpp"
#include "fermiml/transfer.hpp"

namespace py = pybind11;
using namespace fermiml;

namespace {

py::object to_python(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::span<const double> as_span(const std::vector<double> &v) {
    return {v.data(), v.size()};
}

}  // namespace

PYBIND11_MODULE(_fermiml, m) {
    m.doc() = "Matchgate quantum kernels evaluated in polynomial time";

    auto base = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)base;

    py::enum_<AnsatzKind>(m, "AnsatzKind")
        .value("fPQC", AnsatzKind::fPQC)
        .value("hfPQC", AnsatzKind::hfPQC)
        .value("tensor_fPQC", AnsatzKind::tensor_fPQC)
        .value("PQC", AnsatzKind::PQC)
        .value("tensor_PQC", AnsatzKind::tensor_PQC);
    m.def("parse_ansatz_kind", [](const std::string &s) { return parse_ansatz_kind(s); });

    py::class_<CircuitSpec>(m, "CircuitSpec")
        .def_readonly("n_qubits", &CircuitSpec::n_qubits)
        .def_readonly("kind", &CircuitSpec::kind)
        .def_readonly("depth", &CircuitSpec::depth)
        .def_readonly("num_params", &CircuitSpec::num_params)
        .def("layout", [](const CircuitSpec &s) { return to_python(layout_json(s)); })
        .def("__repr__", [](const CircuitSpec &s) {
            return "<CircuitSpec " + std::string(to_string(s.kind)) + " N=" + std::to_string(s.n_qubits) +
                   " depth=" + std::to_string(s.depth) + ">";
        });

    py::class_<EncodingParams>(m, "EncodingParams")
        .def_readwrite("c_theta", &EncodingParams::c_theta)
        .def_readwrite("c_x", &EncodingParams::c_x)
        .def_readwrite("theta_r", &EncodingParams::theta_r)
        .def_readonly("seed", &EncodingParams::seed);

    m.def("build_ansatz", &build_ansatz, py::arg("n_qubits"), py::arg("chi"), py::arg("kind"), py::arg("seed") = 0);
    m.def(
        "encode_angles",
        [](const std::vector<double> &x, const EncodingParams &p, const CircuitSpec &s) {
            return encode_angles(as_span(x), p, s);
        },
        py::arg("x"), py::arg("params"), py::arg("spec"));

    m.def(
        "kernel_value",
        [](const CircuitSpec &s, const EncodingParams &p, const std::vector<double> &x, const std::vector<double> &y) {
            return kernel_value(s, p, as_span(x), as_span(y));
        },
        py::arg("spec"), py::arg("params"), py::arg("x"), py::arg("x_prime"));
    m.def(
        "oracle_kernel",
        [](const CircuitSpec &s, const EncodingParams &p, const std::vector<double> &x, const std::vector<double> &y) {
            return oracle_kernel(s, p, as_span(x), as_span(y));
        },
        py::arg("spec"), py::arg("params"), py::arg("x"), py::arg("x_prime"));
    m.def(
        "gram_matrix",
        [](const CircuitSpec &s, const EncodingParams &p, const FeatureMatrix &x, unsigned threads) {
            py::gil_scoped_release release;
            return gram_matrix(s, p, x, threads);
        },
        py::arg("spec"), py::arg("params"), py::arg("x"), py::arg("threads") = 1);
    m.def(
        "cross_gram_matrix",
        [](const CircuitSpec &s, const EncodingParams &p, const FeatureMatrix &rows, const FeatureMatrix &cols,
           unsigned threads) {
            py::gil_scoped_release release;
            return cross_gram_matrix(s, p, rows, cols, threads);
        },
        py::arg("spec"), py::arg("params"), py::arg("rows"), py::arg("cols"), py::arg("threads") = 1);

    m.def(
        "compile_transfer",
        [](const CircuitSpec &s, const std::vector<double> &angles) { return compile_transfer(s, as_span(angles)).r; },
        py::arg("spec"), py::arg("angles"));
    m.def(
        "brute_force_transfer",
        [](const CircuitSpec &s, const std::vector<double> &angles) {
            return brute_force_transfer(s, as_span(angles)).r;
        },
        py::arg("spec"), py::arg("angles"));
    m.def(
        "vacuum_probability", [](const Eigen::MatrixXd &r) { return vacuum_probability(TransferMatrix{r}); },
        py::arg("r"));
    m.def(
        "marginal_probability",
        [](const Eigen::MatrixXd &r, const std::vector<std::size_t> &inputs, const std::vector<std::size_t> &measured,
           const std::vector<int> &outcomes) {
            return marginal_probability(TransferMatrix{r}, inputs, measured, outcomes);
        },
        py::arg("r"), py::arg("input_ones"), py::arg("measured"), py::arg("outcomes"));
    m.def(
        "pfaffian", [](const Eigen::MatrixXcd &a) { return pfaffian(a); }, py::arg("a"));

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("x", &Dataset::x)
        .def_readonly("y", &Dataset::y)
        .def_readonly("feature_names", &Dataset::feature_names)
        .def_readonly("label_names", &Dataset::label_names)
        .def_readonly("name", &Dataset::name)
        .def("__len__", &Dataset::size)
        .def_property_readonly("hash", [](const Dataset &d) { return dataset_hash(d); });
    m.def(
        "load_csv",
        [](const std::string &path, const std::variant<int, std::string> &label, bool header) {
            const LabelColumn col = std::holds_alternative<int>(label) ? LabelColumn(std::get<int>(label))
                                                                       : LabelColumn(std::get<std::string>(label));
            return load_csv(path, col, header);
        },
        py::arg("path"), py::arg("label_column") = -1, py::arg("has_header") = true);
    m.def(
        "load_dataset",
        [](const std::string &name, std::size_t subsample) {
            cli::ExperimentConfig config;
            config.dataset = name;
            config.subsample = subsample;
            return cli::load_dataset(config);
        },
        py::arg("name"), py::arg("subsample") = 0, "Load a bundled or on-disk dataset scaled to [0, 1].");
    m.def(
        "minmax_scale", [](const Dataset &d) { return minmax_scale(d).first; }, py::arg("dataset"));
    m.def("stratified_subsample", &stratified_subsample, py::arg("dataset"), py::arg("count"), py::arg("seed"));

    m.def(
        "svm_fit",
        [](const Eigen::MatrixXd &k, const std::vector<int> &y, double c) {
            const SvmModel model = fit(k, y, {.c = c});
            py::dict out;
            out["alpha"] = model.alpha;
            out["bias"] = model.bias;
            out["dual_objective"] = model.dual_objective;
            out["support"] = model.support;
            return out;
        },
        py::arg("k"), py::arg("y"), py::arg("c") = 1.0);
    m.def(
        "cross_validate",
        [](const Eigen::MatrixXd &gram, const std::vector<int> &labels, std::size_t folds, std::uint64_t seed,
           double c) { return to_python(to_json(cross_validate(gram, labels, folds, seed, {.c = c}))); },
        py::arg("gram"), py::arg("labels"), py::arg("folds") = 5, py::arg("seed") = 0, py::arg("c") = 1.0);
    m.def(
        "classify",
        [](const Dataset &ds, AnsatzKind kind, std::size_t n, std::uint64_t seed, std::size_t folds, double c,
           unsigned threads) {
            cli::ExperimentConfig config;
            config.folds = folds;
            config.c_reg = c;
            config.threads = threads;
            py::gil_scoped_release release;
            const ExperimentResult r = cli::classify_one(ds, kind, n, seed, config);
            py::gil_scoped_acquire acquire;
            return to_python(to_json(r));
        },
        py::arg("dataset"), py::arg("kind"), py::arg("n_qubits"), py::arg("seed") = 0, py::arg("folds") = 5,
        py::arg("c") = 1.0, py::arg("threads") = 1);
    m.def(
        "verify",
        [](std::size_t max_qubits, std::size_t trials, std::uint64_t seed) {
            const cli::VerifyReport report = cli::verify({.max_qubits = max_qubits, .trials = trials, .seed = seed});
            py::dict out;
            for (const auto &c : report.categories) {
                py::dict entry;
                entry["max_deviation"] = c.max_deviation;
                entry["tolerance"] = c.tolerance;
                entry["checks"] = c.checks;
                entry["passed"] = c.passed();
                out[py::str(c.name)] = entry;
            }
            return out;
        },
        py::arg("max_qubits") = 8, py::arg("trials") = 100, py::arg("seed") = 1);
}
