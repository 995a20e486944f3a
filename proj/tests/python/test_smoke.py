# Copyright 2026 The fermiml Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

import numpy as np
import pytest

import fermiml as fm


def test_kernel_matches_oracle():
    rng = np.random.default_rng(3)
    for kind in (fm.AnsatzKind.fPQC, fm.AnsatzKind.hfPQC, fm.AnsatzKind.tensor_fPQC):
        spec, params = fm.build_ansatz(5, 7, kind, 11)
        x, y = rng.random(7), rng.random(7)
        assert fm.kernel_value(spec, params, x, y) == pytest.approx(fm.oracle_kernel(spec, params, x, y), abs=1e-9)
        assert fm.kernel_value(spec, params, x, x) == pytest.approx(1.0, abs=1e-12)


def test_gram_is_valid():
    ds = fm.load_dataset("wbc", subsample=40)
    assert ds.x.shape == (40, 30)
    spec, params = fm.build_ansatz(8, 30, fm.AnsatzKind.fPQC, 0)
    g = fm.gram_matrix(spec, params, ds.x, threads=2)
    np.testing.assert_array_equal(g, g.T)
    np.testing.assert_allclose(np.diag(g), 1.0, atol=1e-12)
    assert np.linalg.eigvalsh(g).min() > -1e-8
    cross = fm.cross_gram_matrix(spec, params, ds.x[:5], ds.x)
    np.testing.assert_allclose(cross, g[:5], atol=1e-12)


def test_transfer_and_contraction():
    spec, params = fm.build_ansatz(4, 4, fm.AnsatzKind.hfPQC, 2)
    angles = fm.encode_angles([0.1, 0.4, 0.7, 0.9], params, spec)
    r = fm.compile_transfer(spec, angles)
    np.testing.assert_allclose(r @ r.T, np.eye(8), atol=1e-12)
    np.testing.assert_allclose(r, fm.brute_force_transfer(spec, angles), atol=1e-10)
    assert fm.vacuum_probability(np.eye(8)) == pytest.approx(1.0)
    total = sum(fm.marginal_probability(r, [2], [1, 3], [a, b]) for a in (0, 1) for b in (0, 1))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_pfaffian():
    a = np.array([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]], dtype=complex)
    assert fm.pfaffian(a) == pytest.approx(6.0)
    with pytest.raises(fm.ConfigError):
        fm.pfaffian(np.zeros((3, 3), dtype=complex))


def test_classification_and_svm():
    ds = fm.load_dataset("wbc", subsample=60)
    result = fm.classify(ds, fm.AnsatzKind.fPQC, 4, seed=1, folds=3)
    assert len(result["per_fold"]) == 3
    assert result["mean_test"] > 0.7
    k = np.eye(2)
    model = fm.svm_fit(k, [1, -1])
    np.testing.assert_allclose(model["alpha"], [1.0, 1.0], atol=1e-9)


def test_errors_and_verify():
    with pytest.raises(fm.DataError):
        fm.load_csv("/no/such/file.csv")
    with pytest.raises(ValueError):
        fm.build_ansatz(1, 4, fm.AnsatzKind.fPQC, 0)
    report = fm.verify(max_qubits=4, trials=10)
    assert all(entry["passed"] for entry in report.values())
    assert fm.build_ansatz(6, 6, fm.AnsatzKind.fPQC, 0)[0].layout()
