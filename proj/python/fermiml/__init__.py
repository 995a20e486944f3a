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

"""Matchgate quantum kernels evaluated in polynomial time."""

from ._fermiml import (
    AnsatzKind,
    CircuitSpec,
    ConfigError,
    DataError,
    Dataset,
    EncodingParams,
    NumericalError,
    brute_force_transfer,
    build_ansatz,
    classify,
    compile_transfer,
    cross_gram_matrix,
    cross_validate,
    encode_angles,
    gram_matrix,
    kernel_value,
    load_csv,
    load_dataset,
    marginal_probability,
    minmax_scale,
    oracle_kernel,
    parse_ansatz_kind,
    pfaffian,
    stratified_subsample,
    svm_fit,
    vacuum_probability,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
