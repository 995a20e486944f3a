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

#include <stdexcept>
#include <string>

namespace fermiml {

/// Invalid arguments or configuration (bad qubit count, unknown ansatz, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical invariant was violated beyond tolerance. These indicate a
/// construction bug rather than round-off, so they are never silently clamped.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fermiml
