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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fermiml/kernel.hpp"

namespace fermiml {

struct Dataset {
    FeatureMatrix x;
    std::vector<int> y;  // contiguous 0-based class indices
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;  // original label text per class index
    std::string name;

    std::size_t size() const { return y.size(); }
    std::size_t feature_count() const { return static_cast<std::size_t>(x.cols()); }
    std::size_t class_count() const { return label_names.size(); }
};

/// Column selector: header name or 0-based index. A negative index counts
/// from the end (-1 is the last column).
using LabelColumn = std::variant<std::string, int>;

/// Reads a comma-separated numeric table. Labels are re-indexed to 0..C-1 in
/// ascending order (numeric order when every label parses as a number).
/// Throws DataError with row/column for parse failures, missing values and
/// ragged rows.
Dataset load_csv(const std::filesystem::path &path, const LabelColumn &label_column = -1, bool has_header = true);

struct MinMaxScaling {
    Eigen::RowVectorXd min;
    Eigen::RowVectorXd max;

    /// (v - min) / (max - min) per column, constant columns -> 0. With
    /// `clip`, results are clamped to [0, 1] (for data outside the fit range).
    FeatureMatrix apply(const FeatureMatrix &x, bool clip = false) const;
};

MinMaxScaling fit_minmax(const FeatureMatrix &x);

/// Scales every column to [0, 1] using the full dataset's extremes.
std::pair<Dataset, MinMaxScaling> minmax_scale(const Dataset &ds);

/// Rows `indices` of `ds`, in that order.
Dataset select_rows(const Dataset &ds, const std::vector<std::size_t> &indices);

/// Seeded stratified subsample of `count` rows (classes kept proportional,
/// original row order preserved).
Dataset stratified_subsample(const Dataset &ds, std::size_t count, std::uint64_t seed);

/// FNV-1a hash over the feature bits and labels, as 16 hex digits.
std::string dataset_hash(const Dataset &ds);

}  // namespace fermiml
