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

#include "fermiml/dataset.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include "fermiml/errors.hpp"

namespace fermiml {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

bool parse_double(const std::string &text, double &out) {
    if (text.empty()) {
        return false;
    }
    const char *begin = text.data();
    if (*begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::string location(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column + 1);
}

}  // namespace

Dataset load_csv(const std::filesystem::path &path, const LabelColumn &label_column, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open dataset '" + path.string() + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::size_t width = 0;

    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> record_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (has_header && header.empty()) {
            header = std::move(fields);
            width = header.size();
            continue;
        }
        if (width == 0) {
            width = fields.size();
        }
        if (fields.size() != width) {
            throw DataError(path.string() + ": " + location(line_no, 0) + ": expected " + std::to_string(width) +
                            " fields, found " + std::to_string(fields.size()));
        }
        records.push_back(std::move(fields));
        record_lines.push_back(line_no);
    }
    if (records.empty()) {
        throw DataError(path.string() + ": no data rows");
    }
    if (width < 2) {
        throw DataError(path.string() + ": need at least one feature and a label column");
    }

    std::size_t label_idx = 0;
    if (const auto *name = std::get_if<std::string>(&label_column)) {
        const auto it = std::find(header.begin(), header.end(), *name);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else {
            int parsed = 0;
            const auto [ptr, ec] = std::from_chars(name->data(), name->data() + name->size(), parsed);
            if (ec != std::errc() || ptr != name->data() + name->size()) {
                throw ConfigError("label column '" + *name + "' not found in header");
            }
            label_idx = static_cast<std::size_t>(parsed < 0 ? static_cast<int>(width) + parsed : parsed);
        }
    } else {
        const int idx = std::get<int>(label_column);
        label_idx = static_cast<std::size_t>(idx < 0 ? static_cast<int>(width) + idx : idx);
    }
    if (label_idx >= width) {
        throw ConfigError("label column index out of range");
    }

    Dataset ds;
    ds.name = path.stem().string();
    for (std::size_t c = 0; c < width; ++c) {
        if (c != label_idx) {
            ds.feature_names.push_back(header.empty() ? "f" + std::to_string(ds.feature_names.size()) : header[c]);
        }
    }
    ds.x.resize(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(width - 1));
    std::vector<std::string> raw_labels;
    raw_labels.reserve(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        Eigen::Index col = 0;
        for (std::size_t c = 0; c < width; ++c) {
            const std::string &field = records[r][c];
            if (field.empty()) {
                throw DataError(path.string() + ": " + location(record_lines[r], c) + ": missing value");
            }
            if (c == label_idx) {
                raw_labels.push_back(field);
                continue;
            }
            double v = 0.0;
            if (!parse_double(field, v)) {
                throw DataError(path.string() + ": " + location(record_lines[r], c) + ": non-numeric value '" +
                                field + "'");
            }
            ds.x(static_cast<Eigen::Index>(r), col++) = v;
        }
    }

    // Re-index labels; numeric order when every label is a number.
    std::vector<std::string> distinct = raw_labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bool numeric = true;
    std::map<std::string, double> numeric_value;
    for (const auto &l : distinct) {
        double v = 0.0;
        numeric = numeric && parse_double(l, v);
        numeric_value[l] = v;
    }
    if (numeric) {
        std::stable_sort(distinct.begin(), distinct.end(),
                         [&](const std::string &a, const std::string &b) { return numeric_value[a] < numeric_value[b]; });
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        index[distinct[i]] = static_cast<int>(i);
    }
    ds.label_names = distinct;
    ds.y.reserve(raw_labels.size());
    for (const auto &l : raw_labels) {
        ds.y.push_back(index[l]);
    }
    return ds;
}

FeatureMatrix MinMaxScaling::apply(const FeatureMatrix &x, bool clip) const {
    FeatureMatrix out(x.rows(), x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double lo = min(c);
        const double span = max(c) - lo;
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
            double v = span > 0 ? (x(r, c) - lo) / span : 0.0;
            if (clip) {
                v = std::clamp(v, 0.0, 1.0);
            }
            out(r, c) = v;
        }
    }
    return out;
}

MinMaxScaling fit_minmax(const FeatureMatrix &x) {
    if (x.rows() == 0) {
        throw DataError("cannot scale an empty dataset");
    }
    return {x.colwise().minCoeff(), x.colwise().maxCoeff()};
}

std::pair<Dataset, MinMaxScaling> minmax_scale(const Dataset &ds) {
    MinMaxScaling scaling = fit_minmax(ds.x);
    Dataset out = ds;
    out.x = scaling.apply(ds.x);
    return {std::move(out), std::move(scaling)};
}

Dataset select_rows(const Dataset &ds, const std::vector<std::size_t> &indices) {
    Dataset out;
    out.name = ds.name;
    out.feature_names = ds.feature_names;
    out.label_names = ds.label_names;
    out.x.resize(static_cast<Eigen::Index>(indices.size()), ds.x.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out.x.row(static_cast<Eigen::Index>(i)) = ds.x.row(static_cast<Eigen::Index>(indices[i]));
        out.y.push_back(ds.y[indices[i]]);
    }
    return out;
}

Dataset stratified_subsample(const Dataset &ds, std::size_t count, std::uint64_t seed) {
    if (count >= ds.size()) {
        return ds;
    }
    std::vector<std::vector<std::size_t>> members(ds.class_count());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        members[static_cast<std::size_t>(ds.y[i])].push_back(i);
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> chosen;
    // Largest-remainder allocation keeps per-class counts proportional.
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t allocated = 0;
    std::vector<std::size_t> take(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        const double exact = static_cast<double>(count) * static_cast<double>(members[c].size()) /
                             static_cast<double>(ds.size());
        take[c] = static_cast<std::size_t>(exact);
        allocated += take[c];
        remainders.emplace_back(-(exact - static_cast<double>(take[c])), c);
    }
    std::sort(remainders.begin(), remainders.end());
    for (std::size_t i = 0; allocated < count && i < remainders.size(); ++i, ++allocated) {
        ++take[remainders[i].second];
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
        auto idx = members[c];
        std::shuffle(idx.begin(), idx.end(), rng);
        chosen.insert(chosen.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take[c]));
    }
    std::sort(chosen.begin(), chosen.end());
    return select_rows(ds, chosen);
}

std::string dataset_hash(const Dataset &ds) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(ds.x.rows()));
    mix(static_cast<std::uint64_t>(ds.x.cols()));
    for (Eigen::Index r = 0; r < ds.x.rows(); ++r) {
        for (Eigen::Index c = 0; c < ds.x.cols(); ++c) {
            mix(std::bit_cast<std::uint64_t>(ds.x(r, c)));
        }
    }
    for (int label : ds.y) {
        mix(static_cast<std::uint64_t>(label));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fermiml
