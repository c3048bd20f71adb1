// Copyright 2026 The ANO Authors
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

#include "ano/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ano/errors.hpp"

namespace ano {

std::string to_string(SplitTag tag) {
    switch (tag) {
    case SplitTag::full:
        return "full";
    case SplitTag::train:
        return "train";
    case SplitTag::test:
        return "test";
    }
    return "?";
}

std::string to_string(ScalingKind kind) {
    return kind == ScalingKind::zscore ? "zscore" : "angle_pi";
}

ScalingKind parse_scaling_kind(const std::string &s) {
    if (s == "zscore") {
        return ScalingKind::zscore;
    }
    if (s == "angle_pi") {
        return ScalingKind::angle_pi;
    }
    throw ConfigError("unknown feature scaling '" + s + "'");
}

Dataset Dataset::prefix(std::size_t count) const {
    std::vector<std::size_t> rows(std::min(count, size()));
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    Dataset out = select(rows);
    out.split = split;
    return out;
}

Dataset Dataset::select(std::span<const std::size_t> rows) const {
    Dataset out;
    out.n_features = n_features;
    out.n_classes = n_classes;
    out.split = split;
    out.features.reserve(rows.size() * n_features);
    out.labels.reserve(rows.size());
    out.source_rows.reserve(rows.size());
    for (std::size_t r : rows) {
        const auto src = row(r);
        out.features.insert(out.features.end(), src.begin(), src.end());
        out.labels.push_back(labels[r]);
        out.source_rows.push_back(source_rows.empty() ? r : source_rows[r]);
    }
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

bool parse_double(const std::string &s, double &out) {
    if (s.empty()) {
        return false;
    }
    const char *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

Dataset load_banknote_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    constexpr std::size_t kColumns = 5;
    Dataset data;
    data.n_features = 4;
    data.n_classes = 2;
    std::string raw;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_commas(line);
        if (fields.size() != kColumns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(kColumns) + " columns, got " +
                              std::to_string(fields.size()));
        }
        double values[kColumns];
        bool numeric = true;
        for (std::size_t c = 0; c < kColumns; ++c) {
            numeric = numeric && parse_double(fields[c], values[c]);
        }
        if (!numeric) {
            // A single non-numeric first line is a header.
            if (first_record) {
                first_record = false;
                continue;
            }
            throw ParseError("non-numeric field", line_no);
        }
        first_record = false;
        const double label = values[4];
        if (label != 0.0 && label != 1.0) {
            throw ParseError("label must be 0 or 1", line_no);
        }
        data.features.insert(data.features.end(), values, values + 4);
        data.labels.push_back(static_cast<int>(label));
    }
    if (data.empty()) {
        throw FormatError(path.string() + " holds no data rows");
    }
    return data;
}

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char> &buf, std::size_t at) {
    return (std::uint32_t{buf[at]} << 24) | (std::uint32_t{buf[at + 1]} << 16) |
           (std::uint32_t{buf[at + 2]} << 8) | std::uint32_t{buf[at + 3]};
}

} // namespace

Dataset load_mnist_idx(const std::filesystem::path &images_path,
                       const std::filesystem::path &labels_path) {
    const auto images = read_all(images_path);
    const auto labels = read_all(labels_path);
    if (images.size() < 16 || read_be32(images, 0) != 0x00000803) {
        throw FormatError(images_path.string() + ": not an IDX image file (magic 0x00000803)");
    }
    if (labels.size() < 8 || read_be32(labels, 0) != 0x00000801) {
        throw FormatError(labels_path.string() + ": not an IDX label file (magic 0x00000801)");
    }
    const std::size_t count = read_be32(images, 4);
    const std::size_t rows = read_be32(images, 8);
    const std::size_t cols = read_be32(images, 12);
    const std::size_t label_count = read_be32(labels, 4);
    if (count != label_count) {
        throw FormatError("image count " + std::to_string(count) + " != label count " +
                          std::to_string(label_count));
    }
    const std::size_t pixels = rows * cols;
    if (images.size() != 16 + count * pixels) {
        throw FormatError(images_path.string() + ": expected " +
                          std::to_string(16 + count * pixels) + " bytes, found " +
                          std::to_string(images.size()));
    }
    if (labels.size() != 8 + count) {
        throw FormatError(labels_path.string() + ": expected " + std::to_string(8 + count) +
                          " bytes, found " + std::to_string(labels.size()));
    }

    Dataset data;
    data.n_features = static_cast<int>(pixels);
    data.n_classes = 10;
    data.features.resize(count * pixels);
    for (std::size_t i = 0; i < count * pixels; ++i) {
        data.features[i] = images[16 + i] / 255.0;
    }
    data.labels.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int label = labels[8 + i];
        if (label > 9) {
            throw FormatError("label " + std::to_string(label) + " at index " +
                              std::to_string(i) + " is not a digit");
        }
        data.labels[i] = label;
    }
    return data;
}

std::vector<double> resize_block_mean(std::span<const double> image) {
    constexpr int kSide = 28;
    constexpr int kBlock = 7;
    constexpr int kOut = kSide / kBlock;
    if (image.size() != kSide * kSide) {
        throw InputError("expected a 28x28 image, got " + std::to_string(image.size()) +
                         " pixels");
    }
    std::vector<double> out(kOut * kOut, 0.0);
    for (int r = 0; r < kSide; ++r) {
        for (int c = 0; c < kSide; ++c) {
            out[(r / kBlock) * kOut + c / kBlock] += image[r * kSide + c];
        }
    }
    for (double &v : out) {
        v /= kBlock * kBlock;
    }
    return out;
}

Dataset resize_images(const Dataset &images) {
    Dataset out;
    out.n_features = 16;
    out.n_classes = images.n_classes;
    out.split = images.split;
    out.labels = images.labels;
    out.source_rows = images.source_rows;
    out.features.reserve(images.size() * 16);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto small = resize_block_mean(images.row(i));
        out.features.insert(out.features.end(), small.begin(), small.end());
    }
    return out;
}

FeatureScaling fit_scaling(const Dataset &train, ScalingKind kind) {
    if (train.split != SplitTag::train) {
        throw InputError("scaling statistics must be estimated on a training split, not " +
                         to_string(train.split));
    }
    if (train.empty()) {
        throw InputError("cannot fit scaling on an empty split");
    }
    FeatureScaling s;
    s.kind = kind;
    s.fitted_on = train.split;
    const std::size_t m = train.size();
    const int n = train.n_features;
    s.mean.assign(n, 0.0);
    s.std.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto r = train.row(i);
        for (int j = 0; j < n; ++j) {
            s.mean[j] += r[j];
        }
    }
    for (double &v : s.mean) {
        v /= static_cast<double>(m);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto r = train.row(i);
        for (int j = 0; j < n; ++j) {
            const double d = r[j] - s.mean[j];
            s.std[j] += d * d;
        }
    }
    for (double &v : s.std) {
        v = std::sqrt(v / static_cast<double>(m));
    }
    return s;
}

Dataset standardize(const Dataset &data, const FeatureScaling &scaling) {
    Dataset out = data;
    if (scaling.kind == ScalingKind::angle_pi) {
        for (double &v : out.features) {
            v *= std::numbers::pi;
        }
        return out;
    }
    if (scaling.mean.size() != static_cast<std::size_t>(data.n_features)) {
        throw InputError("scaling statistics do not match the feature count");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto r = out.row(i);
        for (int j = 0; j < out.n_features; ++j) {
            r[j] = (r[j] - scaling.mean[j]) / std::max(scaling.std[j], kStdFloor);
        }
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset &data, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ConfigError("test_fraction must lie strictly between 0 and 1");
    }
    const std::size_t m = data.size();
    // Guard against 0.9 * 10000 landing a hair above an integer.
    const auto n_train =
        static_cast<std::size_t>(std::ceil(static_cast<double>(m) * (1.0 - test_fraction) - 1e-9));
    if (n_train == 0 || n_train >= m) {
        throw ConfigError("split of " + std::to_string(m) + " rows at test_fraction " +
                          std::to_string(test_fraction) + " leaves one side empty");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    Dataset train = data.select(std::span(order).first(n_train));
    Dataset test = data.select(std::span(order).subspan(n_train));
    train.split = SplitTag::train;
    test.split = SplitTag::test;
    return {std::move(train), std::move(test)};
}

} // namespace ano
