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

// Dataset ingestion and preprocessing for the two classification tasks.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ano {

enum class SplitTag { full, train, test };

std::string to_string(SplitTag tag);

/// Row-major feature matrix with integer labels.
struct Dataset {
    std::vector<double> features; // rows x n_features
    std::vector<int> labels;
    int n_features = 0;
    int n_classes = 0;
    SplitTag split = SplitTag::full;
    /// Positions of the rows in the dataset they were split from.
    std::vector<std::size_t> source_rows;

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    [[nodiscard]] bool empty() const noexcept { return labels.empty(); }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {features.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }
    [[nodiscard]] std::span<double> row(std::size_t i) {
        return {features.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }

    /// The first `count` rows (all rows if count >= size()).
    [[nodiscard]] Dataset prefix(std::size_t count) const;
    /// Rows at the given positions, in that order.
    [[nodiscard]] Dataset select(std::span<const std::size_t> rows) const;
};

/// Comma-separated rows of 4 features and a 0/1 label, optional header line.
/// Throws ParseError (with 1-based line number) on a malformed row and
/// FormatError on an empty file or wrong column count.
Dataset load_banknote_csv(const std::filesystem::path &path);

/// MNIST IDX files; pixel values are scaled to [0, 1] (byte / 255).
/// Throws FormatError on bad magic numbers, truncation or a count mismatch.
Dataset load_mnist_idx(const std::filesystem::path &images_path,
                       const std::filesystem::path &labels_path);

/// 28x28 -> 4x4 by averaging 7x7 blocks, row-major. Throws InputError unless
/// the image has 784 pixels.
std::vector<double> resize_block_mean(std::span<const double> image);

/// Apply resize_block_mean to every row.
Dataset resize_images(const Dataset &images);

enum class ScalingKind { zscore, angle_pi };

std::string to_string(ScalingKind kind);
ScalingKind parse_scaling_kind(const std::string &s);

/// Per-feature statistics estimated on a training split.
struct FeatureScaling {
    ScalingKind kind = ScalingKind::zscore;
    std::vector<double> mean;
    std::vector<double> std;
    /// Split the statistics were estimated on; always train.
    SplitTag fitted_on = SplitTag::train;
};

inline constexpr double kStdFloor = 1e-8;

/// Estimate scaling on a training split. Throws InputError for any other
/// split tag or an empty set.
FeatureScaling fit_scaling(const Dataset &train, ScalingKind kind);

/// zscore: (x - mean) / max(std, 1e-8); angle_pi: x * pi (pixels in [0,1]).
Dataset standardize(const Dataset &data, const FeatureScaling &scaling);

/// Seeded shuffle, then the first ceil(m * (1 - test_fraction)) rows form the
/// training split. Throws ConfigError if either side would be empty.
std::pair<Dataset, Dataset> split(const Dataset &data, double test_fraction, std::uint64_t seed);

} // namespace ano
