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

// Run configuration: a YAML document with sections data / circuit / train,
// plus dotted-path overrides such as circuit.k=3.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ano/circuit.hpp"
#include "ano/data.hpp"
#include "ano/train.hpp"

namespace ano {

enum class Task { banknote, mnist };

std::string to_string(Task task);
Task parse_task(const std::string &s);

struct DataConfig {
    /// Empty means $ANO_DATA_DIR, then ./data.
    std::string root;
    std::string banknote_csv = "banknote/data_banknote_authentication.txt";
    std::string mnist_images = "mnist/train-images-idx3-ubyte";
    std::string mnist_labels = "mnist/train-labels-idx1-ubyte";
    /// First rows of the MNIST training file kept before splitting.
    int mnist_subset = 10000;
    double test_fraction = 0.1;
    /// Keep only this many rows of each split after splitting (0 = all).
    int train_limit = 0;
    int test_limit = 0;
    ScalingKind scaling = ScalingKind::zscore;

    friend bool operator==(const DataConfig &, const DataConfig &) = default;
};

struct RunConfig {
    Task task = Task::banknote;
    std::uint64_t seed = 0;
    int trials = 1;
    std::string out = "runs/out";
    DataConfig data;
    CircuitConfig circuit;
    TrainConfig train;

    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

/// Defaults for a task: Banknote 4 qubits / 2 outputs / 100 epochs / z-score,
/// MNIST 16 qubits / 10 outputs / 30 epochs / [0, pi] pixel angles.
RunConfig default_config(Task task);

/// Parse a YAML document and apply "a.b.c=value" overrides on top. Missing
/// keys keep the task defaults; unknown keys and bad values throw ConfigError.
RunConfig parse_config(const std::string &yaml_text,
                       const std::vector<std::string> &overrides = {});
RunConfig load_config(const std::filesystem::path &path,
                      const std::vector<std::string> &overrides = {});

/// Fully resolved YAML; parse_config(to_yaml(c)) == c.
std::string to_yaml(const RunConfig &config);

/// Throws ConfigError on any inconsistent field.
void validate(const RunConfig &config);

/// Absolute path of a data file named in the config.
std::filesystem::path resolve_data_path(const DataConfig &data, const std::string &relative);

/// Train/test splits after loading, subsetting, splitting and scaling.
struct PreparedData {
    Dataset train;
    Dataset test;
    FeatureScaling scaling;
};

/// Throws FormatError/ParseError/InputError on data problems. With `scaling`
/// given, both splits reuse it instead of fitting new statistics.
PreparedData prepare_data(const RunConfig &config, std::uint64_t split_seed,
                          const FeatureScaling *scaling = nullptr);

/// Seed of trial t (0-based) in a run.
std::uint64_t trial_seed(const RunConfig &config, int trial);

} // namespace ano
