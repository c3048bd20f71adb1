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

// JSON checkpoints: the resolved run config, the flat parameter list in
// flatten() order and the train-split feature scaling.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ano/circuit.hpp"
#include "ano/config.hpp"
#include "ano/data.hpp"

namespace ano {

struct Checkpoint {
    RunConfig config;
    int trial = 0;
    /// Seed the trial was initialized and split with.
    std::uint64_t seed = 0;
    ModelParams params;
    FeatureScaling scaling;
    std::optional<double> final_test_accuracy;
};

std::string to_json(const Checkpoint &checkpoint);

/// Throws FormatError on malformed JSON or missing fields and ConfigError
/// when the parameters do not fit the stored configuration.
Checkpoint checkpoint_from_json(const std::string &text);

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path &path);

} // namespace ano
