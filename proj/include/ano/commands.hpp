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

// The `ano` subcommands. Each returns a process exit code:
//
//   0  success
//   1  gradcheck or oracle deviation above tolerance
//   2  invalid configuration, checkpoint or argument
//   3  data file missing or malformed

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ano/autodiff.hpp"

namespace ano {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

struct ConfigOptions {
    /// Empty means built-in defaults for the task named in the overrides.
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> out;
};

int cmd_train(const ConfigOptions &options, std::ostream &out, std::ostream &err);

struct EvalOptions {
    std::string checkpoint;
    /// Dataset root; empty keeps the one recorded in the checkpoint.
    std::string data_root;
    std::string split = "test";
};

int cmd_eval(const EvalOptions &options, std::ostream &out, std::ostream &err);

struct GradcheckOptions {
    ConfigOptions config;
    int samples = 3;
    double h = 1e-4;
    double tolerance = 1e-5;
    /// Forces the parameter-shift rule with this shift (negative controls).
    std::optional<ShiftRule> shift;
};

int cmd_gradcheck(const GradcheckOptions &options, std::ostream &out, std::ostream &err);

struct SpectrumOptions {
    std::string checkpoint;
    int group = 0;
    bool json = false;
};

int cmd_spectrum(const SpectrumOptions &options, std::ostream &out, std::ostream &err);

struct OracleOptions {
    std::string suite = "all";
    std::size_t cases = 0; // 0: 1000 closed-form, 200 dense
    std::uint64_t seed = 0;
};

int cmd_oracle(const OracleOptions &options, std::ostream &out, std::ostream &err);

struct ParamcountOptions {
    ConfigOptions config;
    /// Print the counts of the standard banknote and MNIST configurations instead.
    bool tables = false;
};

int cmd_paramcount(const ParamcountOptions &options, std::ostream &out, std::ostream &err);

} // namespace ano
