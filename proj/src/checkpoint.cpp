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

#include "ano/checkpoint.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ano/errors.hpp"

namespace ano {

using nlohmann::json;

namespace {

constexpr const char *kFormat = "ano-checkpoint";
constexpr int kVersion = 1;

SplitTag parse_split_tag(const std::string &s) {
    if (s == "train") {
        return SplitTag::train;
    }
    if (s == "test") {
        return SplitTag::test;
    }
    if (s == "full") {
        return SplitTag::full;
    }
    throw FormatError("unknown split tag '" + s + "'");
}

} // namespace

std::string to_json(const Checkpoint &c) {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["config"] = to_yaml(c.config);
    j["trial"] = c.trial;
    j["seed"] = c.seed;
    j["param_count"] = count_parameters(c.config.circuit);

    json groups = json::array();
    const auto qubits = measurement_groups(c.config.circuit);
    for (std::size_t g = 0; g < qubits.size(); ++g) {
        json entry;
        entry["qubits"] = qubits[g];
        entry["n_params"] = g < c.params.phi_groups.size() ? c.params.phi_groups[g].size() : 0;
        groups.push_back(entry);
    }
    j["groups"] = groups;
    j["params"] = flatten(c.params);

    j["scaling"] = {{"kind", to_string(c.scaling.kind)},
                    {"fitted_on", to_string(c.scaling.fitted_on)},
                    {"mean", c.scaling.mean},
                    {"std", c.scaling.std}};
    if (c.final_test_accuracy) {
        j["final_test_accuracy"] = *c.final_test_accuracy;
    }
    return j.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    Checkpoint c;
    std::vector<double> flat;
    try {
        if (j.at("format").get<std::string>() != kFormat) {
            throw FormatError("not an ano checkpoint");
        }
        if (j.at("version").get<int>() != kVersion) {
            throw FormatError("unsupported checkpoint version " +
                              std::to_string(j.at("version").get<int>()));
        }
        c.config = parse_config(j.at("config").get<std::string>());
        c.trial = j.at("trial").get<int>();
        c.seed = j.at("seed").get<std::uint64_t>();
        flat = j.at("params").get<std::vector<double>>();
        const json &s = j.at("scaling");
        c.scaling.kind = parse_scaling_kind(s.at("kind").get<std::string>());
        c.scaling.fitted_on = parse_split_tag(s.at("fitted_on").get<std::string>());
        c.scaling.mean = s.at("mean").get<std::vector<double>>();
        c.scaling.std = s.at("std").get<std::vector<double>>();
        if (j.contains("final_test_accuracy")) {
            c.final_test_accuracy = j.at("final_test_accuracy").get<double>();
        }
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed checkpoint: ") + e.what());
    }
    if (flat.size() != count_parameters(c.config.circuit)) {
        throw ConfigError("checkpoint holds " + std::to_string(flat.size()) +
                          " parameters; its circuit needs " +
                          std::to_string(count_parameters(c.config.circuit)));
    }
    c.params = unflatten(flat, c.config.circuit);
    return c;
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &checkpoint) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    out << to_json(checkpoint);
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot read checkpoint " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return checkpoint_from_json(ss.str());
}

} // namespace ano
