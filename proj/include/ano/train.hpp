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

// Optimizers, the minibatch training loop and accuracy metrics.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ano/autodiff.hpp"
#include "ano/circuit.hpp"
#include "ano/data.hpp"
#include "ano/loss.hpp"

namespace ano {

enum class OptimizerKind { adam, sgd };
enum class PhiInit { normal, pauli_z };

std::string to_string(OptimizerKind kind);
std::string to_string(PhiInit kind);
OptimizerKind parse_optimizer_kind(const std::string &s);
PhiInit parse_phi_init(const std::string &s);

struct InitSpec {
    /// theta ~ Uniform(-theta_range, theta_range)
    double theta_range = 3.141592653589793;
    /// normal: phi ~ Normal(0, phi_std); pauli_z: sigma_z string plus that noise
    PhiInit phi = PhiInit::normal;
    double phi_std = 0.1;
    double head_std = 0.1;

    friend bool operator==(const InitSpec &, const InitSpec &) = default;
};

struct TrainConfig {
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 0.01;
    OptimizerKind optimizer = OptimizerKind::adam;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    LossKind loss = LossKind::cross_entropy;
    std::uint64_t seed = 0;
    InitSpec init;
    ThetaGradient theta_gradient = ThetaGradient::adjoint;

    friend bool operator==(const TrainConfig &, const TrainConfig &) = default;
};

/// Throws ConfigError unless epochs >= 1, batch_size >= 1, learning_rate >= 0
/// and the Adam constants are in range.
void validate(const TrainConfig &config);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t t = 0;
};

/// One bias-corrected Adam update, in place.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState &state,
               double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
               double epsilon = 1e-8);

void sgd_step(std::span<double> params, std::span<const double> grads, double learning_rate);

/// Seeded random parameters, drawn in flatten() order. Head bias starts at 0.
ModelParams initialize(const CircuitConfig &circuit, const InitSpec &init, std::uint64_t seed);

struct EpochMetrics {
    int epoch = 0;
    /// Mean per-sample loss over the epoch, each sample taken at the
    /// parameters its gradient was computed with.
    double train_loss = 0.0;
    std::optional<double> test_accuracy;
    double wall_time_s = 0.0;
};

struct FitResult {
    ModelParams initial;
    ModelParams params;
    std::vector<EpochMetrics> metrics;
};

using EpochCallback = std::function<void(const EpochMetrics &, const ModelParams &)>;

/// Seeded minibatch training. `test`, when given, is scored after every
/// epoch. Throws ConfigError when the feature count is not n_qubits.
FitResult fit(const Dataset &train, const TrainConfig &config, const CircuitConfig &circuit,
              const Dataset *test = nullptr, const EpochCallback &on_epoch = {});

/// Index of the largest output; the lowest index wins ties.
int predict(std::span<const double> outputs);

struct AccuracyReport {
    double accuracy = 0.0;
    std::vector<double> per_class; // NaN for classes absent from the data
    std::vector<std::size_t> class_counts;
};

/// Throws InputError on an empty dataset.
AccuracyReport evaluate(const ModelParams &params, const Circuit &circuit, const Dataset &data);
double evaluate_accuracy(const ModelParams &params, const Circuit &circuit, const Dataset &data);
double evaluate_accuracy(const ModelParams &params, const CircuitConfig &circuit,
                         const Dataset &data);

/// Mean and sample standard deviation (n - 1 denominator, 0 for one value).
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};
MeanStd mean_std(std::span<const double> values);

} // namespace ano
