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

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ano {

enum class LossKind { mse, cross_entropy };

std::string to_string(LossKind kind);
LossKind parse_loss_kind(const std::string &s);

/// A class label, or an explicit regression target (MSE only). For MSE a
/// label is one-hot encoded over the model outputs.
using Target = std::variant<int, std::vector<double>>;

/// Squared norm ||outputs - target||^2. Throws InputError on length mismatch.
double mse_loss(std::span<const double> outputs, std::span<const double> target);

/// Mean of mse_loss over rows.
double mse_loss(std::span<const std::vector<double>> outputs,
                std::span<const std::vector<double>> targets);

/// -log softmax(logits)[label], evaluated with max-subtraction.
double cross_entropy_loss(std::span<const double> logits, int label);

std::vector<double> one_hot(int label, int size);

struct LossGradient {
    double loss = 0.0;
    std::vector<double> d_outputs;
};

/// Loss value and its gradient with respect to the model outputs.
LossGradient loss_with_gradient(LossKind kind, std::span<const double> outputs,
                                const Target &target);

} // namespace ano
