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

#include "ano/loss.hpp"

#include <algorithm>
#include <cmath>

#include "ano/errors.hpp"

namespace ano {

std::string to_string(LossKind kind) {
    return kind == LossKind::mse ? "mse" : "cross_entropy";
}

LossKind parse_loss_kind(const std::string &s) {
    if (s == "mse") {
        return LossKind::mse;
    }
    if (s == "cross_entropy" || s == "ce") {
        return LossKind::cross_entropy;
    }
    throw ConfigError("unknown loss '" + s + "'");
}

double mse_loss(std::span<const double> outputs, std::span<const double> target) {
    if (outputs.size() != target.size()) {
        throw InputError("mse: " + std::to_string(outputs.size()) + " outputs vs " +
                         std::to_string(target.size()) + " targets");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const double d = outputs[i] - target[i];
        acc += d * d;
    }
    return acc;
}

double mse_loss(std::span<const std::vector<double>> outputs,
                std::span<const std::vector<double>> targets) {
    if (outputs.size() != targets.size() || outputs.empty()) {
        throw InputError("mse: batch sizes differ or are empty");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        acc += mse_loss(outputs[i], targets[i]);
    }
    return acc / static_cast<double>(outputs.size());
}

double cross_entropy_loss(std::span<const double> logits, int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= logits.size()) {
        throw InputError("label " + std::to_string(label) + " outside [0, " +
                         std::to_string(logits.size()) + ")");
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double z : logits) {
        sum += std::exp(z - top);
    }
    return std::log(sum) - (logits[label] - top);
}

std::vector<double> one_hot(int label, int size) {
    if (label < 0 || label >= size) {
        throw InputError("label " + std::to_string(label) + " outside [0, " +
                         std::to_string(size) + ")");
    }
    std::vector<double> v(size, 0.0);
    v[label] = 1.0;
    return v;
}

LossGradient loss_with_gradient(LossKind kind, std::span<const double> outputs,
                                const Target &target) {
    LossGradient out;
    out.d_outputs.resize(outputs.size());
    if (kind == LossKind::mse) {
        const std::vector<double> t =
            std::holds_alternative<int>(target)
                ? one_hot(std::get<int>(target), static_cast<int>(outputs.size()))
                : std::get<std::vector<double>>(target);
        out.loss = mse_loss(outputs, t);
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            out.d_outputs[i] = 2.0 * (outputs[i] - t[i]);
        }
        return out;
    }
    if (!std::holds_alternative<int>(target)) {
        throw InputError("cross-entropy needs a class label");
    }
    const int label = std::get<int>(target);
    out.loss = cross_entropy_loss(outputs, label);
    const double top = *std::max_element(outputs.begin(), outputs.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        out.d_outputs[i] = std::exp(outputs[i] - top);
        sum += out.d_outputs[i];
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        out.d_outputs[i] /= sum;
    }
    out.d_outputs[label] -= 1.0;
    return out;
}

} // namespace ano
