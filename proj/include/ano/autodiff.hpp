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

// Exact gradients of the classifier.
//
//   head     analytic (linear layer)
//   phi      exact: <H(phi)> is linear in phi, gradient is read off the
//            group's reduced density matrix
//   theta    parameter-shift rule, or an adjoint sweep that walks the
//            circuit backwards once (same values, one forward + one
//            backward instead of 2 evaluations per angle)

#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ano/circuit.hpp"
#include "ano/loss.hpp"

namespace ano {

enum class ThetaGradient { parameter_shift, adjoint };

std::string to_string(ThetaGradient method);
ThetaGradient parse_theta_gradient(const std::string &s);

struct GradientRecord {
    std::vector<double> d_theta;
    std::vector<std::vector<double>> d_phi_groups;
    std::optional<LinearHead> d_head;

    static GradientRecord zeros_like(const ModelParams &params);

    /// Same layout as flatten(ModelParams).
    [[nodiscard]] std::vector<double> flat() const;
};

/// Shifted evaluations [f(t + shift) - f(t - shift)] / denominator. The
/// default is the exact rule for Pauli-generated rotations.
struct ShiftRule {
    double shift = std::numbers::pi / 2;
    double denominator = 2.0;
};

/// Gradient of sum_g weights[g] * <H_g> with respect to every angle.
std::vector<double> theta_vjp_parameter_shift(const Circuit &circuit, std::span<const double> x,
                                              const ModelParams &params,
                                              const std::vector<HermitianMatrix> &observables,
                                              std::span<const double> weights,
                                              const ShiftRule &rule = {});

std::vector<double> theta_vjp_adjoint(const Circuit &circuit, std::span<const double> x,
                                      const ModelParams &params,
                                      const std::vector<HermitianMatrix> &observables,
                                      std::span<const double> weights);

/// d outputs[output_index] / d theta, shape n_layers x n_qubits (layer-major).
/// Throws ConfigError when the circuit has no rotations.
std::vector<double> grad_theta_parameter_shift(std::span<const double> x,
                                               const ModelParams &params,
                                               const CircuitConfig &config, int output_index,
                                               const ShiftRule &rule = {});

struct ModelGradient {
    double loss = 0.0;
    std::vector<double> outputs;
    GradientRecord grad;
};

ModelGradient grad_model(const Circuit &circuit, std::span<const double> x, const Target &target,
                         const ModelParams &params, LossKind loss,
                         ThetaGradient method = ThetaGradient::adjoint,
                         const ShiftRule &rule = {});

ModelGradient grad_model(std::span<const double> x, const Target &target,
                         const ModelParams &params, const CircuitConfig &config, LossKind loss);

/// Central differences [f(p + h e_i) - f(p - h e_i)] / 2h for every i.
/// Throws InputError unless h > 0.
std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)> &objective,
    std::span<const double> params, double h = 1e-4);

} // namespace ano
