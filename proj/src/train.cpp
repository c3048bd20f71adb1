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

#include "ano/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ano/errors.hpp"

namespace ano {

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::adam ? "adam" : "sgd"; }

std::string to_string(PhiInit kind) { return kind == PhiInit::normal ? "normal" : "pauli_z"; }

OptimizerKind parse_optimizer_kind(const std::string &s) {
    if (s == "adam") {
        return OptimizerKind::adam;
    }
    if (s == "sgd") {
        return OptimizerKind::sgd;
    }
    throw ConfigError("unknown optimizer '" + s + "'");
}

PhiInit parse_phi_init(const std::string &s) {
    if (s == "normal") {
        return PhiInit::normal;
    }
    if (s == "pauli_z") {
        return PhiInit::pauli_z;
    }
    throw ConfigError("unknown phi initialization '" + s + "'");
}

void validate(const TrainConfig &config) {
    if (config.epochs < 1) {
        throw ConfigError("train.epochs must be >= 1");
    }
    if (config.batch_size < 1) {
        throw ConfigError("train.batch_size must be >= 1");
    }
    if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
        throw ConfigError("train.learning_rate must be finite and >= 0");
    }
    if (!(config.beta1 >= 0.0 && config.beta1 < 1.0) ||
        !(config.beta2 >= 0.0 && config.beta2 < 1.0)) {
        throw ConfigError("adam betas must lie in [0, 1)");
    }
    if (!(config.epsilon > 0.0)) {
        throw ConfigError("adam epsilon must be positive");
    }
    if (!(config.init.theta_range >= 0.0) || !(config.init.phi_std >= 0.0) ||
        !(config.init.head_std >= 0.0)) {
        throw ConfigError("initialization scales must be >= 0");
    }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState &state,
               double learning_rate, double beta1, double beta2, double epsilon) {
    if (params.size() != grads.size()) {
        throw InputError("adam: parameter and gradient sizes differ");
    }
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    if (state.m.size() != params.size()) {
        throw InputError("adam: state does not match the parameter count");
    }
    ++state.t;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        params[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + epsilon);
    }
}

void sgd_step(std::span<double> params, std::span<const double> grads, double learning_rate) {
    if (params.size() != grads.size()) {
        throw InputError("sgd: parameter and gradient sizes differ");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= learning_rate * grads[i];
    }
}

ModelParams initialize(const CircuitConfig &circuit, const InitSpec &init, std::uint64_t seed) {
    validate(circuit);
    ModelParams p = ModelParams::zeros(circuit);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-init.theta_range, init.theta_range);
    std::normal_distribution<double> phi_noise(0.0, init.phi_std);
    std::normal_distribution<double> head_noise(0.0, init.head_std);

    for (double &t : p.theta) {
        t = init.theta_range > 0.0 ? angle(rng) : 0.0;
    }
    for (auto &g : p.phi_groups) {
        if (init.phi == PhiInit::pauli_z) {
            g = HermitianParams::pauli_z_string(g.k);
        }
        for (double &v : g.phi) {
            v += init.phi_std > 0.0 ? phi_noise(rng) : 0.0;
        }
    }
    if (p.head) {
        for (double &w : p.head->weights) {
            w = init.head_std > 0.0 ? head_noise(rng) : 0.0;
        }
    }
    return p;
}

int predict(std::span<const double> outputs) {
    if (outputs.empty()) {
        throw InputError("cannot predict from an empty output vector");
    }
    return static_cast<int>(std::max_element(outputs.begin(), outputs.end()) - outputs.begin());
}

namespace {

void check_dataset(const Dataset &data, const CircuitConfig &circuit) {
    if (data.n_features != circuit.n_qubits) {
        throw ConfigError("dataset has " + std::to_string(data.n_features) +
                          " features but the circuit has " + std::to_string(circuit.n_qubits) +
                          " qubits");
    }
    for (int label : data.labels) {
        if (label < 0 || label >= circuit.d_out) {
            throw ConfigError("label " + std::to_string(label) + " has no output among d_out = " +
                              std::to_string(circuit.d_out));
        }
    }
}

} // namespace

AccuracyReport evaluate(const ModelParams &params, const Circuit &circuit, const Dataset &data) {
    if (data.empty()) {
        throw InputError("cannot evaluate on an empty dataset");
    }
    check_dataset(data, circuit.config());
    check_shapes(params, circuit.config());
    const auto observables = circuit.observables(params);
    const int n_classes = std::max(data.n_classes, circuit.config().d_out);
    std::vector<std::size_t> hits(n_classes, 0);
    AccuracyReport report;
    report.class_counts.assign(n_classes, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Evaluation ev = circuit.evaluate(data.row(i), params, observables);
        const int label = data.labels[i];
        ++report.class_counts[label];
        if (predict(ev.outputs) == label) {
            ++correct;
            ++hits[label];
        }
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
    report.per_class.resize(n_classes);
    for (int c = 0; c < n_classes; ++c) {
        report.per_class[c] = report.class_counts[c] == 0
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : static_cast<double>(hits[c]) /
                                        static_cast<double>(report.class_counts[c]);
    }
    return report;
}

double evaluate_accuracy(const ModelParams &params, const Circuit &circuit, const Dataset &data) {
    return evaluate(params, circuit, data).accuracy;
}

double evaluate_accuracy(const ModelParams &params, const CircuitConfig &circuit,
                         const Dataset &data) {
    return evaluate_accuracy(params, Circuit(circuit), data);
}

FitResult fit(const Dataset &train, const TrainConfig &config, const CircuitConfig &circuit_config,
              const Dataset *test, const EpochCallback &on_epoch) {
    validate(config);
    validate(circuit_config);
    if (train.empty()) {
        throw InputError("cannot train on an empty dataset");
    }
    check_dataset(train, circuit_config);
    if (test != nullptr) {
        check_dataset(*test, circuit_config);
    }
    const Circuit circuit(circuit_config);

    FitResult result;
    result.initial = initialize(circuit_config, config.init, config.seed);
    std::vector<double> flat = flatten(result.initial);
    ModelParams params = result.initial;

    // Separate stream for the batch order.
    std::mt19937_64 order_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    AdamState adam;
    std::vector<double> batch_grad(flat.size());
    const auto batch = static_cast<std::size_t>(config.batch_size);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto start = std::chrono::steady_clock::now();
        std::shuffle(order.begin(), order.end(), order_rng);
        double loss_sum = 0.0;
        for (std::size_t first = 0; first < order.size(); first += batch) {
            const std::size_t last = std::min(first + batch, order.size());
            std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
            for (std::size_t s = first; s < last; ++s) {
                const std::size_t row = order[s];
                const ModelGradient mg =
                    grad_model(circuit, train.row(row), Target{train.labels[row]}, params,
                               config.loss, config.theta_gradient);
                loss_sum += mg.loss;
                const std::vector<double> g = mg.grad.flat();
                for (std::size_t i = 0; i < g.size(); ++i) {
                    batch_grad[i] += g[i];
                }
            }
            const double inv = 1.0 / static_cast<double>(last - first);
            for (double &g : batch_grad) {
                g *= inv;
            }
            if (config.optimizer == OptimizerKind::adam) {
                adam_step(flat, batch_grad, adam, config.learning_rate, config.beta1,
                          config.beta2, config.epsilon);
            } else {
                sgd_step(flat, batch_grad, config.learning_rate);
            }
            params = unflatten(flat, circuit_config);
        }

        EpochMetrics m;
        m.epoch = epoch;
        m.train_loss = loss_sum / static_cast<double>(train.size());
        if (test != nullptr) {
            m.test_accuracy = evaluate_accuracy(params, circuit, *test);
        }
        m.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.metrics.push_back(m);
        if (on_epoch) {
            on_epoch(m, params);
        }
    }
    result.params = std::move(params);
    return result;
}

MeanStd mean_std(std::span<const double> values) {
    MeanStd out;
    if (values.empty()) {
        return out;
    }
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) {
            acc += (v - out.mean) * (v - out.mean);
        }
        out.std = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    return out;
}

} // namespace ano
