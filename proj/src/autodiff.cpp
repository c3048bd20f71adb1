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

#include "ano/autodiff.hpp"

#include "ano/errors.hpp"

namespace ano {

std::string to_string(ThetaGradient method) {
    return method == ThetaGradient::adjoint ? "adjoint" : "parameter_shift";
}

ThetaGradient parse_theta_gradient(const std::string &s) {
    if (s == "adjoint") {
        return ThetaGradient::adjoint;
    }
    if (s == "parameter_shift" || s == "shift") {
        return ThetaGradient::parameter_shift;
    }
    throw ConfigError("unknown theta gradient method '" + s + "'");
}

GradientRecord GradientRecord::zeros_like(const ModelParams &params) {
    GradientRecord g;
    g.d_theta.assign(params.theta.size(), 0.0);
    for (const auto &p : params.phi_groups) {
        g.d_phi_groups.emplace_back(p.phi.size(), 0.0);
    }
    if (params.head) {
        LinearHead h = *params.head;
        std::fill(h.weights.begin(), h.weights.end(), 0.0);
        std::fill(h.bias.begin(), h.bias.end(), 0.0);
        g.d_head = std::move(h);
    }
    return g;
}

std::vector<double> GradientRecord::flat() const {
    std::vector<double> out(d_theta);
    for (const auto &g : d_phi_groups) {
        out.insert(out.end(), g.begin(), g.end());
    }
    if (d_head) {
        out.insert(out.end(), d_head->weights.begin(), d_head->weights.end());
        out.insert(out.end(), d_head->bias.begin(), d_head->bias.end());
    }
    return out;
}

namespace {

void require_rotations(const CircuitConfig &config) {
    if (!config.use_rotations) {
        throw ConfigError("theta gradient requested for a circuit without rotations");
    }
}

double weighted_values(const Circuit &circuit, std::span<const double> x,
                       std::span<const double> theta,
                       const std::vector<HermitianMatrix> &observables,
                       std::span<const double> weights) {
    const auto rdms = circuit.dense_rdms(x, theta);
    double acc = 0.0;
    for (std::size_t g = 0; g < rdms.size(); ++g) {
        if (weights[g] != 0.0) {
            acc += weights[g] * expectation_from_rdm(rdms[g], observables[g]);
        }
    }
    return acc;
}

template <class T> T real_or_complex(Complex z) {
    if constexpr (std::is_same_v<T, double>) {
        return z.real();
    } else {
        return z;
    }
}

// out += sum_g weights[g] * (H_g on its subset) |state>. For real amplitudes
// only the real part of H_g is applied: the imaginary (antisymmetric) part
// contributes nothing to any derivative of a real state's expectation.
template <class Amp>
void apply_weighted_observables(const Circuit &circuit,
                                const std::vector<HermitianMatrix> &observables,
                                std::span<const double> weights,
                                const BasicStateVector<Amp> &state, BasicStateVector<Amp> &out) {
    const auto in = state.amplitudes();
    auto dst = out.amplitudes();
    std::vector<Amp> local;
    std::vector<Amp> matrix;
    for (std::size_t g = 0; g < circuit.layouts().size(); ++g) {
        if (weights[g] == 0.0) {
            continue;
        }
        const SubsetLayout &layout = circuit.layouts()[g];
        const std::size_t dim = layout.dim();
        const auto offsets = layout.offsets();
        matrix.resize(dim * dim);
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                matrix[a * dim + b] = real_or_complex<Amp>(
                    weights[g] * observables[g](static_cast<int>(a), static_cast<int>(b)));
            }
        }
        local.resize(dim);
        for (std::size_t base : layout.bases()) {
            for (std::size_t b = 0; b < dim; ++b) {
                local[b] = in[base + offsets[b]];
            }
            for (std::size_t a = 0; a < dim; ++a) {
                Amp acc{};
                const Amp *row = matrix.data() + a * dim;
                for (std::size_t b = 0; b < dim; ++b) {
                    acc += row[b] * local[b];
                }
                dst[base + offsets[a]] += acc;
            }
        }
    }
}

template <class Amp>
std::vector<double> adjoint_sweep(const Circuit &circuit, std::span<const double> x,
                                  const ModelParams &params,
                                  const std::vector<HermitianMatrix> &observables,
                                  std::span<const double> weights) {
    const CircuitConfig &config = circuit.config();
    const int n = config.n_qubits;
    const int layers = config.n_layers;
    std::vector<double> grad(params.theta.size(), 0.0);
    if (layers == 0) {
        return grad;
    }

    BasicStateVector<Amp> psi = circuit.prepare<Amp>(x, params.theta);
    BasicStateVector<Amp> lam(n, std::vector<Amp>(psi.size(), Amp{}));
    apply_weighted_observables(circuit, observables, weights, psi, lam);

    constexpr std::size_t w = BasicStateVector<Amp>::kWidth;
    const auto &kt = kernels::active();
    for (int layer = layers - 1; layer >= 0; --layer) {
        const double *angles = params.theta.data() + static_cast<std::size_t>(layer) * n;
        // Rotations of one layer commute, so each can be treated as the last
        // gate of the layer.
        for (int q = 1; q <= n; ++q) {
            grad[static_cast<std::size_t>(layer) * n + (q - 1)] =
                kt.generator_y_inner(lam.doubles(), psi.doubles(), psi.n_doubles(),
                                     psi.stride(q) * w);
        }
        if (layer == 0) {
            break;
        }
        for (int q = 1; q <= n; ++q) {
            psi.apply_ry(-angles[q - 1], q);
            lam.apply_ry(-angles[q - 1], q);
        }
        if (config.entangling) {
            psi.apply_cnot_chain_inverse();
            lam.apply_cnot_chain_inverse();
        }
    }
    return grad;
}

void check_weights(const Circuit &circuit, std::span<const double> weights) {
    if (weights.size() != circuit.groups().size()) {
        throw InputError("expected one weight per measurement group");
    }
}

} // namespace

std::vector<double> theta_vjp_parameter_shift(const Circuit &circuit, std::span<const double> x,
                                              const ModelParams &params,
                                              const std::vector<HermitianMatrix> &observables,
                                              std::span<const double> weights,
                                              const ShiftRule &rule) {
    require_rotations(circuit.config());
    check_weights(circuit, weights);
    std::vector<double> theta(params.theta);
    std::vector<double> grad(theta.size(), 0.0);
    for (std::size_t slot = 0; slot < theta.size(); ++slot) {
        const double saved = theta[slot];
        theta[slot] = saved + rule.shift;
        const double plus = weighted_values(circuit, x, theta, observables, weights);
        theta[slot] = saved - rule.shift;
        const double minus = weighted_values(circuit, x, theta, observables, weights);
        theta[slot] = saved;
        grad[slot] = (plus - minus) / rule.denominator;
    }
    return grad;
}

std::vector<double> theta_vjp_adjoint(const Circuit &circuit, std::span<const double> x,
                                      const ModelParams &params,
                                      const std::vector<HermitianMatrix> &observables,
                                      std::span<const double> weights) {
    require_rotations(circuit.config());
    check_weights(circuit, weights);
    if (circuit.real_amplitudes()) {
        return adjoint_sweep<double>(circuit, x, params, observables, weights);
    }
    return adjoint_sweep<Complex>(circuit, x, params, observables, weights);
}

std::vector<double> grad_theta_parameter_shift(std::span<const double> x,
                                               const ModelParams &params,
                                               const CircuitConfig &config, int output_index,
                                               const ShiftRule &rule) {
    require_rotations(config);
    check_shapes(params, config);
    const Circuit circuit(config);
    if (output_index < 0 || output_index >= config.d_out) {
        throw InputError("output index " + std::to_string(output_index) + " outside [0, " +
                         std::to_string(config.d_out) + ")");
    }
    // d output_o = sum_g (d output_o / d v_g) d v_g
    std::vector<double> weights(circuit.groups().size(), 0.0);
    if (circuit.has_head()) {
        const LinearHead &h = *params.head;
        for (int i = 0; i < h.n_in; ++i) {
            weights[i] = h.weights[static_cast<std::size_t>(output_index) * h.n_in + i];
        }
    } else {
        weights[output_index] = 1.0;
    }
    return theta_vjp_parameter_shift(circuit, x, params, circuit.observables(params), weights,
                                     rule);
}

ModelGradient grad_model(const Circuit &circuit, std::span<const double> x, const Target &target,
                         const ModelParams &params, LossKind loss, ThetaGradient method,
                         const ShiftRule &rule) {
    const auto observables = circuit.observables(params);
    const Evaluation ev = circuit.evaluate(x, params, observables);

    ModelGradient out;
    out.outputs = ev.outputs;
    LossGradient lg = loss_with_gradient(loss, ev.outputs, target);
    out.loss = lg.loss;
    out.grad = GradientRecord::zeros_like(params);

    // Backpropagate through the head to the group values.
    std::vector<double> d_values;
    if (circuit.has_head()) {
        const LinearHead &h = *params.head;
        LinearHead &dh = *out.grad.d_head;
        d_values.assign(h.n_in, 0.0);
        for (int o = 0; o < h.n_out; ++o) {
            const double go = lg.d_outputs[o];
            dh.bias[o] = go;
            for (int i = 0; i < h.n_in; ++i) {
                const std::size_t idx = static_cast<std::size_t>(o) * h.n_in + i;
                dh.weights[idx] = go * ev.group_values[i];
                d_values[i] += h.weights[idx] * go;
            }
        }
    } else {
        d_values = lg.d_outputs;
    }

    for (std::size_t g = 0; g < params.phi_groups.size(); ++g) {
        auto dphi = expectation_gradient_phi(ev.rdms[g]);
        for (double &v : dphi) {
            v *= d_values[g];
        }
        out.grad.d_phi_groups[g] = std::move(dphi);
    }

    if (!params.theta.empty()) {
        out.grad.d_theta =
            method == ThetaGradient::adjoint
                ? theta_vjp_adjoint(circuit, x, params, observables, d_values)
                : theta_vjp_parameter_shift(circuit, x, params, observables, d_values, rule);
    }
    return out;
}

ModelGradient grad_model(std::span<const double> x, const Target &target,
                         const ModelParams &params, const CircuitConfig &config, LossKind loss) {
    check_shapes(params, config);
    return grad_model(Circuit(config), x, target, params, loss, ThetaGradient::parameter_shift);
}

std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)> &objective,
    std::span<const double> params, double h) {
    if (!(h > 0.0)) {
        throw InputError("finite-difference step must be positive");
    }
    std::vector<double> p(params.begin(), params.end());
    std::vector<double> grad(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double saved = p[i];
        p[i] = saved + h;
        const double plus = objective(p);
        p[i] = saved - h;
        const double minus = objective(p);
        p[i] = saved;
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

} // namespace ano
