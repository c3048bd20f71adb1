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

#include "ano/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ano/errors.hpp"

namespace ano {

std::string to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::fixed_pauli_z:
        return "fixed_pauli_z";
    case SchemeKind::sliding_k_local:
        return "sliding_k_local";
    case SchemeKind::pairwise_combinatorial:
        return "pairwise_combinatorial";
    }
    return "?";
}

std::string to_string(HeadKind kind) {
    switch (kind) {
    case HeadKind::automatic:
        return "auto";
    case HeadKind::none:
        return "none";
    case HeadKind::linear:
        return "linear";
    }
    return "?";
}

std::string to_string(Axis axis) {
    switch (axis) {
    case Axis::x:
        return "x";
    case Axis::y:
        return "y";
    case Axis::z:
        return "z";
    }
    return "?";
}

SchemeKind parse_scheme_kind(const std::string &s) {
    if (s == "fixed_pauli_z" || s == "pauli") {
        return SchemeKind::fixed_pauli_z;
    }
    if (s == "sliding_k_local" || s == "sliding") {
        return SchemeKind::sliding_k_local;
    }
    if (s == "pairwise_combinatorial" || s == "pairwise") {
        return SchemeKind::pairwise_combinatorial;
    }
    throw ConfigError("unknown measurement scheme '" + s + "'");
}

HeadKind parse_head_kind(const std::string &s) {
    if (s == "auto" || s == "automatic") {
        return HeadKind::automatic;
    }
    if (s == "none") {
        return HeadKind::none;
    }
    if (s == "linear") {
        return HeadKind::linear;
    }
    throw ConfigError("unknown head '" + s + "'");
}

Axis parse_axis(const std::string &s) {
    if (s == "x") {
        return Axis::x;
    }
    if (s == "y") {
        return Axis::y;
    }
    if (s == "z") {
        return Axis::z;
    }
    throw ConfigError("unknown rotation axis '" + s + "'");
}

namespace {

std::vector<QubitIndex> pairwise_subset(const CircuitConfig &config) {
    if (!config.scheme.subset.empty()) {
        return config.scheme.subset;
    }
    std::vector<QubitIndex> all(config.n_qubits);
    for (int q = 0; q < config.n_qubits; ++q) {
        all[q] = q + 1;
    }
    return all;
}

std::size_t pair_count(std::size_t s) { return s * (s - 1) / 2; }

} // namespace

std::vector<std::vector<QubitIndex>> sliding_groups(int n, int k) {
    if (n < 1 || k < 1 || k > n) {
        throw ConfigError("sliding window needs 1 <= k <= n (k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ")");
    }
    std::vector<std::vector<QubitIndex>> groups(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) {
            groups[i].push_back((i + j) % n + 1);
        }
    }
    return groups;
}

std::vector<std::vector<QubitIndex>> pairwise_groups(std::span<const QubitIndex> subset) {
    if (subset.size() < 2) {
        throw ConfigError("pairwise measurement needs at least two qubits");
    }
    if (std::set<QubitIndex>(subset.begin(), subset.end()).size() != subset.size()) {
        throw ConfigError("pairwise subset has duplicate qubits");
    }
    std::vector<std::vector<QubitIndex>> pairs;
    pairs.reserve(pair_count(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            pairs.push_back({subset[i], subset[j]});
        }
    }
    return pairs;
}

void validate(const CircuitConfig &config) {
    const int n = config.n_qubits;
    if (n < 1 || n > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (config.n_layers < 0) {
        throw ConfigError("n_layers must be >= 0");
    }
    if (config.d_out < 1) {
        throw ConfigError("d_out must be >= 1");
    }
    const auto &scheme = config.scheme;
    switch (scheme.kind) {
    case SchemeKind::fixed_pauli_z:
    case SchemeKind::sliding_k_local:
        if (scheme.kind == SchemeKind::sliding_k_local && (scheme.k < 1 || scheme.k > n)) {
            throw ConfigError("sliding window needs 1 <= k <= n");
        }
        if (config.d_out > n) {
            throw ConfigError("d_out=" + std::to_string(config.d_out) + " exceeds the " +
                              std::to_string(n) + " available measurement groups");
        }
        if (scheme.head == HeadKind::linear) {
            throw ConfigError(to_string(scheme.kind) + " does not take a linear head");
        }
        break;
    case SchemeKind::pairwise_combinatorial: {
        const auto subset = pairwise_subset(config);
        for (QubitIndex q : subset) {
            if (q < 1 || q > n) {
                throw ConfigError("pairwise subset qubit " + std::to_string(q) +
                                  " outside [1, " + std::to_string(n) + "]");
            }
        }
        const auto pairs = pairwise_groups(subset);
        if (scheme.head == HeadKind::none &&
            pairs.size() != static_cast<std::size_t>(config.d_out)) {
            throw ConfigError("pairwise scheme without a head needs d_out == number of pairs");
        }
        break;
    }
    }
}

std::vector<std::vector<QubitIndex>> measurement_groups(const CircuitConfig &config) {
    validate(config);
    switch (config.scheme.kind) {
    case SchemeKind::fixed_pauli_z: {
        std::vector<std::vector<QubitIndex>> groups;
        for (int q = 1; q <= config.d_out; ++q) {
            groups.push_back({q});
        }
        return groups;
    }
    case SchemeKind::sliding_k_local: {
        auto groups = sliding_groups(config.n_qubits, config.scheme.k);
        groups.resize(config.d_out);
        return groups;
    }
    case SchemeKind::pairwise_combinatorial:
        return pairwise_groups(pairwise_subset(config));
    }
    return {};
}

bool has_linear_head(const CircuitConfig &config) {
    if (config.scheme.kind != SchemeKind::pairwise_combinatorial) {
        return false;
    }
    switch (config.scheme.head) {
    case HeadKind::linear:
        return true;
    case HeadKind::none:
        return false;
    case HeadKind::automatic:
        break;
    }
    return pair_count(pairwise_subset(config).size()) != static_cast<std::size_t>(config.d_out);
}

ModelParams ModelParams::zeros(const CircuitConfig &config) {
    const auto groups = measurement_groups(config);
    ModelParams p;
    if (config.use_rotations) {
        p.theta.assign(static_cast<std::size_t>(config.n_layers) * config.n_qubits, 0.0);
    }
    if (config.scheme.kind != SchemeKind::fixed_pauli_z) {
        for (const auto &g : groups) {
            p.phi_groups.push_back(HermitianParams::zeros(static_cast<int>(g.size())));
        }
    }
    if (has_linear_head(config)) {
        LinearHead head;
        head.n_in = static_cast<int>(groups.size());
        head.n_out = config.d_out;
        head.weights.assign(static_cast<std::size_t>(head.n_in) * head.n_out, 0.0);
        head.bias.assign(head.n_out, 0.0);
        p.head = std::move(head);
    }
    return p;
}

void check_shapes(const ModelParams &params, const CircuitConfig &config) {
    const ModelParams expected = ModelParams::zeros(config);
    if (params.theta.size() != expected.theta.size()) {
        throw ConfigError("expected " + std::to_string(expected.theta.size()) +
                          " rotation angles, got " + std::to_string(params.theta.size()));
    }
    if (params.phi_groups.size() != expected.phi_groups.size()) {
        throw ConfigError("expected " + std::to_string(expected.phi_groups.size()) +
                          " observables, got " + std::to_string(params.phi_groups.size()));
    }
    for (std::size_t g = 0; g < params.phi_groups.size(); ++g) {
        if (params.phi_groups[g].k != expected.phi_groups[g].k ||
            params.phi_groups[g].phi.size() != expected.phi_groups[g].phi.size()) {
            throw ConfigError("observable " + std::to_string(g) + " has the wrong shape");
        }
    }
    if (params.head.has_value() != expected.head.has_value()) {
        throw ConfigError("linear head presence does not match the configuration");
    }
    if (params.head) {
        const auto &h = *params.head;
        const auto &e = *expected.head;
        if (h.n_in != e.n_in || h.n_out != e.n_out || h.weights.size() != e.weights.size() ||
            h.bias.size() != e.bias.size()) {
            throw ConfigError("linear head has the wrong shape");
        }
    }
}

std::size_t count_parameters(const CircuitConfig &config) {
    const auto groups = measurement_groups(config);
    std::size_t count = 0;
    if (config.use_rotations) {
        count += static_cast<std::size_t>(config.n_layers) * config.n_qubits;
    }
    if (config.scheme.kind != SchemeKind::fixed_pauli_z) {
        for (const auto &g : groups) {
            count += observable_param_count(static_cast<int>(g.size()));
        }
    }
    if (has_linear_head(config)) {
        count += groups.size() * config.d_out + config.d_out;
    }
    return count;
}

std::vector<double> flatten(const ModelParams &params) {
    std::vector<double> flat(params.theta);
    for (const auto &g : params.phi_groups) {
        flat.insert(flat.end(), g.phi.begin(), g.phi.end());
    }
    if (params.head) {
        flat.insert(flat.end(), params.head->weights.begin(), params.head->weights.end());
        flat.insert(flat.end(), params.head->bias.begin(), params.head->bias.end());
    }
    return flat;
}

ModelParams unflatten(std::span<const double> flat, const CircuitConfig &config) {
    ModelParams p = ModelParams::zeros(config);
    if (flat.size() != count_parameters(config)) {
        throw ConfigError("expected " + std::to_string(count_parameters(config)) +
                          " parameters, got " + std::to_string(flat.size()));
    }
    auto it = flat.begin();
    auto take = [&it](std::vector<double> &dst) {
        std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
        it += static_cast<std::ptrdiff_t>(dst.size());
    };
    take(p.theta);
    for (auto &g : p.phi_groups) {
        take(g.phi);
    }
    if (p.head) {
        take(p.head->weights);
        take(p.head->bias);
    }
    return p;
}

namespace {

std::array<Complex, 2> encoded_qubit(double x, Axis axis) {
    const Gate2x2 g = gate_rotation(axis, x);
    const double h = 1.0 / std::sqrt(2.0);
    return {(g(0, 0) + g(0, 1)) * h, (g(1, 0) + g(1, 1)) * h};
}

template <class Amp> Amp narrow(Complex z) {
    if constexpr (std::is_same_v<Amp, double>) {
        return z.real();
    } else {
        return z;
    }
}

} // namespace

StateVector encode(std::span<const double> x, Axis axis) {
    if (x.empty() || x.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw InputError("feature count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    CircuitConfig config;
    config.n_qubits = static_cast<int>(x.size());
    config.n_layers = 0;
    config.encoding_axis = axis;
    config.d_out = 1;
    config.scheme.kind = SchemeKind::fixed_pauli_z;
    return Circuit(config).encode_state<Complex>(x);
}

StateVector variational_block(StateVector state, std::span<const double> theta_layer,
                              int layer_index, bool entangling) {
    if (theta_layer.size() != static_cast<std::size_t>(state.n_qubits())) {
        throw InputError("layer " + std::to_string(layer_index) + " needs " +
                         std::to_string(state.n_qubits()) + " angles, got " +
                         std::to_string(theta_layer.size()));
    }
    if (entangling) {
        state.apply_cnot_chain();
    }
    for (int q = 1; q <= state.n_qubits(); ++q) {
        state.apply_ry(theta_layer[q - 1], q);
    }
    return state;
}

Circuit::Circuit(CircuitConfig config)
    : config_(std::move(config)), groups_(measurement_groups(config_)),
      head_(has_linear_head(config_)) {
    layouts_.reserve(groups_.size());
    for (const auto &g : groups_) {
        layouts_.emplace_back(config_.n_qubits, g);
    }
}

void Circuit::check_features(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(config_.n_qubits)) {
        throw InputError("expected " + std::to_string(config_.n_qubits) + " features, got " +
                         std::to_string(x.size()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw InputError("non-finite feature value");
        }
    }
}

std::vector<HermitianMatrix> Circuit::observables(const ModelParams &params) const {
    std::vector<HermitianMatrix> out;
    out.reserve(groups_.size());
    if (config_.scheme.kind == SchemeKind::fixed_pauli_z) {
        const auto z = to_matrix(HermitianParams::pauli_z_string(1));
        out.assign(groups_.size(), z);
        return out;
    }
    if (params.phi_groups.size() != groups_.size()) {
        throw ConfigError("expected " + std::to_string(groups_.size()) + " observables, got " +
                          std::to_string(params.phi_groups.size()));
    }
    for (const auto &p : params.phi_groups) {
        out.push_back(to_matrix(p));
    }
    return out;
}

template <class Amp>
BasicStateVector<Amp> Circuit::encode_state(std::span<const double> x) const {
    check_features(x);
    if constexpr (std::is_same_v<Amp, double>) {
        if (!real_amplitudes()) {
            throw ConfigError("a real statevector needs Ry encoding");
        }
    }
    const int n = config_.n_qubits;
    std::vector<Amp> amps{Amp{1.0}};
    amps.reserve(std::size_t{1} << n);
    // Kronecker product built from qubit 1 (most significant) downward.
    for (int q = 0; q < n; ++q) {
        const auto u = encoded_qubit(x[q], config_.encoding_axis);
        const Amp u0 = narrow<Amp>(u[0]);
        const Amp u1 = narrow<Amp>(u[1]);
        std::vector<Amp> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * u0;
            next[2 * i + 1] = amps[i] * u1;
        }
        amps.swap(next);
    }
    return BasicStateVector<Amp>(n, std::move(amps));
}

template <class Amp>
BasicStateVector<Amp> Circuit::prepare(std::span<const double> x,
                                       std::span<const double> theta) const {
    BasicStateVector<Amp> state = encode_state<Amp>(x);
    if (!config_.use_rotations) {
        return state;
    }
    const int n = config_.n_qubits;
    if (theta.size() != static_cast<std::size_t>(config_.n_layers) * n) {
        throw ConfigError("expected " + std::to_string(config_.n_layers * n) +
                          " rotation angles, got " + std::to_string(theta.size()));
    }
    for (int layer = 0; layer < config_.n_layers; ++layer) {
        if (config_.entangling) {
            state.apply_cnot_chain();
        }
        for (int q = 1; q <= n; ++q) {
            state.apply_ry(theta[static_cast<std::size_t>(layer) * n + (q - 1)], q);
        }
    }
    return state;
}

template BasicStateVector<double> Circuit::encode_state<double>(std::span<const double>) const;
template BasicStateVector<Complex> Circuit::encode_state<Complex>(std::span<const double>) const;
template BasicStateVector<double> Circuit::prepare<double>(std::span<const double>,
                                                           std::span<const double>) const;
template BasicStateVector<Complex> Circuit::prepare<Complex>(std::span<const double>,
                                                             std::span<const double>) const;

std::vector<Eigen::Matrix2cd> Circuit::encoded_qubit_rdms(std::span<const double> x) const {
    check_features(x);
    std::vector<Eigen::Matrix2cd> out(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        const auto u = encoded_qubit(x[q], config_.encoding_axis);
        Eigen::Matrix2cd rho;
        rho << u[0] * std::conj(u[0]), u[0] * std::conj(u[1]), u[1] * std::conj(u[0]),
            u[1] * std::conj(u[1]);
        out[q] = rho;
    }
    return out;
}

std::vector<ComplexMatrix> Circuit::dense_rdms(std::span<const double> x,
                                               std::span<const double> theta) const {
    std::vector<ComplexMatrix> out;
    out.reserve(groups_.size());
    if (real_amplitudes()) {
        const auto state = prepare<double>(x, theta);
        for (const auto &layout : layouts_) {
            out.push_back(reduced_density_matrix(state, layout));
        }
    } else {
        const auto state = prepare<Complex>(x, theta);
        for (const auto &layout : layouts_) {
            out.push_back(reduced_density_matrix(state, layout));
        }
    }
    return out;
}

std::vector<ComplexMatrix> Circuit::rdms(std::span<const double> x,
                                         std::span<const double> theta) const {
    if (!product_state()) {
        return dense_rdms(x, theta);
    }
    const auto single = encoded_qubit_rdms(x);
    std::vector<ComplexMatrix> out;
    out.reserve(groups_.size());
    for (const auto &g : groups_) {
        ComplexMatrix rho = single[g[0] - 1];
        for (std::size_t i = 1; i < g.size(); ++i) {
            const Eigen::Matrix2cd &r = single[g[i] - 1];
            ComplexMatrix next(rho.rows() * 2, rho.cols() * 2);
            for (Eigen::Index a = 0; a < rho.rows(); ++a) {
                for (Eigen::Index b = 0; b < rho.cols(); ++b) {
                    next.block<2, 2>(2 * a, 2 * b) = rho(a, b) * r;
                }
            }
            rho = std::move(next);
        }
        out.push_back(std::move(rho));
    }
    return out;
}

std::vector<double> Circuit::head_outputs(std::span<const double> group_values,
                                          const ModelParams &params) const {
    if (!head_) {
        return {group_values.begin(), group_values.end()};
    }
    if (!params.head) {
        throw ConfigError("configuration needs a linear head but params have none");
    }
    const LinearHead &h = *params.head;
    std::vector<double> out(h.bias);
    for (int o = 0; o < h.n_out; ++o) {
        const double *row = h.weights.data() + static_cast<std::size_t>(o) * h.n_in;
        for (int i = 0; i < h.n_in; ++i) {
            out[o] += row[i] * group_values[i];
        }
    }
    return out;
}

Evaluation Circuit::evaluate(std::span<const double> x, const ModelParams &params) const {
    return evaluate(x, params, observables(params));
}

Evaluation Circuit::evaluate(std::span<const double> x, const ModelParams &params,
                             const std::vector<HermitianMatrix> &obs) const {
    Evaluation ev;
    ev.rdms = rdms(x, params.theta);
    ev.group_values.reserve(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        ev.group_values.push_back(expectation_from_rdm(ev.rdms[g], obs[g]));
    }
    ev.outputs = head_outputs(ev.group_values, params);
    return ev;
}

std::vector<double> forward(std::span<const double> x, const ModelParams &params,
                            const CircuitConfig &config) {
    check_shapes(params, config);
    return Circuit(config).evaluate(x, params).outputs;
}

std::pair<double, double> closed_form_example(std::span<const double> v,
                                              const HermitianMatrix &h1,
                                              const HermitianMatrix &h2, double theta1,
                                              double theta2) {
    if (v.size() != 4 || h1.dim() != 2 || h2.dim() != 2) {
        throw InputError("closed form needs a 4-entry state and two 2x2 observables");
    }
    const double norm = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
    if (std::abs(norm - 1.0) > 1e-10) {
        throw InputError("state is not normalized");
    }
    const double v1 = v[0], v2 = v[1], v3 = v[2], v4 = v[3];

    const auto first = [&] {
        const double h11 = h1(0, 0).real(), h12 = h1(0, 1).real(), h22 = h1(1, 1).real();
        const double c2 = std::pow(std::cos(theta1 / 2), 2);
        const double s2 = std::pow(std::sin(theta1 / 2), 2);
        const double s = std::sin(theta1), c = std::cos(theta1);
        const double top = v1 * v1 + v2 * v2, bottom = v3 * v3 + v4 * v4;
        const double cross = v1 * v3 + v2 * v4;
        return h11 * (top * c2 + bottom * s2 - cross * s) +
               h12 * (2 * c * cross + (top - bottom) * s) +
               h22 * (top * s2 + bottom * c2 + cross * s);
    }();
    const auto second = [&] {
        const double h11 = h2(0, 0).real(), h12 = h2(0, 1).real(), h22 = h2(1, 1).real();
        const double c2 = std::pow(std::cos(theta2 / 2), 2);
        const double s2 = std::pow(std::sin(theta2 / 2), 2);
        const double s = std::sin(theta2), c = std::cos(theta2);
        const double even = v1 * v1 + v3 * v3, odd = v2 * v2 + v4 * v4;
        const double cross = v1 * v2 + v3 * v4;
        return h11 * (even * c2 + odd * s2 - cross * s) +
               h12 * (2 * c * cross + (even - odd) * s) +
               h22 * (even * s2 + odd * c2 + cross * s);
    }();
    return {first, second};
}

} // namespace ano
