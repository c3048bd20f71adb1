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

// The variational classifier: angle encoding, L variational blocks, grouped
// measurements with trainable observables, and an optional linear head.
//
//   |0..0> --H--Ry(x_q)--[ CNOT chain -- Ry(theta_q^(l)) ] x L -- measure
//
// Measurement schemes:
//   fixed_pauli_z           sigma_z on qubits 1..d_out, nothing trainable
//   sliding_k_local         cyclic windows (i, i+1, ..., i+k-1); only the
//                           first d_out windows are measured and trained
//   pairwise_combinatorial  every pair of a qubit subset S, 2-local each,
//                           then a linear head when C(|S|,2) != d_out

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ano/observables.hpp"
#include "ano/statevec.hpp"

namespace ano {

enum class SchemeKind { fixed_pauli_z, sliding_k_local, pairwise_combinatorial };
enum class HeadKind { automatic, none, linear };

std::string to_string(SchemeKind kind);
std::string to_string(HeadKind kind);
std::string to_string(Axis axis);
SchemeKind parse_scheme_kind(const std::string &s);
HeadKind parse_head_kind(const std::string &s);
Axis parse_axis(const std::string &s);

struct SchemeSpec {
    SchemeKind kind = SchemeKind::sliding_k_local;
    int k = 2;                          // sliding only
    std::vector<QubitIndex> subset;     // pairwise only; empty means all qubits
    HeadKind head = HeadKind::automatic;

    friend bool operator==(const SchemeSpec &, const SchemeSpec &) = default;
};

struct CircuitConfig {
    int n_qubits = 4;
    int n_layers = 4;
    bool use_rotations = true;
    /// CNOT chain inside each variational block.
    bool entangling = true;
    Axis encoding_axis = Axis::y;
    SchemeSpec scheme;
    int d_out = 2;

    friend bool operator==(const CircuitConfig &, const CircuitConfig &) = default;
};

/// Throws ConfigError if the configuration is inconsistent.
void validate(const CircuitConfig &config);

/// Cyclic windows of k consecutive qubits, window i starting at qubit i.
std::vector<std::vector<QubitIndex>> sliding_groups(int n, int k);

/// All pairs (S[i], S[j]) with i < j, in lexicographic order of (i, j).
std::vector<std::vector<QubitIndex>> pairwise_groups(std::span<const QubitIndex> subset);

/// The qubit groups actually measured by a configuration, in output order.
std::vector<std::vector<QubitIndex>> measurement_groups(const CircuitConfig &config);

/// Whether the configuration ends in a trainable linear head.
bool has_linear_head(const CircuitConfig &config);

struct LinearHead {
    int n_in = 0;
    int n_out = 0;
    std::vector<double> weights; // n_out x n_in, row-major
    std::vector<double> bias;    // n_out
};

struct ModelParams {
    std::vector<double> theta; // n_layers x n_qubits, layer-major
    std::vector<HermitianParams> phi_groups;
    std::optional<LinearHead> head;

    /// All-zero parameters of the right shape.
    static ModelParams zeros(const CircuitConfig &config);
};

/// Throws ConfigError if params do not have the shapes config prescribes.
void check_shapes(const ModelParams &params, const CircuitConfig &config);

/// Trainable value count: L*n rotations (if used), 4^k per measured group,
/// n_in*d_out + d_out for a linear head.
std::size_t count_parameters(const CircuitConfig &config);

/// Canonical flat layout: theta, then every group's phi, then head weights
/// and bias.
std::vector<double> flatten(const ModelParams &params);
ModelParams unflatten(std::span<const double> flat, const CircuitConfig &config);

/// (x) (R_axis(x_q) H)|0> over q = 1..n, n = x.size().
StateVector encode(std::span<const double> x, Axis axis = Axis::y);

/// CNOT chain (1,2), ..., (n-1,n) (when entangling) then Ry(theta_q) on every q.
StateVector variational_block(StateVector state, std::span<const double> theta_layer,
                              int layer_index, bool entangling = true);

/// Outputs and intermediate measurements of one forward pass.
struct Evaluation {
    std::vector<double> group_values;
    std::vector<ComplexMatrix> rdms;
    std::vector<double> outputs;
};

/// A configuration with its measurement layout precomputed; cheap to share
/// across threads once built.
class Circuit {
  public:
    explicit Circuit(CircuitConfig config);

    [[nodiscard]] const CircuitConfig &config() const noexcept { return config_; }
    [[nodiscard]] const std::vector<std::vector<QubitIndex>> &groups() const noexcept {
        return groups_;
    }
    [[nodiscard]] const std::vector<SubsetLayout> &layouts() const noexcept { return layouts_; }
    [[nodiscard]] bool has_head() const noexcept { return head_; }
    /// True when every amplitude stays real (Ry encoding).
    [[nodiscard]] bool real_amplitudes() const noexcept {
        return config_.encoding_axis == Axis::y;
    }
    /// True when no variational block is applied, so the state stays a
    /// product of single-qubit states.
    [[nodiscard]] bool product_state() const noexcept {
        return !config_.use_rotations || config_.n_layers == 0;
    }

    /// The observable measured on each group.
    [[nodiscard]] std::vector<HermitianMatrix> observables(const ModelParams &params) const;

    template <class Amp>
    [[nodiscard]] BasicStateVector<Amp> encode_state(std::span<const double> x) const;

    /// Encoded state followed by every variational block.
    template <class Amp>
    [[nodiscard]] BasicStateVector<Amp> prepare(std::span<const double> x,
                                                std::span<const double> theta) const;

    /// Single-qubit density matrices of the encoded (product) state.
    [[nodiscard]] std::vector<Eigen::Matrix2cd> encoded_qubit_rdms(std::span<const double> x) const;

    [[nodiscard]] Evaluation evaluate(std::span<const double> x, const ModelParams &params) const;
    [[nodiscard]] Evaluation evaluate(std::span<const double> x, const ModelParams &params,
                                      const std::vector<HermitianMatrix> &observables) const;

    /// Final outputs from group values (identity or linear head).
    [[nodiscard]] std::vector<double> head_outputs(std::span<const double> group_values,
                                                   const ModelParams &params) const;

    /// Group reduced density matrices computed through the dense statevector,
    /// bypassing the product-state shortcut.
    [[nodiscard]] std::vector<ComplexMatrix> dense_rdms(std::span<const double> x,
                                                        std::span<const double> theta) const;

  private:
    void check_features(std::span<const double> x) const;
    [[nodiscard]] std::vector<ComplexMatrix> rdms(std::span<const double> x,
                                                  std::span<const double> theta) const;

    CircuitConfig config_;
    std::vector<std::vector<QubitIndex>> groups_;
    std::vector<SubsetLayout> layouts_;
    bool head_ = false;
};

std::vector<double> forward(std::span<const double> x, const ModelParams &params,
                            const CircuitConfig &config);

/// Closed-form 1-local expectations for two qubits after R = Ry(t1) (x) Ry(t2)
/// acting on a real state v: (<R^T (H1 (x) I) R>, <R^T (I (x) H2) R>).
/// Throws InputError unless |v| = 1 within 1e-10.
std::pair<double, double> closed_form_example(std::span<const double> v,
                                              const HermitianMatrix &h1,
                                              const HermitianMatrix &h2, double theta1,
                                              double theta2);

} // namespace ano
