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

#include "ano/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ano/circuit.hpp"
#include "ano/errors.hpp"

namespace ano::oracle {

namespace {

int bit(std::size_t index, int n, QubitIndex q) { return static_cast<int>((index >> (n - q)) & 1U); }

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

ComplexMatrix dense_single_qubit(int n, const Gate2x2 &gate, QubitIndex target) {
    ComplexMatrix g(2, 2);
    g << gate(0, 0), gate(0, 1), gate(1, 0), gate(1, 1);
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        out = kron(out, q == target ? g : ComplexMatrix::Identity(2, 2));
    }
    return out;
}

ComplexMatrix dense_cnot(int n, QubitIndex control, QubitIndex target) {
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t row = col;
        if (bit(col, n, control) == 1) {
            row ^= std::size_t{1} << (n - target);
        }
        out(row, col) = 1.0;
    }
    return out;
}

ComplexMatrix dense_embed(int n, const ComplexMatrix &h, std::span<const QubitIndex> subset) {
    const std::size_t dim = std::size_t{1} << n;
    const auto sub_index = [&](std::size_t b) {
        std::size_t a = 0;
        for (QubitIndex q : subset) {
            a = (a << 1) | static_cast<std::size_t>(bit(b, n, q));
        }
        return a;
    };
    std::size_t mask = 0;
    for (QubitIndex q : subset) {
        mask |= std::size_t{1} << (n - q);
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~mask) == (c & ~mask)) {
                out(r, c) = h(sub_index(r), sub_index(c));
            }
        }
    }
    return out;
}

ComplexMatrix dense_partial_trace(std::span<const Complex> psi, int n,
                                  std::span<const QubitIndex> subset) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k_dim = std::size_t{1} << subset.size();
    std::size_t mask = 0;
    for (QubitIndex q : subset) {
        mask |= std::size_t{1} << (n - q);
    }
    ComplexMatrix rho = ComplexMatrix::Zero(k_dim, k_dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~mask) != (c & ~mask)) {
                continue;
            }
            std::size_t a = 0, b = 0;
            for (QubitIndex q : subset) {
                a = (a << 1) | static_cast<std::size_t>(bit(r, n, q));
                b = (b << 1) | static_cast<std::size_t>(bit(c, n, q));
            }
            rho(a, b) += psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

namespace {

using Rng = std::mt19937_64;

double max_abs_diff(const Eigen::VectorXcd &a, std::span<const Complex> b) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a(i) - b[static_cast<std::size_t>(i)]));
    }
    return d;
}

std::vector<Complex> random_state(int n, Rng &rng) {
    std::normal_distribution<double> normal;
    std::vector<Complex> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &z : v) {
        z = {normal(rng), normal(rng)};
        norm += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(norm);
    }
    return v;
}

HermitianMatrix random_hermitian(int k, Rng &rng) {
    std::normal_distribution<double> normal;
    HermitianParams p = HermitianParams::zeros(k);
    for (double &v : p.phi) {
        v = normal(rng);
    }
    return to_matrix(p);
}

Gate2x2 random_gate(Rng &rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> pick(0, 2);
    const Axis axes[] = {Axis::x, Axis::y, Axis::z};
    const Gate2x2 a = gate_rotation(axes[pick(rng)], angle(rng));
    const Gate2x2 b = gate_rotation(axes[pick(rng)], angle(rng));
    Gate2x2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[2 * r + c] = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
        }
    }
    return out;
}

std::vector<QubitIndex> random_subset(int n, int k, Rng &rng) {
    std::vector<QubitIndex> all(n);
    for (int q = 0; q < n; ++q) {
        all[q] = q + 1;
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

Eigen::VectorXcd as_vector(std::span<const Complex> v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i];
    }
    return out;
}

} // namespace

SuiteReport closed_form_suite(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    SuiteReport report{"closedform", 0, 0.0};
    const QubitIndex first[] = {1};
    const QubitIndex second[] = {2};
    for (std::size_t c = 0; c < cases; ++c) {
        std::vector<double> v(4);
        double norm = 0.0;
        for (double &x : v) {
            x = normal(rng);
            norm += x * x;
        }
        for (double &x : v) {
            x /= std::sqrt(norm);
        }
        const HermitianMatrix h1 = random_hermitian(1, rng);
        const HermitianMatrix h2 = random_hermitian(1, rng);
        const double t1 = angle(rng);
        const double t2 = angle(rng);

        StateVector psi(2, {v[0], v[1], v[2], v[3]});
        psi.apply_ry(t1, 1);
        psi.apply_ry(t2, 2);
        const auto [f1, f2] = closed_form_example(v, h1, h2, t1, t2);
        report.max_deviation = std::max({report.max_deviation,
                                         std::abs(expectation(psi, first, h1) - f1),
                                         std::abs(expectation(psi, second, h2) - f2)});

        // Unrotated: <v| H1 (x) I |v> = h11 (v1^2 + v2^2) + 2 Re h12 (v1 v3 + v2 v4)
        // + h22 (v3^2 + v4^2).
        const double direct = h1(0, 0).real() * (v[0] * v[0] + v[1] * v[1]) +
                              2.0 * h1(0, 1).real() * (v[0] * v[2] + v[1] * v[3]) +
                              h1(1, 1).real() * (v[2] * v[2] + v[3] * v[3]);
        const auto [z1, z2] = closed_form_example(v, h1, h2, 0.0, 0.0);
        (void)z2;
        report.max_deviation = std::max(report.max_deviation, std::abs(z1 - direct));
        report.cases += 2;
    }
    return report;
}

SuiteReport dense_kron_suite(std::size_t cases, std::uint64_t seed, int max_qubits) {
    if (max_qubits < 2 || max_qubits > 10) {
        throw InputError("dense oracle supports 2..10 qubits");
    }
    Rng rng(seed);
    std::uniform_int_distribution<int> pick_n(2, max_qubits);
    SuiteReport report{"densekron", 0, 0.0};
    for (std::size_t c = 0; c < cases; ++c) {
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_q(1, n);
        const auto amps = random_state(n, rng);
        const Eigen::VectorXcd dense = as_vector(amps);

        const Gate2x2 g = random_gate(rng);
        const QubitIndex t = pick_q(rng);
        const StateVector after = apply_single_qubit(StateVector(n, amps), g, t);
        report.max_deviation = std::max(
            report.max_deviation,
            max_abs_diff(dense_single_qubit(n, g, t) * dense, after.amplitudes()));

        const auto pair = random_subset(n, 2, rng);
        const StateVector flipped = apply_cnot(StateVector(n, amps), pair[0], pair[1]);
        report.max_deviation = std::max(
            report.max_deviation,
            max_abs_diff(dense_cnot(n, pair[0], pair[1]) * dense, flipped.amplitudes()));

        std::uniform_int_distribution<int> pick_k(1, std::min(n, 3));
        const int k = pick_k(rng);
        const auto subset = random_subset(n, k, rng);
        const StateVector psi(n, amps);
        const ComplexMatrix rho = reduced_density_matrix(psi, subset);
        report.max_deviation = std::max(
            report.max_deviation, (rho - dense_partial_trace(amps, n, subset)).cwiseAbs().maxCoeff());

        const HermitianMatrix h = random_hermitian(k, rng);
        const Complex full = dense.dot(dense_embed(n, h.dense(), subset) * dense);
        report.max_deviation =
            std::max({report.max_deviation, std::abs(full.imag()),
                      std::abs(expectation(psi, subset, h) - full.real())});
        report.cases += 4;
    }
    return report;
}

} // namespace ano::oracle
