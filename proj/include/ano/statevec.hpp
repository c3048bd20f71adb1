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

// Dense n-qubit statevectors and gate application.
//
// Qubits are numbered 1..n. Qubit 1 is the most significant bit of the basis
// index, so basis index b = sum_q i_q * 2^(n-q) encodes |i_1 i_2 ... i_n>.
//
// Two amplitude types share one implementation: complex<double> (the general
// case) and double. Circuits built only from H, Ry and CNOT keep every
// amplitude real, and the real instantiation halves the memory traffic of the
// training loop.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "ano/kernels.hpp"

namespace ano {

using Complex = std::complex<double>;

/// 1-based qubit number; qubit 1 is the most significant basis bit.
using QubitIndex = int;

inline constexpr int kMaxQubits = 20;

enum class Axis { x, y, z };

/// A 2x2 complex matrix, row-major.
struct Gate2x2 {
    std::array<Complex, 4> m{};

    [[nodiscard]] Complex operator()(int row, int col) const { return m[2 * row + col]; }
    [[nodiscard]] bool is_unitary(double tol = 1e-12) const;
    [[nodiscard]] Complex determinant() const { return m[0] * m[3] - m[1] * m[2]; }

    /// The gate as a real matrix, if every entry has zero imaginary part.
    [[nodiscard]] std::optional<kernels::Real2x2> as_real() const;
};

/// exp(-i * angle * sigma_axis / 2). Throws InputError for non-finite angles.
Gate2x2 gate_rotation(Axis axis, double angle);
Gate2x2 gate_hadamard();
Gate2x2 gate_identity();

template <class Amp> class BasicStateVector {
    static_assert(std::is_same_v<Amp, double> || std::is_same_v<Amp, Complex>);

  public:
    using value_type = Amp;
    static constexpr std::size_t kWidth = sizeof(Amp) / sizeof(double);

    /// |0...0> on n qubits; throws ConfigError unless 1 <= n <= kMaxQubits.
    explicit BasicStateVector(int n_qubits);

    /// Takes ownership of amplitudes; throws InputError on a length mismatch.
    BasicStateVector(int n_qubits, std::vector<Amp> amplitudes);

    [[nodiscard]] int n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Amp> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Amp> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Amp &operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] Amp &operator[](std::size_t i) { return amps_[i]; }

    /// Amplitudes as a flat array of doubles (interleaved re/im if complex).
    [[nodiscard]] double *doubles() noexcept {
        return reinterpret_cast<double *>(amps_.data());
    }
    [[nodiscard]] const double *doubles() const noexcept {
        return reinterpret_cast<const double *>(amps_.data());
    }
    [[nodiscard]] std::size_t n_doubles() const noexcept { return amps_.size() * kWidth; }

    [[nodiscard]] double norm_squared() const;

    /// Distance in amplitudes between the two halves of a target-qubit pair.
    [[nodiscard]] std::size_t stride(QubitIndex q) const {
        return std::size_t{1} << (n_ - q);
    }

    // In-place gate application. Targets are validated; a complex gate on a
    // real statevector is an InputError.
    void apply(const Gate2x2 &gate, QubitIndex target);
    void apply_real(const kernels::Real2x2 &gate, QubitIndex target);
    void apply_ry(double angle, QubitIndex target);
    void apply_cnot(QubitIndex control, QubitIndex target);

    /// CNOT(1,2), CNOT(2,3), ..., CNOT(n-1,n) applied in that order, as one
    /// permutation pass: the result at index y is the input at y ^ (y >> 1).
    void apply_cnot_chain();
    /// Inverse of apply_cnot_chain.
    void apply_cnot_chain_inverse();

    friend bool operator==(const BasicStateVector &, const BasicStateVector &) = default;

  private:
    void check_qubit(QubitIndex q) const;

    int n_;
    std::vector<Amp> amps_;
};

using StateVector = BasicStateVector<Complex>;
using RealStateVector = BasicStateVector<double>;

extern template class BasicStateVector<double>;
extern template class BasicStateVector<Complex>;

StateVector zero_state(int n);

StateVector to_complex(const RealStateVector &state);

// Functional forms; each returns a new state and leaves the input untouched.
StateVector apply_single_qubit(StateVector state, const Gate2x2 &gate, QubitIndex target);
StateVector apply_cnot(StateVector state, QubitIndex control, QubitIndex target);

} // namespace ano
