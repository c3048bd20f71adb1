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

#include "ano/statevec.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ano/errors.hpp"

namespace ano {

bool Gate2x2::is_unitary(double tol) const {
    // G G^dagger == I
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                acc += (*this)(r, k) * std::conj((*this)(c, k));
            }
            const Complex expected = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::optional<kernels::Real2x2> Gate2x2::as_real() const {
    for (const auto &z : m) {
        if (z.imag() != 0.0) {
            return std::nullopt;
        }
    }
    return kernels::Real2x2{m[0].real(), m[1].real(), m[2].real(), m[3].real()};
}

Gate2x2 gate_rotation(Axis axis, double angle) {
    if (!std::isfinite(angle)) {
        throw InputError("rotation angle must be finite");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const Complex i{0.0, 1.0};
    switch (axis) {
    case Axis::x:
        return Gate2x2{{Complex{c}, -i * s, -i * s, Complex{c}}};
    case Axis::y:
        return Gate2x2{{Complex{c}, Complex{-s}, Complex{s}, Complex{c}}};
    case Axis::z:
        return Gate2x2{{std::polar(1.0, -angle / 2.0), Complex{}, Complex{},
                        std::polar(1.0, angle / 2.0)}};
    }
    throw InputError("unknown rotation axis");
}

Gate2x2 gate_hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return Gate2x2{{Complex{h}, Complex{h}, Complex{h}, Complex{-h}}};
}

Gate2x2 gate_identity() {
    return Gate2x2{{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}};
}

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
}

} // namespace

template <class Amp>
BasicStateVector<Amp>::BasicStateVector(int n_qubits) : n_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Amp{});
    amps_[0] = Amp{1.0};
}

template <class Amp>
BasicStateVector<Amp>::BasicStateVector(int n_qubits, std::vector<Amp> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw InputError("expected " + std::to_string(std::size_t{1} << n_qubits) +
                         " amplitudes, got " + std::to_string(amps_.size()));
    }
}

template <class Amp> double BasicStateVector<Amp>::norm_squared() const {
    return kernels::active().dot(doubles(), doubles(), n_doubles());
}

template <class Amp> void BasicStateVector<Amp>::check_qubit(QubitIndex q) const {
    if (q < 1 || q > n_) {
        throw InputError("qubit " + std::to_string(q) + " outside [1, " +
                         std::to_string(n_) + "]");
    }
}

template <class Amp>
void BasicStateVector<Amp>::apply(const Gate2x2 &gate, QubitIndex target) {
    check_qubit(target);
    if (auto real = gate.as_real()) {
        kernels::active().rotate_pairs(doubles(), n_doubles(), stride(target) * kWidth,
                                       *real);
        return;
    }
    if constexpr (std::is_same_v<Amp, Complex>) {
        const kernels::Complex2x2 m{gate.m[0], gate.m[1], gate.m[2], gate.m[3]};
        kernels::active().complex_pairs(doubles(), n_doubles(), stride(target) * kWidth, m);
    } else {
        throw InputError("complex gate applied to a real statevector");
    }
}

template <class Amp>
void BasicStateVector<Amp>::apply_real(const kernels::Real2x2 &gate, QubitIndex target) {
    check_qubit(target);
    kernels::active().rotate_pairs(doubles(), n_doubles(), stride(target) * kWidth, gate);
}

template <class Amp> void BasicStateVector<Amp>::apply_ry(double angle, QubitIndex target) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    apply_real(kernels::Real2x2{c, -s, s, c}, target);
}

template <class Amp>
void BasicStateVector<Amp>::apply_cnot(QubitIndex control, QubitIndex target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw InputError("CNOT control and target must differ");
    }
    const std::size_t cmask = stride(control);
    const std::size_t tmask = stride(target);
    // Visit each index with control=1, target=0 once and swap with target=1.
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

template <class Amp> void BasicStateVector<Amp>::apply_cnot_chain() {
    if (n_ < 2) {
        return;
    }
    std::vector<Amp> out(amps_.size());
    for (std::size_t y = 0; y < out.size(); ++y) {
        out[y] = amps_[y ^ (y >> 1)];
    }
    amps_.swap(out);
}

template <class Amp> void BasicStateVector<Amp>::apply_cnot_chain_inverse() {
    if (n_ < 2) {
        return;
    }
    std::vector<Amp> out(amps_.size());
    for (std::size_t y = 0; y < out.size(); ++y) {
        out[y ^ (y >> 1)] = amps_[y];
    }
    amps_.swap(out);
}

template class BasicStateVector<double>;
template class BasicStateVector<Complex>;

StateVector zero_state(int n) { return StateVector(n); }

StateVector to_complex(const RealStateVector &state) {
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    return StateVector(state.n_qubits(), std::move(amps));
}

StateVector apply_single_qubit(StateVector state, const Gate2x2 &gate, QubitIndex target) {
    state.apply(gate, target);
    return state;
}

StateVector apply_cnot(StateVector state, QubitIndex control, QubitIndex target) {
    state.apply_cnot(control, target);
    return state;
}

} // namespace ano
