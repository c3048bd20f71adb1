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

// Brute-force reference computations on dense 2^n x 2^n matrices, and the
// self-check suites behind `ano oracle`.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ano/observables.hpp"
#include "ano/statevec.hpp"

namespace ano::oracle {

/// I (x) ... (x) gate (x) ... (x) I with the gate at `target`.
ComplexMatrix dense_single_qubit(int n, const Gate2x2 &gate, QubitIndex target);

/// Permutation matrix of CNOT(control, target).
ComplexMatrix dense_cnot(int n, QubitIndex control, QubitIndex target);

/// `h` acting on `subset` (in the given order), identity elsewhere.
ComplexMatrix dense_embed(int n, const ComplexMatrix &h, std::span<const QubitIndex> subset);

/// Partial trace of |psi><psi| summed entry by entry.
ComplexMatrix dense_partial_trace(std::span<const Complex> psi, int n,
                                  std::span<const QubitIndex> subset);

struct SuiteReport {
    std::string suite;
    std::size_t cases = 0;
    double max_deviation = 0.0;
};

/// Simulated two-qubit expectations against the closed-form rotated
/// expectations, plus the theta = 0 case against the unrotated form.
SuiteReport closed_form_suite(std::size_t cases, std::uint64_t seed);

/// Gate kernels, CNOTs, reduced density matrices and k-local expectations
/// against dense matrices for 1 <= n <= max_qubits.
SuiteReport dense_kron_suite(std::size_t cases, std::uint64_t seed, int max_qubits = 6);

} // namespace ano::oracle
