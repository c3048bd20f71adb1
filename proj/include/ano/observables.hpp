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

// Trainable k-local Hermitian observables.
//
// A K x K Hermitian (K = 2^k) is parameterized by K^2 reals phi:
//
//   phi = [c_11, ..., c_KK,  a_12, b_12, a_13, b_13, ..., a_(K-1)K, b_(K-1)K]
//
// diagonal entries first, then (real, imaginary) parts of the strict upper
// triangle in row-major order. H_ij = a_ij + i b_ij for i < j and the lower
// triangle holds the conjugates. The map is a bijection R^(K^2) <-> Herm(K).
//
// Measurements on a qubit subset go through the reduced density matrix of the
// subset, whose row/column index uses subset[0] as its most significant bit.

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ano/statevec.hpp"

namespace ano {

using ComplexMatrix = Eigen::MatrixXcd;

struct HermitianParams {
    int k = 1;
    std::vector<double> phi;

    [[nodiscard]] int dim() const { return 1 << k; }
    [[nodiscard]] std::size_t size() const { return phi.size(); }

    static HermitianParams zeros(int k);
    /// Parameters of sigma_z (x) ... (x) sigma_z on k qubits.
    static HermitianParams pauli_z_string(int k);
};

/// Number of real parameters of a k-local observable, K^2 = 4^k.
constexpr std::size_t observable_param_count(int k) { return std::size_t{1} << (2 * k); }

/// A matrix that is exactly Hermitian: the lower triangle is always the
/// bitwise conjugate of the upper one and the diagonal is real.
class HermitianMatrix {
  public:
    /// Throws InputError if `m` is not square or deviates from Hermitian by
    /// more than tol (max-abs entry of m - m^dagger). The stored matrix is the
    /// exact Hermitian part built from the upper triangle.
    static HermitianMatrix from_dense(const ComplexMatrix &m, double tol = 1e-12);

    [[nodiscard]] const ComplexMatrix &dense() const noexcept { return m_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(m_.rows()); }
    [[nodiscard]] Complex operator()(int r, int c) const { return m_(r, c); }

  private:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    friend HermitianMatrix to_matrix(const HermitianParams &params);

    ComplexMatrix m_;
};

/// Throws InputError if phi does not have exactly 4^k entries.
HermitianMatrix to_matrix(const HermitianParams &params);
HermitianParams from_matrix(const HermitianMatrix &h);
/// Checked form for arbitrary input; throws InputError if not Hermitian.
HermitianParams from_matrix(const ComplexMatrix &m);

/// Index bookkeeping for measuring a qubit subset: amplitude (a, r) with
/// subset value a and rest value r lives at base(r) + offset(a).
class SubsetLayout {
  public:
    /// Throws InputError on duplicate or out-of-range qubits.
    SubsetLayout(int n_qubits, std::span<const QubitIndex> subset);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] std::size_t dim() const noexcept { return offsets_.size(); }
    [[nodiscard]] std::size_t rest_size() const noexcept { return bases_.size(); }
    [[nodiscard]] std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    [[nodiscard]] std::span<const std::size_t> bases() const noexcept { return bases_; }

  private:
    int k_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> bases_;
};

/// Partial trace of |psi><psi| over the qubits outside `subset`.
ComplexMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const QubitIndex> subset);
ComplexMatrix reduced_density_matrix(const RealStateVector &state,
                                     std::span<const QubitIndex> subset);
template <class Amp>
ComplexMatrix reduced_density_matrix(const BasicStateVector<Amp> &state,
                                     const SubsetLayout &layout);

/// trace(H rho). Throws InputError on a dimension mismatch.
double expectation_from_rdm(const ComplexMatrix &rho, const HermitianMatrix &h);
double expectation(const StateVector &state, std::span<const QubitIndex> subset,
                   const HermitianMatrix &h);

/// d trace(H(phi) rho) / d phi, which does not depend on phi.
std::vector<double> expectation_gradient_phi(const ComplexMatrix &rho);
std::vector<double> expectation_gradient_phi(const StateVector &state,
                                             std::span<const QubitIndex> subset, int k);

/// Eigenvalues in ascending order.
std::vector<double> eigen_spectrum(const HermitianMatrix &h);

/// Same spectrum elementwise within tol. With no tol given, uses
/// 1e-8 * max(1, largest |eigenvalue| of either matrix).
bool unitarily_similar(const HermitianMatrix &h1, const HermitianMatrix &h2,
                       std::optional<double> tol = std::nullopt);

/// (lambda_min, lambda_max); every expectation on a normalized state lies in
/// this closed interval.
std::pair<double, double> rayleigh_bounds(const HermitianMatrix &h);

} // namespace ano
