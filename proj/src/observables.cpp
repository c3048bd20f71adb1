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

#include "ano/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ano/errors.hpp"

namespace ano {

HermitianParams HermitianParams::zeros(int k) {
    return HermitianParams{k, std::vector<double>(observable_param_count(k), 0.0)};
}

HermitianParams HermitianParams::pauli_z_string(int k) {
    HermitianParams p = zeros(k);
    for (int a = 0; a < p.dim(); ++a) {
        p.phi[a] = (std::popcount(static_cast<unsigned>(a)) % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

HermitianMatrix HermitianMatrix::from_dense(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InputError("Hermitian matrix must be square and non-empty");
    }
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= tol)) {
        throw InputError("matrix is not Hermitian (max |M - M^dagger| = " +
                         std::to_string(dev) + ")");
    }
    const Eigen::Index dim = m.rows();
    ComplexMatrix h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        h(i, i) = m(i, i).real();
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            h(i, j) = m(i, j);
            h(j, i) = std::conj(m(i, j));
        }
    }
    return HermitianMatrix(std::move(h));
}

HermitianMatrix to_matrix(const HermitianParams &params) {
    if (params.k < 1 || params.phi.size() != observable_param_count(params.k)) {
        throw InputError("observable parameters: expected " +
                         std::to_string(observable_param_count(params.k)) +
                         " values for k=" + std::to_string(params.k) + ", got " +
                         std::to_string(params.phi.size()));
    }
    const int dim = params.dim();
    ComplexMatrix h(dim, dim);
    std::size_t p = 0;
    for (int i = 0; i < dim; ++i) {
        h(i, i) = params.phi[p++];
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const Complex z{params.phi[p], params.phi[p + 1]};
            p += 2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return HermitianMatrix(std::move(h));
}

HermitianParams from_matrix(const HermitianMatrix &h) {
    const int dim = h.dim();
    if (!std::has_single_bit(static_cast<unsigned>(dim)) || dim < 2) {
        throw InputError("observable dimension must be a power of two >= 2");
    }
    HermitianParams params = HermitianParams::zeros(std::countr_zero(static_cast<unsigned>(dim)));
    std::size_t p = 0;
    for (int i = 0; i < dim; ++i) {
        params.phi[p++] = h(i, i).real();
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            params.phi[p++] = h(i, j).real();
            params.phi[p++] = h(i, j).imag();
        }
    }
    return params;
}

HermitianParams from_matrix(const ComplexMatrix &m) {
    return from_matrix(HermitianMatrix::from_dense(m));
}

SubsetLayout::SubsetLayout(int n_qubits, std::span<const QubitIndex> subset)
    : k_(static_cast<int>(subset.size())) {
    if (subset.empty() || k_ > n_qubits) {
        throw InputError("measurement subset must hold 1..n qubits");
    }
    std::size_t subset_mask = 0;
    for (QubitIndex q : subset) {
        if (q < 1 || q > n_qubits) {
            throw InputError("qubit " + std::to_string(q) + " outside [1, " +
                             std::to_string(n_qubits) + "]");
        }
        const std::size_t bit = std::size_t{1} << (n_qubits - q);
        if ((subset_mask & bit) != 0) {
            throw InputError("duplicate qubit " + std::to_string(q) + " in subset");
        }
        subset_mask |= bit;
    }

    offsets_.assign(std::size_t{1} << k_, 0);
    for (std::size_t a = 0; a < offsets_.size(); ++a) {
        std::size_t off = 0;
        for (int i = 0; i < k_; ++i) {
            if ((a >> (k_ - 1 - i)) & 1U) {
                off |= std::size_t{1} << (n_qubits - subset[i]);
            }
        }
        offsets_[a] = off;
    }

    // Enumerate every index whose subset bits are zero, in increasing order.
    const std::size_t full = std::size_t{1} << n_qubits;
    const std::size_t rest_mask = (full - 1) & ~subset_mask;
    bases_.reserve(full >> k_);
    std::size_t r = 0;
    do {
        bases_.push_back(r);
        r = (r - rest_mask) & rest_mask;
    } while (r != 0);
}

template <class Amp>
ComplexMatrix reduced_density_matrix(const BasicStateVector<Amp> &state,
                                     const SubsetLayout &layout) {
    constexpr std::size_t w = BasicStateVector<Amp>::kWidth;
    const std::size_t dim = layout.dim();
    const std::size_t rest = layout.rest_size();
    const auto bases = layout.bases();
    const auto offsets = layout.offsets();

    // rows[a] holds the amplitudes psi(a, r) for all r, contiguous.
    std::vector<Amp> rows(dim * rest);
    const auto amps = state.amplitudes();
    for (std::size_t a = 0; a < dim; ++a) {
        Amp *row = rows.data() + a * rest;
        const std::size_t off = offsets[a];
        for (std::size_t r = 0; r < rest; ++r) {
            row[r] = amps[bases[r] + off];
        }
    }

    const auto &kt = kernels::active();
    const auto *flat = reinterpret_cast<const double *>(rows.data());
    const std::size_t row_len = rest * w;
    ComplexMatrix rho(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const double *ra = flat + a * row_len;
        rho(a, a) = kt.dot(ra, ra, row_len);
        for (std::size_t b = a + 1; b < dim; ++b) {
            const double *rb = flat + b * row_len;
            // rho_ab = sum_r psi(a,r) conj(psi(b,r))
            const double re = kt.dot(ra, rb, row_len);
            double im = 0.0;
            if constexpr (w == 2) {
                im = kt.cross_dot(ra, rb, row_len);
            }
            rho(a, b) = Complex{re, im};
            rho(b, a) = Complex{re, -im};
        }
    }
    return rho;
}

template ComplexMatrix reduced_density_matrix(const BasicStateVector<double> &,
                                              const SubsetLayout &);
template ComplexMatrix reduced_density_matrix(const BasicStateVector<Complex> &,
                                              const SubsetLayout &);

ComplexMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const QubitIndex> subset) {
    return reduced_density_matrix(state, SubsetLayout(state.n_qubits(), subset));
}

ComplexMatrix reduced_density_matrix(const RealStateVector &state,
                                     std::span<const QubitIndex> subset) {
    return reduced_density_matrix(state, SubsetLayout(state.n_qubits(), subset));
}

double expectation_from_rdm(const ComplexMatrix &rho, const HermitianMatrix &h) {
    if (rho.rows() != h.dim() || rho.cols() != h.dim()) {
        throw InputError("observable dimension " + std::to_string(h.dim()) +
                         " does not match subset dimension " + std::to_string(rho.rows()));
    }
    Complex acc = 0.0;
    double scale = 1.0;
    for (int a = 0; a < h.dim(); ++a) {
        for (int b = 0; b < h.dim(); ++b) {
            acc += h(a, b) * rho(b, a);
            scale = std::max(scale, std::abs(h(a, b)));
        }
    }
    if (std::abs(acc.imag()) > 1e-10 * scale) {
        throw std::logic_error("expectation has imaginary residue " +
                               std::to_string(acc.imag()));
    }
    return acc.real();
}

double expectation(const StateVector &state, std::span<const QubitIndex> subset,
                   const HermitianMatrix &h) {
    if (h.dim() != (1 << subset.size())) {
        throw InputError("observable dimension " + std::to_string(h.dim()) +
                         " does not match a " + std::to_string(subset.size()) +
                         "-qubit subset");
    }
    return expectation_from_rdm(reduced_density_matrix(state, subset), h);
}

std::vector<double> expectation_gradient_phi(const ComplexMatrix &rho) {
    const Eigen::Index dim = rho.rows();
    std::vector<double> grad;
    grad.reserve(static_cast<std::size_t>(dim * dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        grad.push_back(rho(i, i).real());
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            grad.push_back(2.0 * rho(j, i).real());
            grad.push_back(-2.0 * rho(j, i).imag());
        }
    }
    return grad;
}

std::vector<double> expectation_gradient_phi(const StateVector &state,
                                             std::span<const QubitIndex> subset, int k) {
    if (static_cast<std::size_t>(k) != subset.size()) {
        throw InputError("locality k does not match subset size");
    }
    return expectation_gradient_phi(reduced_density_matrix(state, subset));
}

std::vector<double> eigen_spectrum(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver did not converge");
    }
    const Eigen::VectorXd &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

bool unitarily_similar(const HermitianMatrix &h1, const HermitianMatrix &h2,
                       std::optional<double> tol) {
    if (h1.dim() != h2.dim()) {
        throw InputError("cannot compare observables of different dimension");
    }
    const auto s1 = eigen_spectrum(h1);
    const auto s2 = eigen_spectrum(h2);
    double threshold = 0.0;
    if (tol) {
        threshold = *tol;
    } else {
        double largest = 1.0;
        for (double v : s1) {
            largest = std::max(largest, std::abs(v));
        }
        for (double v : s2) {
            largest = std::max(largest, std::abs(v));
        }
        threshold = 1e-8 * largest;
    }
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (std::abs(s1[i] - s2[i]) > threshold) {
            return false;
        }
    }
    return true;
}

std::pair<double, double> rayleigh_bounds(const HermitianMatrix &h) {
    const auto s = eigen_spectrum(h);
    return {s.front(), s.back()};
}

} // namespace ano
