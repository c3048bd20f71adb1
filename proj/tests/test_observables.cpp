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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ano/errors.hpp"
#include "ano/observables.hpp"
#include "reference.hpp"

using ano::Complex;
using ano::ComplexMatrix;
using ano::HermitianMatrix;
using ano::HermitianParams;
using ano::StateVector;
using Catch::Matchers::WithinAbs;

namespace {

HermitianParams params(int k, std::vector<double> phi) { return {k, std::move(phi)}; }

HermitianParams random_params(int k, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    HermitianParams p = HermitianParams::zeros(k);
    for (double &v : p.phi) {
        v = g(rng);
    }
    return p;
}

HermitianMatrix dense_hermitian(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        Eigen::Index c = 0;
        for (const auto &v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    return HermitianMatrix::from_dense(m);
}

ref::Mat as_ref(const ComplexMatrix &m) {
    ref::Mat out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

HermitianMatrix from_ref(const ref::Mat &m) {
    ComplexMatrix out(static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n));
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            out(i, j) = m(i, j);
    return HermitianMatrix::from_dense(out, 1e-10);
}

StateVector bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector(2, {s, 0.0, 0.0, s});
}

} // namespace

TEST_CASE("to_matrix follows the phi layout") {
    const auto z = ano::to_matrix(params(1, {1, -1, 0, 0}));
    CHECK(z(0, 0) == Complex(1));
    CHECK(z(1, 1) == Complex(-1));
    CHECK(z(0, 1) == Complex(0));
    const auto x = ano::to_matrix(params(1, {0, 0, 1, 0}));
    CHECK(x(0, 1) == Complex(1));
    CHECK(x(1, 0) == Complex(1));
    const auto y = ano::to_matrix(params(1, {0, 0, 0, -1}));
    CHECK(y(0, 1) == Complex(0, -1));
    CHECK(y(1, 0) == Complex(0, 1));

    // k = 2: 4 diagonal entries then (a, b) for (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
    std::vector<double> phi(16);
    for (int i = 0; i < 16; ++i) {
        phi[i] = i + 1;
    }
    const auto h = ano::to_matrix(params(2, phi));
    CHECK(h(0, 0) == Complex(1));
    CHECK(h(3, 3) == Complex(4));
    CHECK(h(0, 1) == Complex(5, 6));
    CHECK(h(0, 3) == Complex(9, 10));
    CHECK(h(1, 2) == Complex(11, 12));
    CHECK(h(2, 3) == Complex(15, 16));
    CHECK(h(3, 2) == Complex(15, -16));

    CHECK_THROWS_AS(ano::to_matrix(params(1, {1, 2, 3})), ano::InputError);
}

TEST_CASE("to_matrix and from_matrix are inverse") {
    CHECK(ano::from_matrix(ano::to_matrix(params(1, {1, -1, 0, 0}))).phi ==
          std::vector<double>{1, -1, 0, 0});
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    CHECK(ano::from_matrix(id).phi == std::vector<double>{1, 1, 0, 0});

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + trial % 3;
        const auto p = random_params(k, rng);
        const auto h = ano::to_matrix(p);
        const ComplexMatrix &m = h.dense();
        // Conjugate pairs are exactly equal, bit for bit.
        for (int i = 0; i < h.dim(); ++i) {
            CHECK(m(i, i).imag() == 0.0);
            for (int j = 0; j < h.dim(); ++j) {
                CHECK(m(i, j) == std::conj(m(j, i)));
            }
        }
        CHECK(ano::from_matrix(h).phi == p.phi);
        const auto again = ano::to_matrix(ano::from_matrix(m));
        CHECK((again.dense() - m).cwiseAbs().maxCoeff() <= 1e-12);
    }

    ComplexMatrix bad(2, 2);
    bad << 1.0, 2.0, 3.0, 1.0;
    CHECK_THROWS_AS(ano::from_matrix(bad), ano::InputError);
}

TEST_CASE("reduced density matrix small cases") {
    const StateVector zero = ano::zero_state(2);
    const std::vector<int> first{1};
    const auto rho = ano::reduced_density_matrix(zero, first);
    CHECK(rho(0, 0) == Complex(1));
    CHECK(rho(1, 1) == Complex(0));

    const auto half = ano::reduced_density_matrix(bell(), first);
    CHECK_THAT(half(0, 0).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(half(1, 1).real(), WithinAbs(0.5, 1e-15));
    CHECK_THAT(std::abs(half(0, 1)), WithinAbs(0.0, 1e-15));

    CHECK_THROWS_AS(ano::reduced_density_matrix(zero, std::vector<int>{1, 1}), ano::InputError);
    CHECK_THROWS_AS(ano::reduced_density_matrix(zero, std::vector<int>{3}), ano::InputError);
    CHECK_THROWS_AS(ano::reduced_density_matrix(zero, std::vector<int>{0}), ano::InputError);
}

TEST_CASE("reduced density matrix matches the dense partial trace") {
    std::mt19937_64 rng(12);
    {
        const auto psi = ref::random_state(5, rng);
        const std::vector<int> subset{2, 4};
        const auto rho = ano::reduced_density_matrix(StateVector(5, psi), subset);
        const auto expected = ref::partial_trace(psi, 5, subset);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(std::abs(rho(i, j) - expected(i, j)) < 1e-12);
    }
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> pick_n(1, 6);
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_k(1, std::min(n, 3));
        const int k = pick_k(rng);
        std::vector<int> all(n);
        for (int q = 0; q < n; ++q) {
            all[q] = q + 1;
        }
        std::shuffle(all.begin(), all.end(), rng);
        const std::vector<int> subset(all.begin(), all.begin() + k);
        const auto psi = ref::random_state(n, rng);
        const auto rho = ano::reduced_density_matrix(StateVector(n, psi), subset);
        const auto expected = ref::partial_trace(psi, n, subset);
        Complex trace = 0.0;
        for (std::size_t i = 0; i < expected.n; ++i) {
            trace += rho(i, i);
            for (std::size_t j = 0; j < expected.n; ++j) {
                CHECK(std::abs(rho(i, j) - expected(i, j)) < 1e-12);
                CHECK(rho(i, j) == std::conj(rho(j, i)));
            }
        }
        CHECK(std::abs(trace - 1.0) < 1e-10);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
}

TEST_CASE("real and complex statevectors give the same reduced density matrix") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    const int n = 5;
    std::vector<double> v(32);
    double s = 0.0;
    for (double &x : v) {
        x = g(rng);
        s += x * x;
    }
    for (double &x : v) {
        x /= std::sqrt(s);
    }
    const std::vector<int> subset{4, 1, 3};
    const auto a = ano::reduced_density_matrix(ano::RealStateVector(n, v), subset);
    const auto b = ano::reduced_density_matrix(StateVector(n, {v.begin(), v.end()}), subset);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("expectation values") {
    const std::vector<int> first{1};
    const std::vector<int> both{1, 2};
    const auto z = ano::to_matrix(HermitianParams::pauli_z_string(1));
    CHECK_THAT(ano::expectation(ano::zero_state(2), first, z), WithinAbs(1.0, 1e-15));
    const auto zz = dense_hermitian({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
    CHECK_THAT(ano::expectation(bell(), both, zz), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(ano::expectation(bell(), first, zz), ano::InputError);

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto psi = ref::random_state(4, rng);
        const std::vector<int> subset{2, 3};
        const auto h = ref::random_hermitian(4, rng);
        const ref::C expected = ref::inner(psi, ref::matvec(ref::embed(4, h, subset), psi));
        CHECK(std::abs(expected.imag()) < 1e-12);
        CHECK_THAT(ano::expectation(StateVector(4, psi), subset, from_ref(h)),
                   WithinAbs(expected.real(), 1e-10));
    }
}

TEST_CASE("phi gradient of the expectation") {
    const StateVector zero = ano::zero_state(1);
    const std::vector<int> q1{1};
    CHECK(ano::expectation_gradient_phi(zero, q1, 1) == std::vector<double>{1, 0, 0, 0});

    const double s = 1.0 / std::sqrt(2.0);
    const StateVector plus(1, {s, s});
    const auto g = ano::expectation_gradient_phi(plus, q1, 1);
    const std::vector<double> expected{0.5, 0.5, 1.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        CHECK_THAT(g[i], WithinAbs(expected[i], 1e-15));
    }

    // Central differences on random 3-qubit states; <H(phi)> is linear, so
    // the difference quotient is exact up to rounding.
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi(3, ref::random_state(3, rng));
        const std::vector<int> subset{1, 3};
        auto p = random_params(2, rng);
        const auto analytic = ano::expectation_gradient_phi(psi, subset, 2);
        const double h = 1e-4;
        for (std::size_t i = 0; i < p.phi.size(); ++i) {
            const double saved = p.phi[i];
            p.phi[i] = saved + h;
            const double up = ano::expectation(psi, subset, ano::to_matrix(p));
            p.phi[i] = saved - h;
            const double down = ano::expectation(psi, subset, ano::to_matrix(p));
            p.phi[i] = saved;
            const double fd = (up - down) / (2 * h);
            CHECK(std::abs(analytic[i] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
        // Independent of phi.
        const auto rho = ano::reduced_density_matrix(psi, subset);
        CHECK(ano::expectation_gradient_phi(rho) == analytic);
    }
}

TEST_CASE("eigen spectrum") {
    const auto z = ano::to_matrix(HermitianParams::pauli_z_string(1));
    CHECK(ano::eigen_spectrum(z) == std::vector<double>{-1.0, 1.0});
    const auto id = ano::to_matrix(params(2, {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    for (double v : ano::eigen_spectrum(id)) {
        CHECK_THAT(v, WithinAbs(1.0, 1e-14));
    }

    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = ano::to_matrix(random_params(1, rng));
        const auto [lo, hi] = ref::eig2(as_ref(h.dense()));
        const auto spec = ano::eigen_spectrum(h);
        CHECK_THAT(spec[0], WithinAbs(lo, 1e-12));
        CHECK_THAT(spec[1], WithinAbs(hi, 1e-12));
    }
    for (int k = 1; k <= 4; ++k) {
        const auto h = ano::to_matrix(random_params(k, rng));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.dense());
        const ComplexMatrix recon = es.eigenvectors() * es.eigenvalues().asDiagonal() *
                                    es.eigenvectors().adjoint();
        CHECK((recon - h.dense()).norm() <= 1e-8 * h.dense().norm());
        const auto spec = ano::eigen_spectrum(h);
        CHECK(std::is_sorted(spec.begin(), spec.end()));
    }
}

TEST_CASE("unitary similarity") {
    const auto z = ano::to_matrix(HermitianParams::pauli_z_string(1));
    const auto x = ano::to_matrix(params(1, {0, 0, 1, 0}));
    const auto d = ano::to_matrix(params(1, {2, -1, 0, 0}));
    CHECK(ano::unitarily_similar(z, x));
    CHECK_FALSE(ano::unitarily_similar(z, d));
    const auto big = ano::to_matrix(HermitianParams::pauli_z_string(2));
    CHECK_THROWS_AS(ano::unitarily_similar(z, big), ano::InputError);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + trial % 2;
        const int n = k;
        const auto hp = random_params(k, rng);
        // U from a product of random rotations and CNOTs.
        ref::Mat unitary = ref::Mat::identity(std::size_t{1} << n);
        for (int step = 0; step < 6; ++step) {
            for (int q = 1; q <= n; ++q) {
                unitary = ref::matmul(ref::on_qubit(n, ref::rz(u(rng)), q), unitary);
                unitary = ref::matmul(ref::on_qubit(n, ref::ry(u(rng)), q), unitary);
            }
            if (n > 1) {
                unitary = ref::matmul(ref::cnot(n, 1, 2), unitary);
            }
        }
        const auto h = ano::to_matrix(hp);
        const auto conj = ref::matmul(ref::dagger(unitary), ref::matmul(as_ref(h.dense()), unitary));
        CHECK(ano::unitarily_similar(h, from_ref(conj)));
    }
}

TEST_CASE("Pauli class is closed under single-qubit rotations") {
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = ref::matmul(ref::rz(u(rng)), ref::matmul(ref::ry(u(rng)), ref::rz(u(rng))));
        const auto h = ref::matmul(ref::dagger(r), ref::matmul(ref::pauli_z(), r));
        const auto spec = ano::eigen_spectrum(from_ref(h));
        CHECK_THAT(spec[0], WithinAbs(-1.0, 1e-10));
        CHECK_THAT(spec[1], WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("Rayleigh bounds contain every expectation") {
    const auto z = ano::to_matrix(HermitianParams::pauli_z_string(1));
    CHECK(ano::rayleigh_bounds(z) == std::pair<double, double>{-1.0, 1.0});
    const auto three = ano::to_matrix(params(1, {3, 3, 0, 0}));
    CHECK(ano::rayleigh_bounds(three) == std::pair<double, double>{3.0, 3.0});

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector psi(1, ref::random_state(1, rng));
        CHECK_THAT(ano::expectation(psi, std::vector<int>{1}, three), WithinAbs(3.0, 1e-12));
    }
    const auto h = ano::to_matrix(random_params(2, rng));
    const auto [lo, hi] = ano::rayleigh_bounds(h);
    for (int trial = 0; trial < 1000; ++trial) {
        const StateVector psi(3, ref::random_state(3, rng));
        const double e = ano::expectation(psi, std::vector<int>{3, 1}, h);
        CHECK(e >= lo - 1e-10);
        CHECK(e <= hi + 1e-10);
    }
}
