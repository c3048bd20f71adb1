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
#include "ano/statevec.hpp"
#include "reference.hpp"

using ano::Axis;
using ano::Complex;
using ano::StateVector;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<Complex> amps(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

ref::Mat as_ref(const ano::Gate2x2 &g) { return ref::mat2(g(0, 0), g(0, 1), g(1, 0), g(1, 1)); }

ano::Gate2x2 random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    const auto a = ref::matmul(ref::rz(u(rng)), ref::matmul(ref::ry(u(rng)), ref::rz(u(rng))));
    const Complex phase = std::exp(Complex(0.0, u(rng)));
    ano::Gate2x2 g;
    for (int i = 0; i < 4; ++i) {
        g.m[i] = phase * a.a[i];
    }
    return g;
}

double norm2(const StateVector &s) {
    double acc = 0.0;
    for (const auto &z : s.amplitudes()) {
        acc += std::norm(z);
    }
    return acc;
}

} // namespace

TEST_CASE("zero_state puts all weight on index 0") {
    for (int n : {1, 2, 4}) {
        const StateVector s = ano::zero_state(n);
        REQUIRE(s.size() == (std::size_t{1} << n));
        CHECK(s[0] == Complex(1.0, 0.0));
        for (std::size_t i = 1; i < s.size(); ++i) {
            CHECK(s[i] == Complex(0.0, 0.0));
        }
    }
    CHECK_THROWS_AS(ano::zero_state(0), ano::ConfigError);
    CHECK_THROWS_AS(ano::zero_state(21), ano::ConfigError);
}

TEST_CASE("gate_rotation closed forms") {
    const auto id = ano::gate_rotation(Axis::y, 0.0);
    CHECK(id(0, 0) == Complex(1.0));
    CHECK(id(0, 1) == Complex(0.0));
    CHECK(id(1, 1) == Complex(1.0));

    const auto ry_pi = ano::gate_rotation(Axis::y, std::numbers::pi);
    CHECK_THAT(ry_pi(0, 0).real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(ry_pi(0, 1).real(), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(ry_pi(1, 0).real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(ry_pi(1, 1).real(), WithinAbs(0.0, 1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = u(rng);
        const auto z = ano::gate_rotation(Axis::z, t);
        CHECK(std::abs(z(0, 0) - std::exp(Complex(0, -t / 2))) < 1e-15);
        CHECK(std::abs(z(1, 1) - std::exp(Complex(0, t / 2))) < 1e-15);
        CHECK(z(0, 1) == Complex(0.0));
        for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
            const auto g = ano::gate_rotation(axis, t);
            CHECK(g.is_unitary(1e-12));
            CHECK_THAT(std::abs(g.determinant()), WithinAbs(1.0, 1e-12));
        }
        const auto x = ano::gate_rotation(Axis::x, t);
        CHECK(ref::max_diff(std::vector<Complex>(x.m.begin(), x.m.end()), ref::rx(t).a) < 1e-15);
    }
    CHECK_THROWS_AS(ano::gate_rotation(Axis::y, std::nan("")), ano::InputError);
    CHECK_THROWS_AS(ano::gate_rotation(Axis::x, INFINITY), ano::InputError);
}

TEST_CASE("apply_single_qubit small cases") {
    const StateVector plus = ano::apply_single_qubit(ano::zero_state(1), ano::gate_hadamard(), 1);
    CHECK_THAT(plus[0].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(plus[1].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));

    std::mt19937_64 rng(3);
    const auto psi = ref::random_state(3, rng);
    const StateVector same = ano::apply_single_qubit(StateVector(3, psi), ano::gate_identity(), 2);
    CHECK(amps(same) == psi);

    CHECK_THROWS_AS(ano::apply_single_qubit(StateVector(3, psi), ano::gate_identity(), 0),
                    ano::InputError);
    CHECK_THROWS_AS(ano::apply_single_qubit(StateVector(3, psi), ano::gate_identity(), 4),
                    ano::InputError);
}

TEST_CASE("apply_single_qubit matches dense Kronecker products") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> pick(1, n);
            const int target = pick(rng);
            const auto g = random_unitary(rng);
            const auto psi = ref::random_state(n, rng);
            const auto expected = ref::matvec(ref::on_qubit(n, as_ref(g), target), psi);
            const StateVector got = ano::apply_single_qubit(StateVector(n, psi), g, target);
            CHECK(ref::max_diff(amps(got), expected) < 1e-12);
            CHECK_THAT(norm2(got), WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("apply_cnot small cases and dense oracle") {
    const StateVector s10(2, {0.0, 0.0, 1.0, 0.0});
    const StateVector out = ano::apply_cnot(s10, 1, 2);
    CHECK(out[3] == Complex(1.0));
    CHECK(out[2] == Complex(0.0));
    const StateVector s00 = ano::apply_cnot(ano::zero_state(2), 1, 2);
    CHECK(s00[0] == Complex(1.0));

    CHECK_THROWS_AS(ano::apply_cnot(ano::zero_state(2), 1, 1), ano::InputError);
    CHECK_THROWS_AS(ano::apply_cnot(ano::zero_state(2), 1, 3), ano::InputError);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> pick_n(2, 6);
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick(1, n);
        int c = pick(rng), t = pick(rng);
        while (t == c) {
            t = pick(rng);
        }
        const auto psi = ref::random_state(n, rng);
        const auto expected = ref::matvec(ref::cnot(n, c, t), psi);
        CHECK(ref::max_diff(amps(ano::apply_cnot(StateVector(n, psi), c, t)), expected) < 1e-15);
    }
}

TEST_CASE("fused CNOT chain equals the gate-by-gate chain") {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 7; ++n) {
        const auto psi = ref::random_state(n, rng);
        StateVector fused(n, psi);
        fused.apply_cnot_chain();
        StateVector slow(n, psi);
        for (int q = 1; q < n; ++q) {
            slow.apply_cnot(q, q + 1);
        }
        CHECK(fused == slow);
        fused.apply_cnot_chain_inverse();
        CHECK(ref::max_diff(amps(fused), psi) == 0.0);
    }
}

TEST_CASE("real statevector agrees with the complex one") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int n = 1; n <= 8; ++n) {
        std::vector<double> v(std::size_t{1} << n);
        double s = 0.0;
        for (double &x : v) {
            x = g(rng);
            s += x * x;
        }
        for (double &x : v) {
            x /= std::sqrt(s);
        }
        ano::RealStateVector real(n, v);
        StateVector cplx(n, std::vector<Complex>(v.begin(), v.end()));
        for (int step = 0; step < 3 * n; ++step) {
            std::uniform_int_distribution<int> pick(1, n);
            const int q = pick(rng);
            const double t = u(rng);
            real.apply_ry(t, q);
            cplx.apply(ano::gate_rotation(Axis::y, t), q);
            if (n > 1) {
                real.apply_cnot_chain();
                cplx.apply_cnot_chain();
            }
        }
        CHECK(ref::max_diff(amps(ano::to_complex(real)), amps(cplx)) < 1e-12);
    }
    ano::RealStateVector r(1);
    CHECK_THROWS_AS(r.apply(ano::gate_rotation(Axis::z, 0.3), 1), ano::InputError);
}

TEST_CASE("norm is preserved over long gate sequences") {
    std::mt19937_64 rng(99);
    const int n = 6;
    StateVector s(n, ref::random_state(n, rng));
    std::uniform_int_distribution<int> pick(1, n);
    for (int step = 0; step < 2000; ++step) {
        if (step % 3 == 0) {
            int c = pick(rng), t = pick(rng);
            if (c != t) {
                s.apply_cnot(c, t);
            }
        } else {
            s.apply(random_unitary(rng), pick(rng));
        }
    }
    CHECK_THAT(norm2(s), WithinAbs(1.0, 1e-10));
}

TEST_CASE("gates on disjoint qubits commute") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5;
        const auto psi = ref::random_state(n, rng);
        const auto g1 = random_unitary(rng), g2 = random_unitary(rng);
        StateVector a(n, psi), b(n, psi);
        a.apply(g1, 2);
        a.apply(g2, 4);
        b.apply(g2, 4);
        b.apply(g1, 2);
        CHECK(ref::max_diff(amps(a), amps(b)) < 1e-12);
    }
}
