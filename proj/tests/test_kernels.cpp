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

// SIMD tables against the scalar table, which is itself checked against a
// straightforward loop here.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ano/kernels.hpp"
#include "ano/statevec.hpp"

namespace k = ano::kernels;

namespace {

std::vector<double> random_doubles(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (double &x : v) {
        x = g(rng);
    }
    return v;
}

std::vector<const k::KernelTable *> simd_tables() {
    std::vector<const k::KernelTable *> out;
    if (const auto *t = k::avx2_table()) {
        out.push_back(t);
    }
    if (const auto *t = k::neon_table()) {
        out.push_back(t);
    }
    return out;
}

double max_rel(const std::vector<double> &a, const std::vector<double> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    }
    return d;
}

} // namespace

TEST_CASE("scalar rotate_pairs matches a direct loop") {
    std::mt19937_64 rng(1);
    const k::Real2x2 m{0.3, -0.7, 1.1, 0.2};
    for (std::size_t n : {2u, 8u, 64u}) {
        for (std::size_t stride = 1; stride < n; stride *= 2) {
            auto data = random_doubles(n, rng);
            auto expected = data;
            for (std::size_t base = 0; base < n; base += 2 * stride) {
                for (std::size_t i = base; i < base + stride; ++i) {
                    const double lo = data[i], hi = data[i + stride];
                    expected[i] = m.m00 * lo + m.m01 * hi;
                    expected[i + stride] = m.m10 * lo + m.m11 * hi;
                }
            }
            k::scalar_table().rotate_pairs(data.data(), n, stride, m);
            CHECK(max_rel(data, expected) < 1e-15);
        }
    }
}

TEST_CASE("scalar complex_pairs matches std::complex arithmetic") {
    std::mt19937_64 rng(2);
    const k::Complex2x2 m{{0.3, 0.1}, {-0.7, 0.5}, {1.1, -0.2}, {0.2, 0.9}};
    const std::size_t amps = 32;
    for (std::size_t stride = 1; stride < amps; stride *= 2) {
        auto data = random_doubles(2 * amps, rng);
        auto *z = reinterpret_cast<std::complex<double> *>(data.data());
        std::vector<std::complex<double>> expected(z, z + amps);
        for (std::size_t base = 0; base < amps; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const auto lo = z[i], hi = z[i + stride];
                expected[i] = m.m00 * lo + m.m01 * hi;
                expected[i + stride] = m.m10 * lo + m.m11 * hi;
            }
        }
        k::scalar_table().complex_pairs(data.data(), 2 * amps, 2 * stride, m);
        for (std::size_t i = 0; i < amps; ++i) {
            CHECK(std::abs(z[i] - expected[i]) < 1e-14);
        }
    }
}

TEST_CASE("SIMD tables agree with the scalar table") {
    const auto tables = simd_tables();
    if (tables.empty()) {
        SUCCEED("no SIMD table on this host");
        return;
    }
    std::mt19937_64 rng(3);
    const auto &ref = k::scalar_table();
    for (const auto *t : tables) {
        INFO("table " << t->name);
        for (std::size_t n = 2; n <= 4096; n *= 2) {
            for (std::size_t stride = 1; stride < n; stride *= 2) {
                const k::Real2x2 m{0.8, -0.6, 0.6, 0.8};
                auto a = random_doubles(n, rng);
                auto b = a;
                ref.rotate_pairs(a.data(), n, stride, m);
                t->rotate_pairs(b.data(), n, stride, m);
                CHECK(max_rel(b, a) < 1e-14);

                if (n >= 4 && stride % 2 == 0) {
                    const k::Complex2x2 c{{0.3, 0.1}, {-0.7, 0.5}, {1.1, -0.2}, {0.2, 0.9}};
                    auto x = random_doubles(n, rng);
                    auto y = x;
                    ref.complex_pairs(x.data(), n, stride, c);
                    t->complex_pairs(y.data(), n, stride, c);
                    CHECK(max_rel(y, x) < 1e-14);
                }

                const auto lam = random_doubles(n, rng);
                const auto psi = random_doubles(n, rng);
                const double g0 = ref.generator_y_inner(lam.data(), psi.data(), n, stride);
                const double g1 = t->generator_y_inner(lam.data(), psi.data(), n, stride);
                CHECK(std::abs(g0 - g1) <= 1e-12 * std::max(1.0, static_cast<double>(n)));
            }
            const auto a = random_doubles(n, rng);
            const auto b = random_doubles(n, rng);
            CHECK(std::abs(ref.dot(a.data(), b.data(), n) - t->dot(a.data(), b.data(), n)) <=
                  1e-12 * static_cast<double>(n));
            CHECK(std::abs(ref.cross_dot(a.data(), b.data(), n) -
                           t->cross_dot(a.data(), b.data(), n)) <= 1e-12 * static_cast<double>(n));
        }
    }
}

TEST_CASE("dot and cross_dot definitions") {
    std::mt19937_64 rng(4);
    const std::size_t amps = 17;
    const auto a = random_doubles(2 * amps, rng);
    const auto b = random_doubles(2 * amps, rng);
    const auto *za = reinterpret_cast<const std::complex<double> *>(a.data());
    const auto *zb = reinterpret_cast<const std::complex<double> *>(b.data());
    std::complex<double> s = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < amps; ++i) {
        s += std::conj(zb[i]) * za[i];
    }
    for (std::size_t i = 0; i < 2 * amps; ++i) {
        d += a[i] * b[i];
    }
    for (const auto *t : {&k::scalar_table(), k::avx2_table(), k::neon_table()}) {
        if (t == nullptr) {
            continue;
        }
        INFO("table " << t->name);
        CHECK(std::abs(t->dot(a.data(), b.data(), 2 * amps) - d) < 1e-12);
        CHECK(std::abs(t->cross_dot(a.data(), b.data(), 2 * amps) - s.imag()) < 1e-12);
    }
}

TEST_CASE("simulation results do not depend on the kernel table") {
    std::mt19937_64 rng(5);
    const int n = 10;
    const auto init = random_doubles(std::size_t{1} << n, rng);
    std::vector<std::vector<double>> results;
    for (std::string_view name : {"scalar", "avx2", "neon"}) {
        if (!k::select(name)) {
            continue;
        }
        CHECK(k::active().name == name);
        ano::RealStateVector s(n, init);
        for (int layer = 0; layer < 4; ++layer) {
            s.apply_cnot_chain();
            for (int q = 1; q <= n; ++q) {
                s.apply_ry(0.1 * q + layer, q);
            }
        }
        results.emplace_back(s.amplitudes().begin(), s.amplitudes().end());
    }
    for (const auto &r : results) {
        CHECK(max_rel(r, results.front()) < 1e-13);
    }
    CHECK_FALSE(k::select("no-such-table"));
}
