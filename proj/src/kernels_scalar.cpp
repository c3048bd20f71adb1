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

#include "kernels_impl.hpp"

namespace ano::kernels::scalar {

void rotate_pairs(double *data, std::size_t n, std::size_t stride,
                  const Real2x2 &m) {
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const double a = lo[j];
            const double b = hi[j];
            lo[j] = m.m00 * a + m.m01 * b;
            hi[j] = m.m10 * a + m.m11 * b;
        }
    }
}

void complex_pairs(double *data, std::size_t n, std::size_t stride,
                   const Complex2x2 &m) {
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; j += 2) {
            const std::complex<double> a{lo[j], lo[j + 1]};
            const std::complex<double> b{hi[j], hi[j + 1]};
            const auto x = m.m00 * a + m.m01 * b;
            const auto y = m.m10 * a + m.m11 * b;
            lo[j] = x.real();
            lo[j + 1] = x.imag();
            hi[j] = y.real();
            hi[j + 1] = y.imag();
        }
    }
}

double generator_y_inner(const double *lam, const double *psi, std::size_t n,
                         std::size_t stride) {
    double acc = 0.0;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) {
            acc += lam[base + stride + j] * psi[base + j] -
                   lam[base + j] * psi[base + stride + j];
        }
    }
    return acc;
}

double dot(const double *a, const double *b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double cross_dot(const double *a, const double *b, std::size_t n) {
    // conj(b) * a = (br - i bi)(ar + i ai); imaginary part br*ai - bi*ar
    double acc = 0.0;
    for (std::size_t i = 0; i < n; i += 2) {
        acc += b[i] * a[i + 1] - b[i + 1] * a[i];
    }
    return acc;
}

} // namespace ano::kernels::scalar

namespace ano::kernels {

const KernelTable &scalar_table() {
    static const KernelTable table{
        "scalar",
        &scalar::rotate_pairs,
        &scalar::complex_pairs,
        &scalar::generator_y_inner,
        &scalar::dot,
        &scalar::cross_dot,
    };
    return table;
}

} // namespace ano::kernels
