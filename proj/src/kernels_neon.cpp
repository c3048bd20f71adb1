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

// AArch64 NEON variants (128-bit, two doubles or one complex per register).

#include "kernels_impl.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace ano::kernels::neon {

void rotate_pairs(double *data, std::size_t n, std::size_t stride,
                  const Real2x2 &m) {
    if (stride < 2) {
        scalar::rotate_pairs(data, n, stride, m);
        return;
    }
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; j += 2) {
            const float64x2_t x = vld1q_f64(lo + j);
            const float64x2_t y = vld1q_f64(hi + j);
            vst1q_f64(lo + j, vfmaq_n_f64(vmulq_n_f64(y, m.m01), x, m.m00));
            vst1q_f64(hi + j, vfmaq_n_f64(vmulq_n_f64(y, m.m11), x, m.m10));
        }
    }
}

namespace {

// m * v for a complex scalar m and one complex value v = [re, im].
inline float64x2_t cmul(std::complex<double> m, float64x2_t v) {
    const float64x2_t swapped = vextq_f64(v, v, 1); // [im, re]
    const float64x2_t sign = {-m.imag(), m.imag()};
    return vfmaq_f64(vmulq_n_f64(v, m.real()), swapped, sign);
}

} // namespace

void complex_pairs(double *data, std::size_t n, std::size_t stride,
                   const Complex2x2 &m) {
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; j += 2) {
            const float64x2_t x = vld1q_f64(lo + j);
            const float64x2_t y = vld1q_f64(hi + j);
            vst1q_f64(lo + j, vaddq_f64(cmul(m.m00, x), cmul(m.m01, y)));
            vst1q_f64(hi + j, vaddq_f64(cmul(m.m10, x), cmul(m.m11, y)));
        }
    }
}

double generator_y_inner(const double *lam, const double *psi, std::size_t n,
                         std::size_t stride) {
    if (stride < 2) {
        return scalar::generator_y_inner(lam, psi, n, stride);
    }
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; j += 2) {
            const float64x2_t t = vmulq_f64(vld1q_f64(lam + base + stride + j),
                                            vld1q_f64(psi + base + j));
            acc = vaddq_f64(acc, vfmsq_f64(t, vld1q_f64(lam + base + j),
                                           vld1q_f64(psi + base + stride + j)));
        }
    }
    return vaddvq_f64(acc);
}

double dot(const double *a, const double *b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) {
        total += a[i] * b[i];
    }
    return total;
}

double cross_dot(const double *a, const double *b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; i += 2) {
        const float64x2_t bv = vld1q_f64(b + i);
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vextq_f64(bv, bv, 1));
    }
    return vgetq_lane_f64(acc, 1) - vgetq_lane_f64(acc, 0);
}

} // namespace ano::kernels::neon

namespace ano::kernels::detail {

const KernelTable *neon_table_if_built() {
    static const KernelTable table{
        "neon",
        &neon::rotate_pairs,
        &neon::complex_pairs,
        &neon::generator_y_inner,
        &neon::dot,
        &neon::cross_dot,
    };
    return &table;
}

} // namespace ano::kernels::detail

#else

namespace ano::kernels::detail {

const KernelTable *neon_table_if_built() { return nullptr; }

} // namespace ano::kernels::detail

#endif
