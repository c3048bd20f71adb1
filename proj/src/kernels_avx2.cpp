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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here may run before the runtime CPU check in kernels_dispatch.cpp.

#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace ano::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void rotate_pairs(double *data, std::size_t n, std::size_t stride,
                  const Real2x2 &m) {
    if (n < 4) {
        scalar::rotate_pairs(data, n, stride, m);
        return;
    }
    if (stride == 1) {
        // [l0 h0 l1 h1]
        const __m256d a = _mm256_setr_pd(m.m00, m.m11, m.m00, m.m11);
        const __m256d b = _mm256_setr_pd(m.m01, m.m10, m.m01, m.m10);
        for (std::size_t i = 0; i < n; i += 4) {
            const __m256d v = _mm256_loadu_pd(data + i);
            const __m256d s = _mm256_permute_pd(v, 0b0101);
            _mm256_storeu_pd(data + i, _mm256_fmadd_pd(a, v, _mm256_mul_pd(b, s)));
        }
        return;
    }
    if (stride == 2) {
        // [l0 l1 h0 h1]
        const __m256d a = _mm256_setr_pd(m.m00, m.m00, m.m11, m.m11);
        const __m256d b = _mm256_setr_pd(m.m01, m.m01, m.m10, m.m10);
        for (std::size_t i = 0; i < n; i += 4) {
            const __m256d v = _mm256_loadu_pd(data + i);
            const __m256d s = _mm256_permute2f128_pd(v, v, 0x01);
            _mm256_storeu_pd(data + i, _mm256_fmadd_pd(a, v, _mm256_mul_pd(b, s)));
        }
        return;
    }
    const __m256d m00 = _mm256_set1_pd(m.m00);
    const __m256d m01 = _mm256_set1_pd(m.m01);
    const __m256d m10 = _mm256_set1_pd(m.m10);
    const __m256d m11 = _mm256_set1_pd(m.m11);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; j += 4) {
            const __m256d x = _mm256_loadu_pd(lo + j);
            const __m256d y = _mm256_loadu_pd(hi + j);
            _mm256_storeu_pd(lo + j, _mm256_fmadd_pd(m00, x, _mm256_mul_pd(m01, y)));
            _mm256_storeu_pd(hi + j, _mm256_fmadd_pd(m10, x, _mm256_mul_pd(m11, y)));
        }
    }
}

namespace {

// m * v for a broadcast complex scalar m and two interleaved complex values v.
inline __m256d cmul(__m256d mr, __m256d mi, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(mr, v, _mm256_mul_pd(mi, swapped));
}

} // namespace

void complex_pairs(double *data, std::size_t n, std::size_t stride,
                   const Complex2x2 &m) {
    if (stride < 4) {
        scalar::complex_pairs(data, n, stride, m);
        return;
    }
    const __m256d r00 = _mm256_set1_pd(m.m00.real()), i00 = _mm256_set1_pd(m.m00.imag());
    const __m256d r01 = _mm256_set1_pd(m.m01.real()), i01 = _mm256_set1_pd(m.m01.imag());
    const __m256d r10 = _mm256_set1_pd(m.m10.real()), i10 = _mm256_set1_pd(m.m10.imag());
    const __m256d r11 = _mm256_set1_pd(m.m11.real()), i11 = _mm256_set1_pd(m.m11.imag());
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        double *lo = data + base;
        double *hi = lo + stride;
        for (std::size_t j = 0; j < stride; j += 4) {
            const __m256d x = _mm256_loadu_pd(lo + j);
            const __m256d y = _mm256_loadu_pd(hi + j);
            const __m256d nx = _mm256_add_pd(cmul(r00, i00, x), cmul(r01, i01, y));
            const __m256d ny = _mm256_add_pd(cmul(r10, i10, x), cmul(r11, i11, y));
            _mm256_storeu_pd(lo + j, nx);
            _mm256_storeu_pd(hi + j, ny);
        }
    }
}

double generator_y_inner(const double *lam, const double *psi, std::size_t n,
                         std::size_t stride) {
    if (stride < 4) {
        return scalar::generator_y_inner(lam, psi, n, stride);
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        const double *llo = lam + base;
        const double *lhi = llo + stride;
        const double *plo = psi + base;
        const double *phi = plo + stride;
        for (std::size_t j = 0; j < stride; j += 4) {
            const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(lhi + j),
                                            _mm256_loadu_pd(plo + j));
            acc = _mm256_add_pd(
                acc, _mm256_fnmadd_pd(_mm256_loadu_pd(llo + j),
                                      _mm256_loadu_pd(phi + j), t));
        }
    }
    return hsum(acc);
}

double dot(const double *a, const double *b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                               _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double cross_dot(const double *a, const double *b, std::size_t n) {
    // lanes: [ar*bi, ai*br, ...]; result is sum(odd) - sum(even)
    const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d bs = _mm256_permute_pd(_mm256_loadu_pd(b + i), 0b0101);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), bs, acc);
    }
    double total = hsum(_mm256_mul_pd(acc, sign));
    if (i < n) {
        total += scalar::cross_dot(a + i, b + i, n - i);
    }
    return total;
}

} // namespace ano::kernels::avx2

namespace ano::kernels::detail {

const KernelTable *avx2_table_if_built() {
    static const KernelTable table{
        "avx2",
        &avx2::rotate_pairs,
        &avx2::complex_pairs,
        &avx2::generator_y_inner,
        &avx2::dot,
        &avx2::cross_dot,
    };
    return &table;
}

} // namespace ano::kernels::detail

#else

namespace ano::kernels::detail {

const KernelTable *avx2_table_if_built() { return nullptr; }

} // namespace ano::kernels::detail

#endif
