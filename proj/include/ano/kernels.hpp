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

// Data-parallel inner loops of the simulator.
//
// Every kernel works on a flat array of doubles. A complex amplitude array is
// viewed as interleaved (re, im) doubles, so a real-valued 2x2 gate acting on
// complex amplitudes is the same "pair rotation" as on real amplitudes, just
// with twice the stride. Strides are always given in doubles.
//
// A pair group is a block of 2*stride doubles: elements [0, stride) are the
// "lo" halves (target bit 0), elements [stride, 2*stride) the "hi" halves.
//
// Each kernel has a scalar reference implementation and SIMD variants that are
// selected at runtime from the host CPU. The scalar table is always available
// and is the oracle in the equivalence tests.

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace ano::kernels {

struct Real2x2 {
    double m00, m01, m10, m11;
};

struct Complex2x2 {
    std::complex<double> m00, m01, m10, m11;
};

struct KernelTable {
    std::string_view name;

    /// (lo, hi) <- (m00*lo + m01*hi, m10*lo + m11*hi) over every pair.
    void (*rotate_pairs)(double *data, std::size_t n, std::size_t stride,
                         const Real2x2 &m);

    /// General complex 2x2 on interleaved complex data; `stride` in doubles.
    void (*complex_pairs)(double *data, std::size_t n, std::size_t stride,
                          const Complex2x2 &m);

    /// Sum over pairs of (lam_hi*psi_lo - lam_lo*psi_hi).
    ///
    /// With lam = M|psi> this is d<psi|Ry(t)^T M Ry(t)|psi>/dt at t = 0 for
    /// real data, and its real part for interleaved complex data.
    double (*generator_y_inner)(const double *lam, const double *psi,
                                std::size_t n, std::size_t stride);

    /// Sum of a[i]*b[i].
    double (*dot)(const double *a, const double *b, std::size_t n);

    /// Imaginary part of sum conj(b_j) * a_j over interleaved complex data.
    double (*cross_dot)(const double *a, const double *b, std::size_t n);
};

const KernelTable &scalar_table();

/// nullptr when the build or the host CPU lacks AVX2+FMA.
const KernelTable *avx2_table();

/// nullptr unless built for AArch64.
const KernelTable *neon_table();

/// The table used by the simulator. Defaults to the widest variant supported
/// by the host; the ANO_KERNELS environment variable ("scalar", "avx2",
/// "neon") overrides the choice at first use.
const KernelTable &active();

/// Force a backend by name. Returns false (and changes nothing) when the
/// backend is unknown or not supported on this host.
bool select(std::string_view name);

} // namespace ano::kernels
