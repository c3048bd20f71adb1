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

// Internal declarations shared by the per-ISA kernel translation units.

#pragma once

#include "ano/kernels.hpp"

namespace ano::kernels::scalar {

void rotate_pairs(double *data, std::size_t n, std::size_t stride,
                  const Real2x2 &m);
void complex_pairs(double *data, std::size_t n, std::size_t stride,
                   const Complex2x2 &m);
double generator_y_inner(const double *lam, const double *psi, std::size_t n,
                         std::size_t stride);
double dot(const double *a, const double *b, std::size_t n);
double cross_dot(const double *a, const double *b, std::size_t n);

} // namespace ano::kernels::scalar

namespace ano::kernels::detail {

/// Defined in kernels_avx2.cpp; returns nullptr when compiled without AVX2.
const KernelTable *avx2_table_if_built();

/// Defined in kernels_neon.cpp; returns nullptr off AArch64.
const KernelTable *neon_table_if_built();

} // namespace ano::kernels::detail
