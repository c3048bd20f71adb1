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

#include <atomic>
#include <cstdlib>

#include "kernels_impl.hpp"

namespace ano::kernels {
namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *by_name(std::string_view name) {
    if (name == "scalar") {
        return &scalar_table();
    }
    if (name == "avx2") {
        return avx2_table();
    }
    if (name == "neon") {
        return neon_table();
    }
    return nullptr;
}

const KernelTable *default_table() {
    if (const char *env = std::getenv("ANO_KERNELS")) {
        if (const KernelTable *t = by_name(env)) {
            return t;
        }
    }
    if (const KernelTable *t = avx2_table()) {
        return t;
    }
    if (const KernelTable *t = neon_table()) {
        return t;
    }
    return &scalar_table();
}

std::atomic<const KernelTable *> &current() {
    static std::atomic<const KernelTable *> table{default_table()};
    return table;
}

} // namespace

const KernelTable *avx2_table() {
    static const bool ok = host_has_avx2();
    return ok ? detail::avx2_table_if_built() : nullptr;
}

const KernelTable *neon_table() { return detail::neon_table_if_built(); }

const KernelTable &active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
    const KernelTable *t = by_name(name);
    if (t == nullptr) {
        return false;
    }
    current().store(t, std::memory_order_relaxed);
    return true;
}

} // namespace ano::kernels
