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

// Slow reference implementations for the tests. Everything here is plain
// loops over std::complex, written without the library so a shared bug
// cannot hide on both sides.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace ref {

using C = std::complex<double>;

struct Mat {
    std::size_t n = 0;
    std::vector<C> a;

    explicit Mat(std::size_t dim = 0) : n(dim), a(dim * dim) {}
    C &operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    C operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    static Mat identity(std::size_t dim) {
        Mat m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
};

inline Mat mat2(C a, C b, C c, C d) {
    Mat m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline Mat kron(const Mat &x, const Mat &y) {
    Mat out(x.n * y.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j)
            for (std::size_t k = 0; k < y.n; ++k)
                for (std::size_t l = 0; l < y.n; ++l)
                    out(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
    return out;
}

inline Mat matmul(const Mat &x, const Mat &y) {
    Mat out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k)
            for (std::size_t j = 0; j < x.n; ++j)
                out(i, j) += x(i, k) * y(k, j);
    return out;
}

inline Mat dagger(const Mat &x) {
    Mat out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j)
            out(i, j) = std::conj(x(j, i));
    return out;
}

inline std::vector<C> matvec(const Mat &m, const std::vector<C> &v) {
    std::vector<C> out(m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

inline C inner(const std::vector<C> &a, const std::vector<C> &b) {
    C s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline Mat ry(double t) {
    return mat2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
}
inline Mat rx(double t) {
    const C mi(0.0, -1.0);
    return mat2(std::cos(t / 2), mi * std::sin(t / 2), mi * std::sin(t / 2), std::cos(t / 2));
}
inline Mat rz(double t) {
    return mat2(std::exp(C(0.0, -t / 2)), 0.0, 0.0, std::exp(C(0.0, t / 2)));
}
inline Mat hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return mat2(s, s, s, -s);
}
inline Mat pauli_z() { return mat2(1.0, 0.0, 0.0, -1.0); }

/// Operator list [op_1, ..., op_n] -> op_1 (x) ... (x) op_n, qubit 1 leftmost.
inline Mat kron_all(const std::vector<Mat> &ops) {
    Mat out = Mat::identity(1);
    for (const Mat &m : ops) {
        out = kron(out, m);
    }
    return out;
}

inline Mat on_qubit(int n, const Mat &g, int target) {
    std::vector<Mat> ops(n, Mat::identity(2));
    ops[target - 1] = g;
    return kron_all(ops);
}

/// CNOT as |0><0| (x) I + |1><1| (x) X, placed with tensor products.
inline Mat cnot(int n, int control, int target) {
    Mat p0 = mat2(1.0, 0.0, 0.0, 0.0);
    Mat p1 = mat2(0.0, 0.0, 0.0, 1.0);
    Mat x = mat2(0.0, 1.0, 1.0, 0.0);
    std::vector<Mat> a(n, Mat::identity(2)), b(n, Mat::identity(2));
    a[control - 1] = p0;
    b[control - 1] = p1;
    b[target - 1] = x;
    Mat ma = kron_all(a), mb = kron_all(b);
    for (std::size_t i = 0; i < ma.a.size(); ++i) {
        ma.a[i] += mb.a[i];
    }
    return ma;
}

/// Move qubit `from` to position `to` by swapping basis bits; used to embed
/// operators on arbitrary, unordered subsets.
inline Mat swap_qubits(int n, int q1, int q2) {
    const std::size_t dim = std::size_t{1} << n;
    Mat out(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t i = (b >> (n - q1)) & 1, j = (b >> (n - q2)) & 1;
        std::size_t t = b;
        if (i != j) {
            t ^= (std::size_t{1} << (n - q1)) | (std::size_t{1} << (n - q2));
        }
        out(t, b) = 1.0;
    }
    return out;
}

/// H on `subset` (H's first tensor factor acts on subset[0]) and identity
/// elsewhere: permute the subset to the front, kron with I, permute back.
inline Mat embed(int n, const Mat &h, const std::vector<int> &subset) {
    const int k = static_cast<int>(subset.size());
    Mat front = kron(h, Mat::identity(std::size_t{1} << (n - k)));
    // Build permutation P taking subset[i] -> position i+1.
    Mat perm = Mat::identity(std::size_t{1} << n);
    std::vector<int> where(n);
    for (int q = 0; q < n; ++q) {
        where[q] = q + 1;
    }
    for (int i = 0; i < k; ++i) {
        const int cur = static_cast<int>(std::find(where.begin(), where.end(), subset[i]) - where.begin()) + 1;
        if (cur != i + 1) {
            perm = matmul(swap_qubits(n, i + 1, cur), perm);
            std::swap(where[i], where[cur - 1]);
        }
    }
    return matmul(dagger(perm), matmul(front, perm));
}

/// rho_subset = Tr_rest |psi><psi|, via the dense embedding: every entry is
/// <psi| (|b><a| on subset) |psi>.
inline Mat partial_trace(const std::vector<C> &psi, int n, const std::vector<int> &subset) {
    const std::size_t k_dim = std::size_t{1} << subset.size();
    Mat rho(k_dim);
    for (std::size_t a = 0; a < k_dim; ++a)
        for (std::size_t b = 0; b < k_dim; ++b) {
            Mat e(k_dim);
            e(b, a) = 1.0;
            rho(a, b) = inner(psi, matvec(embed(n, e, subset), psi));
        }
    return rho;
}

inline double max_diff(const std::vector<C> &a, const std::vector<C> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

inline std::vector<C> random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<C> v(std::size_t{1} << n);
    double s = 0.0;
    for (auto &z : v) {
        z = C(g(rng), g(rng));
        s += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(s);
    }
    return v;
}

/// Random Hermitian matrix from Gaussian entries, (A + A^dagger) / 2.
inline Mat random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat a(dim);
    for (auto &z : a.a) {
        z = C(g(rng), g(rng));
    }
    Mat h(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

/// Eigenvalues of a 2x2 Hermitian matrix by the quadratic formula.
inline std::pair<double, double> eig2(const Mat &h) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

} // namespace ref
