// Copyright 2026 The pce-mincut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations shared by the test binaries. Nothing
// here calls into the fast kernels it is used to check.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <bit>
#include <random>
#include <vector>

#include "pce/encoding.hpp"
#include "pce/graph.hpp"

namespace testsupport {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat pauli_matrix(pce::Pauli p) {
    Mat m(2, 2);
    switch (p) {
    case pce::Pauli::I: m << 1, 0, 0, 1; break;
    case pce::Pauli::X: m << 0, 1, 1, 0; break;
    case pce::Pauli::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
    case pce::Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

/// Qubit 0 is the leftmost tensor factor.
inline Mat string_matrix(const std::vector<pce::Pauli> &letters) {
    Mat out = Mat::Identity(1, 1);
    for (pce::Pauli p : letters) {
        out = kron(out, pauli_matrix(p));
    }
    return out;
}

inline Mat on_qubit(const Mat &gate, std::size_t q, std::size_t m) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t k = 0; k < m; ++k) {
        out = kron(out, k == q ? gate : Mat(Mat::Identity(2, 2)));
    }
    return out;
}

inline Mat ry(double t) {
    Mat g(2, 2);
    g << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return g;
}

inline Mat rz(double p) {
    Mat g(2, 2);
    g << std::polar(1.0, -p / 2), 0, 0, std::polar(1.0, p / 2);
    return g;
}

inline Mat cz(std::size_t a, std::size_t b, std::size_t m) {
    // (I - Z_a - Z_b + Z_a Z_b) / 2 projects onto |11>; CZ = I - 2 P11.
    const Mat one = Mat::Identity(2, 2);
    Mat p1(2, 2);
    p1 << 0, 0, 0, 1;
    Mat proj = Mat::Identity(1, 1);
    for (std::size_t k = 0; k < m; ++k) {
        proj = kron(proj, (k == a || k == b) ? p1 : one);
    }
    const auto dim = static_cast<Eigen::Index>(1) << m;
    return Mat::Identity(dim, dim) - 2.0 * proj;
}

/// Dense product of every gate of the brickwork ansatz, applied to |0..0>.
inline Vec dense_state(std::size_t m, const std::vector<double> &theta,
                       std::size_t layers) {
    const auto dim = static_cast<Eigen::Index>(1) << m;
    Vec psi = Vec::Zero(dim);
    psi(0) = 1.0;
    std::size_t p = 0;
    auto column = [&] {
        for (std::size_t q = 0; q < m; ++q) {
            psi = on_qubit(ry(theta[p]), q, m) * psi;
            psi = on_qubit(rz(theta[p + 1]), q, m) * psi;
            p += 2;
        }
    };
    for (std::size_t l = 0; l < layers; ++l) {
        column();
        for (std::size_t q = 0; q + 1 < m; q += 2) {
            psi = cz(q, q + 1, m) * psi;
        }
        column();
        for (std::size_t q = 1; q + 1 < m; q += 2) {
            psi = cz(q, q + 1, m) * psi;
        }
    }
    column();
    return psi;
}

inline double dense_expectation(const Vec &psi,
                                const std::vector<pce::Pauli> &letters) {
    const cd v = psi.dot(string_matrix(letters) * psi); // conj(psi)^T P psi
    return v.real();
}

/// Cut by the textbook definition: sum over unordered pairs with opposite
/// labels, reading weights through weight(i, j) only.
inline double brute_cut(const pce::WeightedGraph &g,
                        const std::vector<int> &z) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (z[i] * z[j] < 0) {
                s += g.weight(i, j);
            }
        }
    }
    return s;
}

/// Minimum cut over all c : n-c splits by scanning every bitmask.
inline double brute_min_cut(const pce::WeightedGraph &g, std::size_t c) {
    const std::size_t n = g.n();
    double best = INFINITY;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != c) {
            continue;
        }
        std::vector<int> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = (mask >> i) & 1 ? -1 : 1;
        }
        best = std::min(best, brute_cut(g, z));
    }
    return best;
}

inline pce::WeightedGraph random_graph(std::size_t n, std::uint64_t seed,
                                       double p_edge = 0.7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> w(0.1, 2.0);
    std::bernoulli_distribution keep(p_edge);
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = keep(rng) ? w(rng) : 0.0;
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    return pce::WeightedGraph(n, std::move(m));
}

inline pce::WeightedGraph path_graph(std::size_t n) {
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m[i * n + i + 1] = 1.0;
        m[(i + 1) * n + i] = 1.0;
    }
    return pce::WeightedGraph(n, std::move(m));
}

inline pce::WeightedGraph unit_complete(std::size_t n) {
    return pce::generate_complete_graph(n, pce::UnitWeights{}, 0);
}

} // namespace testsupport
