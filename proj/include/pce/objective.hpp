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

/// Budget-constrained MinCut loss on tanh-relaxed Pauli correlators:
///
///   L = sum_{i<j} 1/2 d_ij (1 - t_i t_j) + beta (sum_i t_i - (n - 2c))^2
///       + eta ((1/n) sum_i t_i^2)^2,      t_i = tanh(alpha <Pi_i>)
///
/// The penalty is zero when exactly c soft values sit at -1.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pce/encoding.hpp"
#include "pce/errors.hpp"
#include "pce/graph.hpp"

namespace pce {

struct ObjectiveSpec {
    std::shared_ptr<const WeightedGraph> graph;
    EncodingSpec encoding;
    double alpha = 1.0;
    double beta = 0.0;
    std::size_t c = 1;
    double eta = 0.0;

    void validate() const {
        if (graph == nullptr) {
            throw ParameterError("objective has no graph");
        }
        if (c < 1 || c > graph->n() / 2) {
            throw ParameterError("budget c=" + std::to_string(c) +
                                 " outside [1, " +
                                 std::to_string(graph->n() / 2) + "]");
        }
        if (!(alpha > 0.0) || !(beta >= 0.0) || !(eta >= 0.0)) {
            throw ParameterError("need alpha > 0, beta >= 0, eta >= 0");
        }
        if (encoding.n_vars != graph->n()) {
            throw ParameterError("encoding n_vars differs from graph size");
        }
    }
};

/// t_i = tanh(alpha e_i).
inline std::vector<double> soft_values(std::span<const double> expectations,
                                       double alpha) {
    std::vector<double> t(expectations.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = std::tanh(alpha * expectations[i]);
    }
    return t;
}

inline double regularization(std::span<const double> soft, double eta,
                             std::size_t n) {
    double sq = 0.0;
    for (double v : soft) {
        sq += v * v;
    }
    const double mean = sq / static_cast<double>(n);
    return eta * mean * mean;
}

/// The relaxed cut term sum_{i<j} 1/2 d_ij (1 - t_i t_j).
inline double relaxed_cut(const WeightedGraph &g, std::span<const double> t) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double *r = g.row(i);
        double inner = 0.0;
        for (std::size_t j = i + 1; j < g.n(); ++j) {
            inner += r[j] * (1.0 - t[i] * t[j]);
        }
        s += inner;
    }
    return 0.5 * s;
}

inline double budget_penalty(std::span<const double> t, std::size_t n,
                             std::size_t c, double beta) {
    double sum = 0.0;
    for (double v : t) {
        sum += v;
    }
    const double target =
        static_cast<double>(n) - 2.0 * static_cast<double>(c);
    const double r = sum - target;
    return beta * r * r;
}

/// Loss from already-relaxed values t.
inline double loss_from_soft(const ObjectiveSpec &spec,
                             std::span<const double> t) {
    const WeightedGraph &g = *spec.graph;
    if (t.size() != g.n()) {
        throw ParameterError("loss: expected " + std::to_string(g.n()) +
                             " values, got " + std::to_string(t.size()));
    }
    double l = relaxed_cut(g, t) + budget_penalty(t, g.n(), spec.c, spec.beta);
    if (spec.eta > 0.0) {
        l += regularization(t, spec.eta, g.n());
    }
    return l;
}

inline double loss(const ObjectiveSpec &spec,
                   std::span<const double> expectations) {
    const auto t = soft_values(expectations, spec.alpha);
    return loss_from_soft(spec, t);
}

/// Sum of the c largest weighted degrees; bounds every cut that isolates
/// c nodes.
inline double beta_c(const WeightedGraph &g, std::size_t c) {
    if (c < 1 || c > g.n()) {
        throw ParameterError("beta_c: c out of range");
    }
    std::vector<double> deg(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        deg[i] = g.degree(i);
    }
    std::partial_sort(deg.begin(), deg.begin() + static_cast<long>(c),
                      deg.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        s += deg[i];
    }
    return s;
}

/// Elementwise sign with sign(0) = +1.
inline CutAssignment decode(std::span<const double> values) {
    std::vector<int> z(values.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = values[i] < 0.0 ? -1 : 1;
    }
    return CutAssignment(std::move(z));
}

/// True for a c : n-c split in either labeling.
inline bool is_feasible(const CutAssignment &z, std::size_t c) {
    const auto pc = partition_count(z);
    return std::min(pc.minus, pc.plus) == c;
}

/// Fraction of soft values with magnitude strictly above `threshold`.
inline double binarization(std::span<const double> soft,
                           double threshold = 0.9) {
    if (soft.empty()) {
        throw ParameterError("binarization of an empty assignment");
    }
    std::size_t hit = 0;
    for (double v : soft) {
        hit += std::abs(v) > threshold;
    }
    return static_cast<double>(hit) / static_cast<double>(soft.size());
}

/// Distance between the points where tanh(alpha x) crosses -level and
/// +level.
inline double plateau_width(double alpha, double level = 0.99) {
    if (!(alpha > 0.0) || !(level > 0.0 && level < 1.0)) {
        throw ParameterError("plateau_width: need alpha > 0, 0 < level < 1");
    }
    return 2.0 * std::atanh(level) / alpha;
}

} // namespace pce
