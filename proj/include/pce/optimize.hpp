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

/// Gradient-free minimization (Nelder-Mead) and parameter initialization.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pce/errors.hpp"
#include "pce/random.hpp"

namespace pce {

struct OptimizerConfig {
    std::string method = "nelder_mead";
    std::size_t max_evals = 0; ///< 0 selects 400 * dimension
    double x_tol = 1e-6;       ///< max |x_i - x_best|_inf over the simplex
    double f_tol = 1e-8;       ///< max |f_i - f_best| over the simplex
    double initial_step = 0.5; ///< axis-aligned simplex edge length
    std::uint64_t seed = 0;
    bool record_trace = false;

    [[nodiscard]] std::size_t eval_budget(std::size_t dim) const {
        return max_evals == 0 ? 400 * dim : max_evals;
    }

    friend bool operator==(const OptimizerConfig &,
                           const OptimizerConfig &) = default;
};

struct TracePoint {
    std::size_t eval = 0; ///< 1-based evaluation index
    double value = 0.0;
    double best = 0.0; ///< incumbent after this evaluation
};

struct OptimizeResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    std::size_t evals = 0;
    bool converged = false;
    std::vector<TracePoint> trace;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

struct BudgetExhausted {};

inline std::string format_vector(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << (i ? ", " : "") << x[i];
    }
    os << ']';
    return os.str();
}

} // namespace detail

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5. Stops when both the simplex extent (x_tol) and the value
/// spread (f_tol) are within tolerance, or when the evaluation budget is
/// spent. Never evaluates more than the budget.
template <class F>
OptimizeResult nelder_mead(F &&f, std::vector<double> x0,
                           const OptimizerConfig &cfg) {
    const std::size_t dim = x0.size();
    if (dim == 0) {
        throw ParameterError("minimize: empty parameter vector");
    }
    if (!(cfg.x_tol > 0.0) || !(cfg.f_tol > 0.0)) {
        throw ParameterError("minimize: tolerances must be positive");
    }
    const std::size_t budget = cfg.eval_budget(dim);
    if (budget < dim + 1) {
        throw ParameterError("minimize: max_evals must be >= dimension + 1");
    }

    OptimizeResult res;
    res.best_value = std::numeric_limits<double>::infinity();

    const auto eval = [&](const std::vector<double> &x) {
        if (res.evals >= budget) {
            throw detail::BudgetExhausted{};
        }
        const double v = f(std::span<const double>(x));
        ++res.evals;
        if (!std::isfinite(v)) {
            throw OptimizerAbort("objective returned " + std::to_string(v) +
                                 " at parameters " + detail::format_vector(x));
        }
        if (v < res.best_value) {
            res.best_value = v;
            res.best_params = x;
        }
        if (cfg.record_trace) {
            res.trace.push_back({res.evals, v, res.best_value});
        }
        return v;
    };

    std::vector<std::vector<double>> sim(dim + 1, x0);
    std::vector<double> fv(dim + 1);
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    std::vector<double> xr(dim), xe(dim), xc(dim);

    try {
        fv[0] = eval(sim[0]);
        for (std::size_t i = 0; i < dim; ++i) {
            sim[i + 1][i] += cfg.initial_step;
            fv[i + 1] = eval(sim[i + 1]);
        }

        while (true) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return fv[a] < fv[b];
                             });
            {
                std::vector<std::vector<double>> s2(dim + 1);
                std::vector<double> f2(dim + 1);
                for (std::size_t i = 0; i <= dim; ++i) {
                    s2[i] = std::move(sim[order[i]]);
                    f2[i] = fv[order[i]];
                }
                sim.swap(s2);
                fv.swap(f2);
            }

            double xspread = 0.0;
            double fspread = 0.0;
            for (std::size_t i = 1; i <= dim; ++i) {
                fspread = std::max(fspread, std::abs(fv[i] - fv[0]));
                for (std::size_t j = 0; j < dim; ++j) {
                    xspread =
                        std::max(xspread, std::abs(sim[i][j] - sim[0][j]));
                }
            }
            if (xspread <= cfg.x_tol && fspread <= cfg.f_tol) {
                res.converged = true;
                break;
            }

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    centroid[j] += sim[i][j];
                }
            }
            for (double &v : centroid) {
                v /= static_cast<double>(dim);
            }
            const auto &worst = sim[dim];

            for (std::size_t j = 0; j < dim; ++j) {
                xr[j] = 2.0 * centroid[j] - worst[j];
            }
            const double fr = eval(xr);

            if (fr < fv[0]) {
                for (std::size_t j = 0; j < dim; ++j) {
                    xe[j] = 3.0 * centroid[j] - 2.0 * worst[j];
                }
                const double fe = eval(xe);
                if (fe < fr) {
                    sim[dim] = xe;
                    fv[dim] = fe;
                } else {
                    sim[dim] = xr;
                    fv[dim] = fr;
                }
                continue;
            }
            if (fr < fv[dim - 1]) {
                sim[dim] = xr;
                fv[dim] = fr;
                continue;
            }

            bool shrink = false;
            if (fr < fv[dim]) {
                for (std::size_t j = 0; j < dim; ++j) {
                    xc[j] = 1.5 * centroid[j] - 0.5 * worst[j];
                }
                const double fc = eval(xc);
                if (fc <= fr) {
                    sim[dim] = xc;
                    fv[dim] = fc;
                } else {
                    shrink = true;
                }
            } else {
                for (std::size_t j = 0; j < dim; ++j) {
                    xc[j] = 0.5 * centroid[j] + 0.5 * worst[j];
                }
                const double fc = eval(xc);
                if (fc < fv[dim]) {
                    sim[dim] = xc;
                    fv[dim] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t i = 1; i <= dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        sim[i][j] = sim[0][j] + 0.5 * (sim[i][j] - sim[0][j]);
                    }
                    fv[i] = eval(sim[i]);
                }
            }
        }
    } catch (const detail::BudgetExhausted &) {
        res.converged = false;
    }
    return res;
}

namespace detail {

using MethodFn = OptimizeResult (*)(const Objective &, std::vector<double>,
                                    const OptimizerConfig &);

inline const std::map<std::string, MethodFn> &method_registry() {
    static const std::map<std::string, MethodFn> registry{
        {"nelder_mead",
         [](const Objective &f, std::vector<double> x0,
            const OptimizerConfig &cfg) {
             return nelder_mead(f, std::move(x0), cfg);
         }},
    };
    return registry;
}

} // namespace detail

/// Dispatches on cfg.method.
inline OptimizeResult minimize(const Objective &f, std::vector<double> x0,
                               const OptimizerConfig &cfg) {
    const auto &reg = detail::method_registry();
    const auto it = reg.find(cfg.method);
    if (it == reg.end()) {
        throw ParameterError("unknown optimizer method '" + cfg.method + "'");
    }
    return it->second(f, std::move(x0), cfg);
}

inline std::vector<double> random_init(std::size_t dim, std::uint64_t seed,
                                       double lo = -std::numbers::pi,
                                       double hi = std::numbers::pi) {
    if (dim < 1) {
        throw ParameterError("random_init: need dim >= 1");
    }
    Rng rng(seed);
    std::vector<double> x(dim);
    for (double &v : x) {
        v = uniform(rng, lo, hi);
    }
    return x;
}

/// CSV rows "eval_index,value" with a header line.
inline void write_trace_csv(std::ostream &out,
                            const std::vector<TracePoint> &trace) {
    out << "eval_index,value,best\n";
    out.precision(17);
    for (const auto &t : trace) {
        out << t.eval << ',' << t.value << ',' << t.best << '\n';
    }
}

} // namespace pce
