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

/// PCE solvers: a single fixed-alpha run and the iterative-alpha scheme
/// that re-optimizes with growing alpha, warm-started from the previous
/// parameters, until every soft value clears the threshold M.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pce/encoding.hpp"
#include "pce/errors.hpp"
#include "pce/graph.hpp"
#include "pce/objective.hpp"
#include "pce/optimize.hpp"
#include "pce/quantum.hpp"

namespace pce {

enum class AlphaMode { fixed, iterative };

enum class UpdateRule {
    arctanh_ratio, ///< alpha * atanh(M) / atanh(|t*|)
    large_scale,   ///< alpha * atanh(M) / |t*|
};

enum class Termination {
    fixed_alpha, ///< single run, no alpha schedule
    binarized,   ///< every |t_i| >= M
    outer_cap,   ///< max_outer_iters alpha updates performed
    alpha_cap,   ///< next alpha would exceed alpha_cap
};

inline std::string to_string(AlphaMode m) {
    return m == AlphaMode::fixed ? "fixed" : "iterative";
}
inline std::string to_string(UpdateRule r) {
    return r == UpdateRule::arctanh_ratio ? "arctanh_ratio" : "large_scale";
}
inline std::string to_string(Termination t) {
    switch (t) {
    case Termination::fixed_alpha: return "fixed_alpha";
    case Termination::binarized: return "binarized";
    case Termination::outer_cap: return "outer_cap";
    case Termination::alpha_cap: return "alpha_cap";
    }
    return "?";
}

/// Seed offset between an iterative run and its fixed-alpha control.
inline constexpr std::uint64_t kControlSeedOffset = 1000003;

/// Soft values are clamped to this magnitude before atanh.
inline constexpr double kArctanhClamp = 1.0 - 1e-12;

/// Multipliers below 1 + kStallTolerance are flagged as stalls.
inline constexpr double kStallTolerance = 1e-6;

struct PceConfig {
    ObjectiveSpec objective; ///< objective.alpha is the fixed-mode alpha
    OptimizerConfig optimizer;
    std::uint64_t seed = 0;
    AlphaMode alpha_mode = AlphaMode::fixed;
    double threshold_m = 0.90;
    double alpha0 = 3.0;
    UpdateRule update_rule = UpdateRule::arctanh_ratio;
    std::size_t max_outer_iters = 50;
    double alpha_cap = 1e16;
    std::size_t layers = 1;
    bool beta_from_heuristic = true; ///< beta was set to beta_c

    void validate() const {
        objective.validate();
        if (!(threshold_m > 0.0 && threshold_m < 1.0)) {
            throw ParameterError("threshold M must be in (0, 1)");
        }
        if (!(alpha0 > 0.0) || max_outer_iters < 1 || layers < 1 ||
            !(alpha_cap > 0.0)) {
            throw ParameterError(
                "need alpha0 > 0, max_outer_iters >= 1, layers >= 1");
        }
    }
};

struct SolveOptions {
    std::size_t c = 1;
    AlphaMode alpha_mode = AlphaMode::iterative;
    double alpha = 0.0; ///< fixed-mode alpha; 0 keeps the default
    double beta = 0.0;  ///< 0 selects beta_c
    double eta = 0.0;
    std::uint64_t seed = 0;
};

/// Config with the size-dependent defaults: order k by size, fewest
/// qubits for the full X/Y/Z family, M = 0.95 and alpha0 = 1 from 150
/// nodes, the large-scale alpha rule above 25 nodes, beta = beta_c.
inline PceConfig make_default_config(std::shared_ptr<const WeightedGraph> g,
                                     const SolveOptions &opt) {
    PceConfig cfg;
    const std::size_t n = g->n();
    cfg.objective.encoding = default_encoding(n);
    cfg.objective.c = opt.c;
    cfg.objective.eta = opt.eta;
    cfg.objective.alpha = opt.alpha > 0.0 ? opt.alpha : 3.0;
    cfg.beta_from_heuristic = !(opt.beta > 0.0);
    cfg.objective.beta = cfg.beta_from_heuristic ? beta_c(*g, opt.c) : opt.beta;
    cfg.objective.graph = std::move(g);
    cfg.seed = opt.seed;
    cfg.alpha_mode = opt.alpha_mode;
    cfg.threshold_m = n >= 150 ? 0.95 : 0.90;
    cfg.alpha0 = n >= 150 ? 1.0 : 3.0;
    cfg.update_rule =
        n <= 25 ? UpdateRule::arctanh_ratio : UpdateRule::large_scale;
    return cfg;
}

/// Maps ansatz parameters to the loss at a given alpha. Owns scratch
/// buffers, so one instance per thread.
class LossEvaluator {
  public:
    explicit LossEvaluator(const PceConfig &cfg)
        : spec_(cfg.objective), layers_(cfg.layers),
          strings_(enumerate_strings(cfg.objective.encoding)),
          state_(cfg.objective.encoding.m), expect_(strings_.size()),
          soft_(strings_.size()) {}

    [[nodiscard]] std::size_t num_params() const {
        return parameter_count(state_.num_qubits(), layers_);
    }

    void set_alpha(double alpha) { spec_.alpha = alpha; }
    [[nodiscard]] double alpha() const { return spec_.alpha; }
    [[nodiscard]] const std::vector<PauliString> &strings() const {
        return strings_;
    }

    double operator()(std::span<const double> theta) {
        evaluate(theta);
        return loss_from_soft(spec_, soft_);
    }

    /// Expectations for theta (also refreshes the soft buffer).
    const std::vector<double> &evaluate(std::span<const double> theta) {
        prepare_state_into(state_, theta, layers_);
        expectations_into(state_, strings_, expect_);
        for (std::size_t i = 0; i < soft_.size(); ++i) {
            soft_[i] = std::tanh(spec_.alpha * expect_[i]);
        }
        return expect_;
    }

    [[nodiscard]] const std::vector<double> &soft() const { return soft_; }

  private:
    ObjectiveSpec spec_;
    std::size_t layers_;
    std::vector<PauliString> strings_;
    QuantumState state_;
    std::vector<double> expect_;
    std::vector<double> soft_;
};

struct IterationRecord {
    std::size_t iter = 0; ///< 1-based inner run index
    double alpha = 0.0;   ///< alpha used for this inner run
    double loss = 0.0;
    double binarization = 0.0;
    std::size_t minus_count = 0;
    std::size_t inner_evals = 0;
    bool inner_converged = false;
    double multiplier = 1.0; ///< next_alpha / alpha (1 on exit)
    bool stalled = false;
    std::vector<double> theta_start;
    std::vector<double> theta_end;
    std::vector<double> soft;
};

struct SolveOutcome {
    CutAssignment z;
    std::vector<double> soft;
    bool feasible = false;
    double cut = 0.0;
    double final_alpha = 0.0;
    std::size_t outer_iters = 0; ///< alpha updates performed
    std::size_t inner_evals = 0;
    std::vector<double> theta_final;
    double loss_final = 0.0;
    Termination termination = Termination::fixed_alpha;
    std::vector<IterationRecord> history;
};

struct AlphaUpdate {
    double alpha = 0.0;
    double multiplier = 1.0;
    bool done = false;      ///< no |t_i| < M, alpha unchanged
    std::size_t index = 0;  ///< i*, meaningful when !done
};

/// One step of the alpha schedule. Among the soft values below M in
/// magnitude, picks the one closest to M and rescales alpha so that it
/// would reach M.
inline AlphaUpdate alpha_update(std::span<const double> soft, double alpha,
                                double threshold_m, UpdateRule rule) {
    if (!(threshold_m > 0.0 && threshold_m < 1.0)) {
        throw ParameterError("threshold M must be in (0, 1)");
    }
    AlphaUpdate up;
    up.alpha = alpha;
    double best_gap = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < soft.size(); ++i) {
        const double a = std::abs(soft[i]);
        if (a < threshold_m && threshold_m - a < best_gap) {
            best_gap = threshold_m - a;
            up.index = i;
            found = true;
        }
    }
    if (!found) {
        up.done = true;
        return up;
    }
    const double v = std::min(std::abs(soft[up.index]), kArctanhClamp);
    const double num = std::atanh(threshold_m);
    const double den = rule == UpdateRule::arctanh_ratio ? std::atanh(v) : v;
    up.multiplier = den > 0.0 ? num / den
                              : std::numeric_limits<double>::infinity();
    up.alpha = alpha * up.multiplier;
    return up;
}

inline double next_alpha(std::span<const double> soft, double alpha,
                         double threshold_m, UpdateRule rule) {
    return alpha_update(soft, alpha, threshold_m, rule).alpha;
}

namespace detail {

inline void finish_outcome(const PceConfig &cfg, LossEvaluator &eval,
                           const std::vector<double> &theta,
                           SolveOutcome &out) {
    out.loss_final = eval(theta);
    out.soft = eval.soft();
    out.z = decode(out.soft);
    out.cut = cut_size(*cfg.objective.graph, out.z);
    out.feasible = is_feasible(out.z, cfg.objective.c);
    out.theta_final = theta;
    out.final_alpha = eval.alpha();
}

} // namespace detail

/// Standard PCE: random parameters, one minimization at the fixed alpha,
/// signs of the correlators as the cut.
inline SolveOutcome solve_pce(const PceConfig &cfg) {
    cfg.validate();
    LossEvaluator eval(cfg);
    eval.set_alpha(cfg.objective.alpha);
    auto theta0 = random_init(eval.num_params(), cfg.seed);
    const auto res = minimize(std::ref(eval), theta0, cfg.optimizer);

    SolveOutcome out;
    out.inner_evals = res.evals;
    out.termination = Termination::fixed_alpha;
    detail::finish_outcome(cfg, eval, res.best_params, out);

    IterationRecord rec;
    rec.iter = 1;
    rec.alpha = cfg.objective.alpha;
    rec.loss = out.loss_final;
    rec.binarization = binarization(out.soft);
    rec.minus_count = partition_count(out.z).minus;
    rec.inner_evals = res.evals;
    rec.inner_converged = res.converged;
    rec.theta_start = std::move(theta0);
    rec.theta_end = out.theta_final;
    rec.soft = out.soft;
    out.history.push_back(std::move(rec));
    return out;
}

/// Iterative-alpha PCE. Each inner run starts a fresh simplex around the
/// previous run's best parameters.
inline SolveOutcome solve_iterative(const PceConfig &cfg) {
    cfg.validate();
    LossEvaluator eval(cfg);
    double alpha = cfg.alpha0;
    std::vector<double> theta = random_init(eval.num_params(), cfg.seed);

    SolveOutcome out;
    for (std::size_t iter = 1;; ++iter) {
        eval.set_alpha(alpha);
        IterationRecord rec;
        rec.iter = iter;
        rec.alpha = alpha;
        rec.theta_start = theta;
        const auto res = minimize(std::ref(eval), theta, cfg.optimizer);
        theta = res.best_params;
        out.inner_evals += res.evals;

        rec.loss = eval(theta);
        rec.soft = eval.soft();
        rec.binarization = binarization(rec.soft);
        rec.minus_count = partition_count(decode(rec.soft)).minus;
        rec.inner_evals = res.evals;
        rec.inner_converged = res.converged;
        rec.theta_end = theta;

        const auto up =
            alpha_update(rec.soft, alpha, cfg.threshold_m, cfg.update_rule);
        bool stop = false;
        if (up.done) {
            out.termination = Termination::binarized;
            stop = true;
        } else {
            rec.multiplier = up.multiplier;
            rec.stalled = up.multiplier < 1.0 + kStallTolerance;
            if (!(up.alpha <= cfg.alpha_cap)) {
                out.termination = Termination::alpha_cap;
                stop = true;
            } else if (out.outer_iters >= cfg.max_outer_iters) {
                out.termination = Termination::outer_cap;
                stop = true;
            }
        }
        out.history.push_back(std::move(rec));
        if (stop) {
            break;
        }
        alpha = up.alpha;
        ++out.outer_iters;
    }
    detail::finish_outcome(cfg, eval, theta, out);
    return out;
}

inline SolveOutcome solve(const PceConfig &cfg) {
    return cfg.alpha_mode == AlphaMode::fixed ? solve_pce(cfg)
                                              : solve_iterative(cfg);
}

/// Fixed-alpha control for an iterative run: same graph, budget, beta and
/// optimizer; alpha set to the iterative run's final alpha; fresh
/// parameters from seed + kControlSeedOffset.
inline PceConfig make_control_config(const PceConfig &iterative_cfg,
                                     double final_alpha) {
    PceConfig ctl = iterative_cfg;
    ctl.alpha_mode = AlphaMode::fixed;
    ctl.objective.alpha = final_alpha;
    ctl.seed = iterative_cfg.seed + kControlSeedOffset;
    return ctl;
}

inline SolveOutcome solve_pce_at_final_alpha(const SolveOutcome &iterative,
                                             const PceConfig &cfg) {
    return solve_pce(make_control_config(cfg, iterative.final_alpha));
}

/// CSV rows (iter, alpha, loss, binarization, minus_count, multiplier,
/// stalled) for one solve's history.
inline void write_history_csv(std::ostream &out,
                              const std::vector<IterationRecord> &history,
                              bool header = true) {
    if (header) {
        out << "iter,alpha,loss,binarization,minus_count,multiplier,stalled\n";
    }
    out.precision(17);
    for (const auto &h : history) {
        out << h.iter << ',' << h.alpha << ',' << h.loss << ','
            << h.binarization << ',' << h.minus_count << ',' << h.multiplier
            << ',' << (h.stalled ? 1 : 0) << '\n';
    }
}

} // namespace pce
