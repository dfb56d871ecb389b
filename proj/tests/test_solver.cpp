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


#include "catch_amalgamated.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "pce/solver.hpp"
#include "support.hpp"

using namespace pce;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PceConfig config_for(const WeightedGraph &g, std::size_t c, AlphaMode mode,
                     std::uint64_t seed, double alpha = 0.0) {
    SolveOptions opt;
    opt.c = c;
    opt.alpha_mode = mode;
    opt.alpha = alpha;
    opt.seed = seed;
    return make_default_config(std::make_shared<const WeightedGraph>(g), opt);
}

bool same_outcome(const SolveOutcome &a, const SolveOutcome &b) {
    if (!(a.z == b.z && a.soft == b.soft && a.cut == b.cut &&
          a.final_alpha == b.final_alpha && a.outer_iters == b.outer_iters &&
          a.inner_evals == b.inner_evals && a.theta_final == b.theta_final &&
          a.loss_final == b.loss_final && a.termination == b.termination &&
          a.history.size() == b.history.size())) {
        return false;
    }
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        if (a.history[i].alpha != b.history[i].alpha ||
            a.history[i].theta_end != b.history[i].theta_end) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("alpha update rule", "[solver]") {
    const std::vector<double> done{0.95, -0.91, 0.99};
    const auto up = alpha_update(done, 3.0, 0.9, UpdateRule::arctanh_ratio);
    CHECK(up.done);
    CHECK(up.alpha == 3.0);

    const std::vector<double> v{0.95, 0.5, -0.3};
    CHECK_THAT(next_alpha(v, 3.0, 0.9, UpdateRule::arctanh_ratio),
               WithinRel(3.0 * std::atanh(0.9) / std::atanh(0.5), 1e-15));
    CHECK_THAT(next_alpha(v, 3.0, 0.9, UpdateRule::arctanh_ratio),
               WithinAbs(8.0405, 1e-4));
    CHECK_THAT(next_alpha(v, 1.0, 0.95, UpdateRule::large_scale),
               WithinAbs(3.6636, 1e-4));

    // Closest to M in magnitude, sign ignored.
    const std::vector<double> w{0.1, -0.85, 0.6};
    const auto u = alpha_update(w, 2.0, 0.9, UpdateRule::arctanh_ratio);
    CHECK(u.index == 1);
    CHECK_FALSE(u.done);
    CHECK(u.multiplier > 1.0);

    // A zero value can only be reached by an infinite alpha.
    const auto z = alpha_update(std::vector<double>{0.0, 0.0}, 2.0, 0.9,
                                UpdateRule::large_scale);
    CHECK(std::isinf(z.alpha));

    CHECK_THROWS_AS(next_alpha(v, 1.0, 1.0, UpdateRule::large_scale),
                    ParameterError);
}

TEST_CASE("large-scale rule always increases alpha", "[solver][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        std::vector<double> soft(7);
        for (auto &v : soft) {
            v = u(rng);
        }
        const double m = 0.5 + 0.49 * (u(rng) + 1) / 2;
        const auto up = alpha_update(soft, 2.0, m, UpdateRule::large_scale);
        if (!up.done) {
            CHECK(up.alpha > 2.0);
        }
        const auto ar = alpha_update(soft, 2.0, m, UpdateRule::arctanh_ratio);
        if (!ar.done) {
            CHECK(ar.alpha > 2.0);
        }
    }
}

TEST_CASE("loss evaluator matches dense oracle", "[solver][oracle]") {
    const auto g = generate_complete_graph(9, UniformWeights{0.1, 1.0}, 4);
    auto cfg = config_for(g, 3, AlphaMode::fixed, 1, 2.5);
    LossEvaluator eval(cfg);
    const auto strings = enumerate_strings(cfg.objective.encoding);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto theta = random_init(eval.num_params(), s);
        const auto psi = testsupport::dense_state(
            cfg.objective.encoding.m, theta, 1);
        std::vector<double> e;
        for (const auto &p : strings) {
            e.push_back(testsupport::dense_expectation(psi, p.letters()));
        }
        CHECK_THAT(eval(theta), WithinAbs(loss(cfg.objective, e), 1e-10));
    }
}

TEST_CASE("default configuration", "[solver]") {
    const auto small = config_for(testsupport::unit_complete(6), 2,
                                  AlphaMode::iterative, 0);
    CHECK(small.objective.encoding.m == 3);
    CHECK(small.objective.beta == 10.0);
    CHECK(small.beta_from_heuristic);
    CHECK(small.threshold_m == 0.9);
    CHECK(small.alpha0 == 3.0);
    CHECK(small.update_rule == UpdateRule::arctanh_ratio);

    const auto big = config_for(testsupport::unit_complete(150), 2,
                                AlphaMode::iterative, 0);
    CHECK(big.objective.encoding.m == 8);
    CHECK(big.objective.encoding.k == 4);
    CHECK(big.threshold_m == 0.95);
    CHECK(big.alpha0 == 1.0);
    CHECK(big.update_rule == UpdateRule::large_scale);

    SolveOptions opt;
    opt.c = 2;
    opt.beta = 0.5;
    const auto user = make_default_config(
        std::make_shared<const WeightedGraph>(testsupport::unit_complete(6)),
        opt);
    CHECK(user.objective.beta == 0.5);
    CHECK_FALSE(user.beta_from_heuristic);
}

TEST_CASE("fixed-alpha solve", "[solver]") {
    const auto k3 = testsupport::unit_complete(3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto out =
            solve_pce(config_for(k3, 1, AlphaMode::fixed, seed, 100.0));
        CHECK(out.feasible);
        CHECK(out.cut == 2.0);
        CHECK(out.termination == Termination::fixed_alpha);
        CHECK(out.history.size() == 1);
        CHECK(out.outer_iters == 0);
        CHECK(out.final_alpha == 100.0);
    }

    const auto k6 = testsupport::unit_complete(6);
    const auto low = solve_pce(config_for(k6, 2, AlphaMode::fixed, 3, 0.1));
    CHECK(binarization(low.soft) == 0.0);
    for (double v : low.soft) {
        CHECK(std::abs(v) <= std::tanh(0.1));
    }

    auto bad = config_for(k6, 2, AlphaMode::fixed, 0, 1.0);
    bad.objective.c = 4;
    CHECK_THROWS_AS(solve(bad), ParameterError);
}

TEST_CASE("determinism", "[solver]") {
    const auto g = generate_complete_graph(8, UniformWeights{0.0, 1.0}, 2);
    for (auto mode : {AlphaMode::fixed, AlphaMode::iterative}) {
        const auto cfg = config_for(g, 3, mode, 99);
        CHECK(same_outcome(solve(cfg), solve(cfg)));
    }
}

TEST_CASE("iterative schedule", "[solver]") {
    const auto k6 = testsupport::unit_complete(6);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto cfg = config_for(k6, 2, AlphaMode::iterative, seed);
        const auto out = solve_iterative(cfg);
        REQUIRE_FALSE(out.history.empty());
        CHECK(out.history.size() == out.outer_iters + 1);
        CHECK(out.history.front().alpha == cfg.alpha0);
        CHECK(out.outer_iters <= cfg.max_outer_iters);

        std::size_t evals = 0;
        for (std::size_t i = 0; i < out.history.size(); ++i) {
            const auto &h = out.history[i];
            CHECK(h.iter == i + 1);
            evals += h.inner_evals;
            if (i > 0) {
                // Warm start from the previous inner run.
                CHECK(h.theta_start == out.history[i - 1].theta_end);
                CHECK(h.alpha > out.history[i - 1].alpha);
                CHECK(h.alpha ==
                      out.history[i - 1].alpha * out.history[i - 1].multiplier);
            }
        }
        CHECK(evals == out.inner_evals);
        CHECK(out.history.front().theta_start ==
              random_init(parameter_count(3), seed));
        CHECK(out.final_alpha == out.history.back().alpha);
        CHECK(out.theta_final == out.history.back().theta_end);
        CHECK(out.soft == out.history.back().soft);
        CHECK(out.z == decode(out.soft));
        CHECK(out.cut == cut_size(k6, out.z));

        if (out.termination == Termination::binarized) {
            for (double v : out.soft) {
                CHECK(std::abs(v) >= cfg.threshold_m);
            }
            if (out.history.size() > 1) {
                CHECK(out.history.back().binarization >=
                      out.history[out.history.size() - 2].binarization);
            }
        }
    }
}

TEST_CASE("iterative caps", "[solver]") {
    const auto k6 = testsupport::unit_complete(6);
    auto cfg = config_for(k6, 3, AlphaMode::iterative, 1);
    cfg.max_outer_iters = 1;
    cfg.threshold_m = 0.999999;
    const auto capped = solve_iterative(cfg);
    CHECK(capped.outer_iters <= 1);
    if (capped.termination == Termination::outer_cap) {
        CHECK(capped.history.size() == 2);
    }

    auto tiny_cap = config_for(k6, 3, AlphaMode::iterative, 1);
    tiny_cap.alpha_cap = 3.5;
    tiny_cap.threshold_m = 0.999;
    const auto out = solve_iterative(tiny_cap);
    CHECK(out.termination != Termination::outer_cap);
    CHECK(out.final_alpha <= 3.5);
    if (out.termination == Termination::alpha_cap) {
        CHECK(out.history.back().alpha * out.history.back().multiplier > 3.5);
    }
}

TEST_CASE("paired control", "[solver]") {
    const auto k6 = testsupport::unit_complete(6);
    const auto cfg = config_for(k6, 2, AlphaMode::iterative, 12);
    const auto it = solve_iterative(cfg);
    const auto ctl_cfg = make_control_config(cfg, it.final_alpha);
    CHECK(ctl_cfg.alpha_mode == AlphaMode::fixed);
    CHECK(ctl_cfg.objective.alpha == it.final_alpha);
    CHECK(ctl_cfg.seed == cfg.seed + kControlSeedOffset);
    CHECK(ctl_cfg.objective.beta == cfg.objective.beta);
    CHECK(ctl_cfg.objective.c == cfg.objective.c);
    CHECK(ctl_cfg.objective.graph == cfg.objective.graph);
    CHECK(ctl_cfg.optimizer == cfg.optimizer);
    const auto ctl = solve_pce_at_final_alpha(it, cfg);
    CHECK(ctl.final_alpha == it.final_alpha);
    CHECK(ctl.history.front().theta_start ==
          random_init(parameter_count(3), cfg.seed + kControlSeedOffset));
}

TEST_CASE("history csv", "[solver]") {
    const auto out = solve_iterative(config_for(
        testsupport::unit_complete(6), 2, AlphaMode::iterative, 0));
    std::ostringstream os;
    write_history_csv(os, out.history);
    const auto text = os.str();
    CHECK(text.rfind("iter,alpha,loss,binarization,minus_count", 0) == 0);
    CHECK(static_cast<std::size_t>(
              std::count(text.begin(), text.end(), '\n')) ==
          out.history.size() + 1);
}
