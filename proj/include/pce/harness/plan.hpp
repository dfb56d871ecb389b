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

/// Experiment plans: graphs x budgets x solvers x repetitions, executed on
/// a worker pool with records emitted in plan order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pce/errors.hpp"
#include "pce/harness/metrics.hpp"
#include "pce/harness/record.hpp"
#include "pce/oracles.hpp"
#include "pce/random.hpp"
#include "pce/solver.hpp"

namespace pce {

struct SolverSpec {
    std::string label;                 ///< defaults to "iterative" / "alpha=<a>"
    AlphaMode mode = AlphaMode::iterative;
    double alpha = 0.0;                ///< fixed mode; 0 keeps the default
    bool paired_control = true;        ///< iterative mode only
    json overrides = json::object();   ///< merged into the config JSON

    [[nodiscard]] std::string name() const {
        if (!label.empty()) {
            return label;
        }
        if (mode == AlphaMode::iterative) {
            return "iterative";
        }
        std::ostringstream os;
        os << "alpha=" << (alpha > 0.0 ? alpha : 3.0);
        return os.str();
    }
};

struct ExperimentPlan {
    std::vector<GraphSource> graphs;
    std::vector<std::size_t> c_values; ///< empty: every c in [2, n/2]
    std::size_t repetitions = 10;
    std::vector<SolverSpec> solvers{SolverSpec{}};
    std::uint64_t seed_base = 0;
    std::size_t workers = 1; ///< 0 uses all hardware threads
    std::string baseline = "sa"; ///< "sa" | "exhaustive" | "none"
    SaConfig sa;
    std::string baseline_cache; ///< optional JSON side file

    [[nodiscard]] std::vector<std::size_t> budgets(std::size_t n) const {
        std::vector<std::size_t> out;
        if (c_values.empty()) {
            for (std::size_t c = std::min<std::size_t>(2, n / 2); c <= n / 2;
                 ++c) {
                out.push_back(c);
            }
            return out;
        }
        for (std::size_t c : c_values) {
            if (c >= 1 && c <= n / 2) {
                out.push_back(c);
            }
        }
        return out;
    }

    void validate() const {
        if (graphs.empty() || solvers.empty()) {
            throw ParameterError("plan needs at least one graph and solver");
        }
        if (repetitions < 1) {
            throw ParameterError("plan repetitions must be >= 1");
        }
        if (baseline != "sa" && baseline != "exhaustive" &&
            baseline != "none") {
            throw ParameterError("unknown baseline mode '" + baseline + "'");
        }
    }
};

inline json to_json(const SolverSpec &s) {
    json j{{"label", s.name()},
           {"mode", to_string(s.mode)},
           {"alpha", s.alpha},
           {"paired_control", s.paired_control}};
    if (!s.overrides.empty()) {
        j["overrides"] = s.overrides;
    }
    return j;
}

inline SolverSpec solver_from_json(const json &j) {
    SolverSpec s;
    s.label = j.value("label", std::string());
    s.mode = alpha_mode_from_string(j.value("mode", std::string("iterative")));
    s.alpha = j.value("alpha", 0.0);
    s.paired_control = j.value("paired_control", true);
    s.overrides = j.value("overrides", json::object());
    return s;
}

inline json to_json(const ExperimentPlan &p) {
    json graphs = json::array();
    for (const auto &g : p.graphs) {
        graphs.push_back(to_json(g));
    }
    json solvers = json::array();
    for (const auto &s : p.solvers) {
        solvers.push_back(to_json(s));
    }
    return {{"graphs", graphs},
            {"c_values", p.c_values},
            {"repetitions", p.repetitions},
            {"solvers", solvers},
            {"seed_base", p.seed_base},
            {"workers", p.workers},
            {"baseline", p.baseline},
            {"sa",
             {{"initial_temp", p.sa.initial_temp},
              {"cooling", p.sa.cooling},
              {"steps", p.sa.steps},
              {"restarts", p.sa.restarts},
              {"seed", p.sa.seed}}},
            {"baseline_cache", p.baseline_cache}};
}

inline ExperimentPlan plan_from_json(const json &j) {
    ExperimentPlan p;
    for (const auto &g : j.at("graphs")) {
        p.graphs.push_back(graph_source_from_json(g));
    }
    p.c_values = j.value("c_values", std::vector<std::size_t>{});
    p.repetitions = j.value("repetitions", p.repetitions);
    if (j.contains("solvers")) {
        p.solvers.clear();
        for (const auto &s : j["solvers"]) {
            p.solvers.push_back(solver_from_json(s));
        }
    }
    p.seed_base = j.value("seed_base", p.seed_base);
    p.workers = j.value("workers", p.workers);
    p.baseline = j.value("baseline", p.baseline);
    if (j.contains("sa")) {
        const auto &s = j["sa"];
        p.sa.initial_temp = s.value("initial_temp", p.sa.initial_temp);
        p.sa.cooling = s.value("cooling", p.sa.cooling);
        p.sa.steps = s.value("steps", p.sa.steps);
        p.sa.restarts = s.value("restarts", p.sa.restarts);
        p.sa.seed = s.value("seed", p.sa.seed);
    }
    p.baseline_cache = j.value("baseline_cache", std::string());
    p.validate();
    return p;
}

/// Default config for (graph, c, solver, seed) with the solver's overrides
/// applied. Returns the config and its JSON form.
inline LoadedConfig build_config(std::shared_ptr<const WeightedGraph> g,
                                 const GraphSource &src, std::size_t c,
                                 const SolverSpec &solver,
                                 std::uint64_t seed) {
    SolveOptions opt;
    opt.c = c;
    opt.alpha_mode = solver.mode;
    opt.alpha = solver.alpha;
    opt.seed = seed;
    PceConfig cfg = make_default_config(g, opt);
    if (solver.overrides.empty()) {
        return {cfg, src};
    }
    json j = config_to_json(cfg, src);
    j.merge_patch(solver.overrides);
    if (solver.overrides.contains("beta")) {
        j["beta_from_heuristic"] = false;
    }
    auto loaded = config_from_json(j);
    return loaded;
}

/// Seed of repetition `rep` in cell (graph index, c). Independent of the
/// solver so that solvers in one plan share initial parameters.
inline std::uint64_t cell_seed(std::uint64_t base, std::size_t graph_index,
                               std::size_t c, std::size_t rep) {
    return derive_seed(derive_seed(derive_seed(base, graph_index), c), rep);
}

struct BaselineValue {
    double cut = 0.0;
    std::string method;
};

/// Solves the config and fills metrics. Never throws for solver errors;
/// they end up in `error`.
inline RunRecord execute_run(const PceConfig &cfg, const GraphSource &src,
                             const std::optional<BaselineValue> &baseline) {
    RunRecord r;
    r.graph_label = src.label();
    r.n = cfg.objective.graph->n();
    r.c = cfg.objective.c;
    r.role = cfg.alpha_mode == AlphaMode::iterative ? "iterative" : "fixed";
    r.config = config_to_json(cfg, src);
    if (baseline) {
        r.baseline_cut = baseline->cut;
        r.baseline_method = baseline->method;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.outcome = solve(cfg);
        r.binarization = metric_binarization(r.outcome->soft);
        if (r.outcome->feasible && baseline && baseline->cut > 0.0) {
            r.normalized_cut = normalized_cut(r.outcome->cut, baseline->cut);
        }
    } catch (const std::exception &e) {
        r.outcome.reset();
        r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return r;
}

using RecordSink = std::function<void(const RunRecord &)>;

/// Runs every cell of the plan. Records reach `sink` (and the returned
/// vector) in plan order regardless of worker count.
inline std::vector<RunRecord> run_plan(const ExperimentPlan &plan,
                                       const RecordSink &sink = {}) {
    plan.validate();

    std::vector<std::shared_ptr<const WeightedGraph>> graphs;
    for (const auto &src : plan.graphs) {
        graphs.push_back(std::make_shared<const WeightedGraph>(load_graph(src)));
    }

    // Baselines once per (graph, c).
    BaselineCache cache = plan.baseline_cache.empty()
                              ? BaselineCache()
                              : BaselineCache(plan.baseline_cache);
    std::map<std::pair<std::size_t, std::size_t>, BaselineValue> baselines;
    if (plan.baseline != "none") {
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            for (std::size_t c : plan.budgets(graphs[gi]->n())) {
                const auto method = plan.baseline == "exhaustive" &&
                                            graphs[gi]->n() <=
                                                kExhaustiveMaxNodes
                                        ? std::string("exhaustive")
                                        : std::string("sa");
                if (const auto *hit = cache.find(*graphs[gi], c);
                    hit != nullptr && hit->second == method) {
                    baselines[{gi, c}] = {hit->first, hit->second};
                    continue;
                }
                const auto res = method == "exhaustive"
                                     ? exhaustive_best(*graphs[gi], c)
                                     : sa_solve(*graphs[gi], c, plan.sa);
                baselines[{gi, c}] = {res.cut, method};
                cache.put(*graphs[gi], c, res.cut, method);
            }
        }
        cache.save();
    }

    struct Task {
        std::size_t graph = 0;
        std::size_t c = 0;
        std::size_t solver = 0;
        std::size_t rep = 0;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        for (std::size_t c : plan.budgets(graphs[gi]->n())) {
            for (std::size_t si = 0; si < plan.solvers.size(); ++si) {
                for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
                    tasks.push_back({gi, c, si, rep});
                }
            }
        }
    }

    auto run_task = [&](std::size_t ti) {
        const Task &t = tasks[ti];
        const auto &solver = plan.solvers[t.solver];
        const auto &src = plan.graphs[t.graph];
        std::optional<BaselineValue> base;
        if (auto it = baselines.find({t.graph, t.c}); it != baselines.end()) {
            base = it->second;
        }
        std::vector<RunRecord> out;
        std::optional<LoadedConfig> loaded;
        try {
            loaded = build_config(graphs[t.graph], src, t.c, solver,
                                  cell_seed(plan.seed_base, t.graph, t.c,
                                            t.rep));
        } catch (const std::exception &e) {
            RunRecord r;
            r.graph_label = src.label();
            r.n = graphs[t.graph]->n();
            r.c = t.c;
            r.role = to_string(solver.mode);
            r.error = e.what();
            out.push_back(std::move(r));
        }
        if (loaded) {
            out.push_back(execute_run(loaded->cfg, src, base));
            const RunRecord &it = out.back();
            if (solver.mode == AlphaMode::iterative && solver.paired_control &&
                it.ok()) {
                auto ctl = execute_run(
                    make_control_config(loaded->cfg, it.outcome->final_alpha),
                    src, base);
                ctl.role = "control";
                out.push_back(std::move(ctl));
            }
        }
        for (auto &r : out) {
            r.solver = solver.name();
            r.repetition = t.rep;
            if (out.size() == 2) {
                r.pair_id = ti;
            }
        }
        return out;
    };

    std::vector<std::vector<RunRecord>> slots(tasks.size());
    std::vector<char> done(tasks.size(), 0);
    std::vector<RunRecord> all;
    std::mutex mu;
    std::size_t next_emit = 0;
    std::size_t next_id = 0;
    std::atomic<std::size_t> next_task{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t ti = next_task.fetch_add(1);
            if (ti >= tasks.size()) {
                return;
            }
            auto recs = run_task(ti);
            std::lock_guard<std::mutex> lock(mu);
            slots[ti] = std::move(recs);
            done[ti] = 1;
            while (next_emit < tasks.size() && done[next_emit]) {
                for (auto &r : slots[next_emit]) {
                    r.run_id = next_id++;
                    if (sink) {
                        sink(r);
                    }
                    all.push_back(std::move(r));
                }
                slots[next_emit].clear();
                ++next_emit;
            }
        }
    };

    std::size_t workers = plan.workers == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : plan.workers;
    workers = std::min(workers, std::max<std::size_t>(1, tasks.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    return all;
}

} // namespace pce
