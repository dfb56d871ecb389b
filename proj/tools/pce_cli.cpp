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

// Command-line front end: generate, baseline, solve, bench, report.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pce/pce.hpp"

namespace {

using pce::json;

struct GraphArgs {
    std::string file;
    std::size_t n = 6;
    std::string weights = "unit";
    double lo = 0.0;
    double hi = 1.0;
    std::uint64_t seed = 0;
    double deletion = 0.0;

    void add(CLI::App *app) {
        app->add_option("--graph", file, "Graph file (.json or edge list)");
        app->add_option("--n", n, "Nodes of the generated complete graph");
        app->add_option("--weights", weights, "unit | uniform")
            ->check(CLI::IsMember({"unit", "uniform"}));
        app->add_option("--lo", lo, "Uniform weight lower bound");
        app->add_option("--hi", hi, "Uniform weight upper bound");
        app->add_option("--graph-seed", seed, "Generator seed");
        app->add_option("--deletion", deletion, "Edge deletion probability");
    }

    [[nodiscard]] pce::GraphSource source() const {
        pce::GraphSource s;
        if (!file.empty()) {
            s.kind = "file";
            s.path = file;
            return s;
        }
        s.n = n;
        s.weights = weights;
        s.lo = lo;
        s.hi = hi;
        s.seed = seed;
        s.deletion_prob = deletion;
        return s;
    }
};

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw pce::FormatError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string &path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::exception &e) {
        throw pce::FormatError(path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli correlation encoding for budget-constrained MinCut"};
    app.require_subcommand(1);

    // generate
    auto *gen = app.add_subcommand("generate", "Write a complete graph");
    GraphArgs gen_args;
    std::string gen_out;
    gen_args.add(gen);
    gen->add_option("--out", gen_out, "Output path (.json or edge list)")
        ->required();

    // baseline
    auto *base = app.add_subcommand("baseline", "Classical reference cut");
    GraphArgs base_args;
    std::size_t base_c = 2;
    std::string base_method = "sa";
    pce::SaConfig sa;
    std::string base_cache;
    base_args.add(base);
    base->add_option("--c", base_c, "Budget")->required();
    base->add_option("--method", base_method, "sa | exhaustive")
        ->check(CLI::IsMember({"sa", "exhaustive"}));
    base->add_option("--sa-steps", sa.steps, "Annealing steps per restart");
    base->add_option("--sa-restarts", sa.restarts, "Annealing restarts");
    base->add_option("--sa-cooling", sa.cooling, "Geometric cooling factor");
    base->add_option("--sa-temp", sa.initial_temp,
                     "Initial temperature (0: max weight * n)");
    base->add_option("--seed", sa.seed, "Annealing seed");
    base->add_option("--cache", base_cache, "Baseline cache JSON file");

    // solve
    auto *sol = app.add_subcommand("solve", "Single PCE run; prints a record");
    GraphArgs sol_args;
    sol_args.add(sol);
    pce::SolveOptions opt;
    std::string mode = "iterative";
    std::string rule;
    std::string config_path;
    std::string history_path;
    double threshold_m = 0.0;
    double alpha0 = 0.0;
    std::size_t max_outer = 0;
    std::size_t layers = 0;
    std::size_t max_evals = 0;
    bool control = false;
    sol->add_option("--c", opt.c, "Budget");
    sol->add_option("--alpha-mode", mode, "fixed | iterative")
        ->check(CLI::IsMember({"fixed", "iterative"}));
    sol->add_option("--alpha", opt.alpha, "Fixed-mode alpha");
    sol->add_option("--beta", opt.beta, "Penalty weight (default beta_c)");
    sol->add_option("--eta", opt.eta, "Regularization weight");
    sol->add_option("--seed", opt.seed, "Run seed");
    sol->add_option("--threshold-m", threshold_m, "Binarization threshold M");
    sol->add_option("--alpha0", alpha0, "Initial alpha (iterative)");
    sol->add_option("--update-rule", rule, "arctanh_ratio | large_scale")
        ->check(CLI::IsMember({"arctanh_ratio", "large_scale"}));
    sol->add_option("--max-outer-iters", max_outer, "Outer iteration cap");
    sol->add_option("--layers", layers, "Ansatz layers");
    sol->add_option("--max-evals", max_evals, "Inner evaluation budget");
    sol->add_option("--config", config_path,
                    "JSON config or run record to replay (overrides flags)");
    sol->add_option("--history", history_path, "Write history CSV here");
    sol->add_flag("--control", control,
                  "Also run the fixed-alpha control at the final alpha");

    // bench
    auto *bench = app.add_subcommand("bench", "Run an experiment plan");
    std::string plan_path;
    std::string records_path;
    std::size_t workers = 0;
    bool workers_set = false;
    bench->add_option("--plan", plan_path, "Plan JSON")->required();
    bench->add_option("--out", records_path, "Records (JSON Lines)")
        ->required();
    auto *wopt = bench->add_option("--workers", workers, "Worker threads");

    // report
    auto *rpt = app.add_subcommand("report", "Aggregate run records");
    std::string rpt_in;
    std::string rpt_format = "markdown";
    std::string rpt_out;
    std::string runs_csv;
    std::string history_csv;
    std::string soft_csv;
    rpt->add_option("--records", rpt_in, "Records (JSON Lines)")->required();
    rpt->add_option("--format", rpt_format, "json | csv | markdown");
    rpt->add_option("--out", rpt_out, "Report path (default stdout)");
    rpt->add_option("--runs-csv", runs_csv, "Per-run tidy CSV");
    rpt->add_option("--history-csv", history_csv, "Per-iteration tidy CSV");
    rpt->add_option("--soft-csv", soft_csv, "Per-variable soft value CSV");

    CLI11_PARSE(app, argc, argv);
    workers_set = wopt->count() > 0;

    try {
        if (*gen) {
            const auto g = pce::load_graph(gen_args.source());
            pce::write_graph(g, gen_out);
            std::cout << pce::BaselineCache::hash_hex(g.hash()) << '\n';
            return 0;
        }

        if (*base) {
            const auto g = pce::load_graph(base_args.source());
            pce::BaselineCache cache = base_cache.empty()
                                           ? pce::BaselineCache()
                                           : pce::BaselineCache(base_cache);
            const auto res = base_method == "exhaustive"
                                 ? pce::exhaustive_best(g, base_c)
                                 : pce::sa_solve(g, base_c, sa);
            cache.put(g, base_c, res.cut, base_method);
            cache.save();
            std::cout << json{{"graph_hash",
                               pce::BaselineCache::hash_hex(g.hash())},
                              {"c", base_c},
                              {"method", base_method},
                              {"cut", res.cut},
                              {"z", res.z.to_string()},
                              {"optimal", res.optimal}}
                             .dump()
                      << '\n';
            return 0;
        }

        if (*sol) {
            pce::LoadedConfig loaded;
            if (!config_path.empty()) {
                json j = read_json(config_path);
                if (j.contains("config")) {
                    j = j["config"]; // a run record
                }
                loaded = pce::config_from_json(j);
            } else {
                opt.alpha_mode = pce::alpha_mode_from_string(mode);
                loaded.source = sol_args.source();
                auto g = std::make_shared<const pce::WeightedGraph>(
                    pce::load_graph(loaded.source));
                loaded.cfg = pce::make_default_config(g, opt);
                auto &cfg = loaded.cfg;
                if (threshold_m > 0.0) cfg.threshold_m = threshold_m;
                if (alpha0 > 0.0) cfg.alpha0 = alpha0;
                if (!rule.empty()) {
                    cfg.update_rule = pce::update_rule_from_string(rule);
                }
                if (max_outer > 0) cfg.max_outer_iters = max_outer;
                if (layers > 0) cfg.layers = layers;
                if (max_evals > 0) cfg.optimizer.max_evals = max_evals;
            }
            auto rec = pce::execute_run(loaded.cfg, loaded.source, {});
            std::cout << pce::to_json(rec).dump() << '\n';
            if (!history_path.empty() && rec.ok()) {
                std::ofstream h(history_path);
                pce::write_history_csv(h, rec.outcome->history);
            }
            if (!rec.ok()) {
                std::cerr << "solve failed: " << rec.error << '\n';
                return 1;
            }
            if (control && loaded.cfg.alpha_mode == pce::AlphaMode::iterative) {
                auto ctl = pce::execute_run(
                    pce::make_control_config(loaded.cfg,
                                             rec.outcome->final_alpha),
                    loaded.source, {});
                ctl.role = "control";
                std::cout << pce::to_json(ctl).dump() << '\n';
                if (!ctl.ok()) {
                    std::cerr << "control failed: " << ctl.error << '\n';
                    return 1;
                }
            }
            return 0;
        }

        if (*bench) {
            auto plan = pce::plan_from_json(read_json(plan_path));
            if (workers_set) {
                plan.workers = workers;
            }
            std::ofstream out(records_path);
            if (!out) {
                throw pce::FormatError("cannot write " + records_path);
            }
            std::size_t failed = 0;
            const auto records = pce::run_plan(plan, [&](const auto &r) {
                out << pce::to_json(r).dump() << '\n';
                out.flush();
                failed += !r.ok();
            });
            std::cerr << records.size() << " records, " << failed
                      << " failed\n";
            return failed == 0 ? 0 : 1;
        }

        if (*rpt) {
            std::ifstream in(rpt_in);
            if (!in) {
                throw pce::FormatError("cannot open " + rpt_in);
            }
            const auto records = pce::read_records(in, rpt_in);
            const auto report = pce::build_report(records);
            const auto fmt = pce::report_format_from_string(rpt_format);
            if (rpt_out.empty()) {
                pce::emit_report(report, fmt, std::cout);
            } else {
                std::ofstream out(rpt_out);
                pce::emit_report(report, fmt, out);
            }
            auto write = [&](const std::string &path, auto fn) {
                if (path.empty()) {
                    return;
                }
                std::ofstream out(path);
                if (!out) {
                    throw pce::FormatError("cannot write " + path);
                }
                fn(out, records);
            };
            write(runs_csv, pce::write_runs_csv);
            write(history_csv, pce::write_history_tidy_csv);
            write(soft_csv, pce::write_soft_tidy_csv);
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
