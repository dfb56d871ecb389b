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

/// RunRecord: everything needed to replay one solve, plus its outcome and
/// metrics. Serialized as one JSON object per line.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pce/encoding.hpp"
#include "pce/errors.hpp"
#include "pce/graph.hpp"
#include "pce/objective.hpp"
#include "pce/oracles.hpp"
#include "pce/quantum.hpp"
#include "pce/solver.hpp"

namespace pce {

inline constexpr const char *kArtifactVersion = "0.1.0";

using json = nlohmann::json;

/// Where a graph came from. Generated graphs are rebuilt from their
/// parameters; file graphs are re-read and checked against the hash.
struct GraphSource {
    std::string kind = "generated"; ///< "generated" | "file"
    std::size_t n = 6;
    std::string weights = "unit";   ///< "unit" | "uniform"
    double lo = 0.0;
    double hi = 1.0;
    std::uint64_t seed = 0;
    double deletion_prob = 0.0;
    std::string path;

    [[nodiscard]] std::string label() const {
        if (kind == "file") {
            return path;
        }
        std::string s = "K" + std::to_string(n) + "-" + weights;
        if (deletion_prob > 0.0 || weights != "unit") {
            s += "-s" + std::to_string(seed);
        }
        return s;
    }

    friend bool operator==(const GraphSource &, const GraphSource &) = default;
};

inline WeightedGraph load_graph(const GraphSource &src) {
    if (src.kind == "file") {
        return read_graph(src.path);
    }
    if (src.kind != "generated") {
        throw ParameterError("unknown graph source kind '" + src.kind + "'");
    }
    WeightMode mode = UnitWeights{};
    if (src.weights == "uniform") {
        mode = UniformWeights{src.lo, src.hi};
    } else if (src.weights != "unit") {
        throw ParameterError("unknown weight mode '" + src.weights + "'");
    }
    return generate_complete_graph(src.n, mode, src.seed, src.deletion_prob);
}

inline json to_json(const GraphSource &s) {
    if (s.kind == "file") {
        return {{"kind", s.kind}, {"path", s.path}};
    }
    return {{"kind", s.kind},     {"n", s.n},
            {"weights", s.weights}, {"lo", s.lo},
            {"hi", s.hi},         {"seed", s.seed},
            {"deletion_prob", s.deletion_prob}};
}

inline GraphSource graph_source_from_json(const json &j) {
    GraphSource s;
    s.kind = j.value("kind", std::string("generated"));
    if (s.kind == "file") {
        s.path = j.at("path").get<std::string>();
        return s;
    }
    s.n = j.at("n").get<std::size_t>();
    s.weights = j.value("weights", std::string("unit"));
    s.lo = j.value("lo", 0.0);
    s.hi = j.value("hi", 1.0);
    s.seed = j.value("seed", std::uint64_t{0});
    s.deletion_prob = j.value("deletion_prob", 0.0);
    return s;
}

inline AlphaMode alpha_mode_from_string(const std::string &s) {
    if (s == "fixed") return AlphaMode::fixed;
    if (s == "iterative") return AlphaMode::iterative;
    throw ParameterError("unknown alpha mode '" + s + "'");
}

inline UpdateRule update_rule_from_string(const std::string &s) {
    if (s == "arctanh_ratio") return UpdateRule::arctanh_ratio;
    if (s == "large_scale") return UpdateRule::large_scale;
    throw ParameterError("unknown update rule '" + s + "'");
}

inline Termination termination_from_string(const std::string &s) {
    for (auto t : {Termination::fixed_alpha, Termination::binarized,
                   Termination::outer_cap, Termination::alpha_cap}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw ParameterError("unknown termination '" + s + "'");
}

inline json to_json(const EncodingSpec &e) {
    json j{{"family", to_string(e.family)},
           {"pauli", std::string(1, pauli_char(e.pauli))},
           {"m", e.m},
           {"k", e.k},
           {"k_max", e.k_max},
           {"n_vars", e.n_vars}};
    j["permutation_seed"] =
        e.permutation_seed ? json(*e.permutation_seed) : json(nullptr);
    return j;
}

inline EncodingSpec encoding_from_json(const json &j) {
    EncodingSpec e;
    e.family = encoding_family_from_string(j.at("family").get<std::string>());
    const auto p = j.value("pauli", std::string("Z"));
    if (p.size() != 1) {
        throw FormatError("encoding.pauli must be one letter");
    }
    e.pauli = pauli_from_char(p[0]);
    e.m = j.at("m").get<std::size_t>();
    e.k = j.at("k").get<std::size_t>();
    e.k_max = j.value("k_max", std::size_t{0});
    e.n_vars = j.at("n_vars").get<std::size_t>();
    if (j.contains("permutation_seed") && !j["permutation_seed"].is_null()) {
        e.permutation_seed = j["permutation_seed"].get<std::uint64_t>();
    }
    return e;
}

inline json to_json(const OptimizerConfig &o) {
    return {{"method", o.method},         {"max_evals", o.max_evals},
            {"x_tol", o.x_tol},           {"f_tol", o.f_tol},
            {"initial_step", o.initial_step}, {"seed", o.seed}};
}

inline OptimizerConfig optimizer_from_json(const json &j) {
    OptimizerConfig o;
    o.method = j.value("method", o.method);
    o.max_evals = j.value("max_evals", o.max_evals);
    o.x_tol = j.value("x_tol", o.x_tol);
    o.f_tol = j.value("f_tol", o.f_tol);
    o.initial_step = j.value("initial_step", o.initial_step);
    o.seed = j.value("seed", o.seed);
    return o;
}

/// Full solver configuration; the graph appears as its source and hash.
inline json config_to_json(const PceConfig &cfg, const GraphSource &src) {
    const auto &o = cfg.objective;
    return {{"graph", to_json(src)},
            {"graph_hash", BaselineCache::hash_hex(o.graph->hash())},
            {"c", o.c},
            {"alpha", o.alpha},
            {"beta", o.beta},
            {"beta_from_heuristic", cfg.beta_from_heuristic},
            {"eta", o.eta},
            {"encoding", to_json(o.encoding)},
            {"ansatz", {{"layout", kAnsatzLayout}, {"layers", cfg.layers}}},
            {"optimizer", to_json(cfg.optimizer)},
            {"seed", cfg.seed},
            {"alpha_mode", to_string(cfg.alpha_mode)},
            {"threshold_m", cfg.threshold_m},
            {"alpha0", cfg.alpha0},
            {"update_rule", to_string(cfg.update_rule)},
            {"max_outer_iters", cfg.max_outer_iters},
            {"alpha_cap", cfg.alpha_cap}};
}

struct LoadedConfig {
    PceConfig cfg;
    GraphSource source;
};

/// Inverse of config_to_json. Rebuilds the graph and refuses to continue
/// if its hash differs from the recorded one.
inline LoadedConfig config_from_json(const json &j) {
    LoadedConfig out;
    out.source = graph_source_from_json(j.at("graph"));
    auto g = std::make_shared<const WeightedGraph>(load_graph(out.source));
    if (j.contains("graph_hash")) {
        const auto want = j["graph_hash"].get<std::string>();
        const auto got = BaselineCache::hash_hex(g->hash());
        if (want != got) {
            throw FormatError("graph hash mismatch: recorded " + want +
                              ", rebuilt " + got);
        }
    }
    PceConfig &cfg = out.cfg;
    cfg.objective.graph = g;
    cfg.objective.c = j.at("c").get<std::size_t>();
    cfg.objective.alpha = j.at("alpha").get<double>();
    cfg.objective.beta = j.at("beta").get<double>();
    cfg.objective.eta = j.value("eta", 0.0);
    cfg.beta_from_heuristic = j.value("beta_from_heuristic", false);
    cfg.objective.encoding = encoding_from_json(j.at("encoding"));
    cfg.layers = j.contains("ansatz")
                     ? j["ansatz"].value("layers", std::size_t{1})
                     : std::size_t{1};
    if (j.contains("optimizer")) {
        cfg.optimizer = optimizer_from_json(j["optimizer"]);
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.alpha_mode = alpha_mode_from_string(j.at("alpha_mode"));
    cfg.threshold_m = j.value("threshold_m", cfg.threshold_m);
    cfg.alpha0 = j.value("alpha0", cfg.alpha0);
    cfg.update_rule =
        update_rule_from_string(j.value("update_rule", "arctanh_ratio"));
    cfg.max_outer_iters = j.value("max_outer_iters", cfg.max_outer_iters);
    cfg.alpha_cap = j.value("alpha_cap", cfg.alpha_cap);
    cfg.validate();
    return out;
}

inline json to_json(const IterationRecord &h, bool with_vectors) {
    json j{{"iter", h.iter},
           {"alpha", h.alpha},
           {"loss", h.loss},
           {"binarization", h.binarization},
           {"minus_count", h.minus_count},
           {"inner_evals", h.inner_evals},
           {"inner_converged", h.inner_converged},
           {"multiplier", h.multiplier},
           {"stalled", h.stalled}};
    if (with_vectors) {
        j["soft"] = h.soft;
    }
    return j;
}

inline IterationRecord iteration_from_json(const json &j) {
    IterationRecord h;
    h.iter = j.at("iter").get<std::size_t>();
    h.alpha = j.at("alpha").get<double>();
    h.loss = j.at("loss").get<double>();
    h.binarization = j.at("binarization").get<double>();
    h.minus_count = j.at("minus_count").get<std::size_t>();
    h.inner_evals = j.value("inner_evals", std::size_t{0});
    h.inner_converged = j.value("inner_converged", false);
    h.multiplier = j.value("multiplier", 1.0);
    h.stalled = j.value("stalled", false);
    if (j.contains("soft")) {
        h.soft = j["soft"].get<std::vector<double>>();
    }
    return h;
}

inline json to_json(const SolveOutcome &o, bool with_history = true) {
    json j{{"z", o.z.to_string()},
           {"soft", o.soft},
           {"feasible", o.feasible},
           {"cut", o.cut},
           {"final_alpha", o.final_alpha},
           {"outer_iters", o.outer_iters},
           {"inner_evals", o.inner_evals},
           {"theta_final", o.theta_final},
           {"loss_final", o.loss_final},
           {"termination", to_string(o.termination)}};
    if (with_history) {
        json h = json::array();
        for (const auto &r : o.history) {
            h.push_back(to_json(r, true));
        }
        j["history"] = std::move(h);
    }
    return j;
}

inline CutAssignment assignment_from_string(const std::string &s) {
    std::vector<int> z;
    z.reserve(s.size());
    for (char ch : s) {
        if (ch != '+' && ch != '-') {
            throw FormatError("assignment string must contain only '+'/'-'");
        }
        z.push_back(ch == '-' ? -1 : 1);
    }
    return CutAssignment(std::move(z));
}

inline SolveOutcome outcome_from_json(const json &j) {
    SolveOutcome o;
    o.z = assignment_from_string(j.at("z").get<std::string>());
    o.soft = j.at("soft").get<std::vector<double>>();
    o.feasible = j.at("feasible").get<bool>();
    o.cut = j.at("cut").get<double>();
    o.final_alpha = j.at("final_alpha").get<double>();
    o.outer_iters = j.at("outer_iters").get<std::size_t>();
    o.inner_evals = j.value("inner_evals", std::size_t{0});
    o.theta_final = j.value("theta_final", std::vector<double>{});
    o.loss_final = j.value("loss_final", 0.0);
    o.termination = termination_from_string(j.at("termination"));
    for (const auto &h : j.value("history", json::array())) {
        o.history.push_back(iteration_from_json(h));
    }
    return o;
}

struct RunRecord {
    std::size_t run_id = 0;
    std::optional<std::size_t> pair_id; ///< set for iterative/control pairs
    std::string role = "fixed";         ///< "fixed" | "iterative" | "control"
    std::string solver;                 ///< plan-level solver label
    std::size_t repetition = 0;
    json config;                        ///< config_to_json output
    std::string graph_label;
    std::size_t n = 0;
    std::size_t c = 0;
    std::optional<SolveOutcome> outcome; ///< absent when the run failed
    std::string error;
    double binarization = 0.0;
    std::optional<double> baseline_cut;
    std::string baseline_method;
    std::optional<double> normalized_cut; ///< feasible runs with a baseline
    double wall_seconds = 0.0;
    std::string version = kArtifactVersion;

    [[nodiscard]] bool ok() const { return outcome.has_value(); }
    [[nodiscard]] bool feasible() const { return ok() && outcome->feasible; }
};

inline json to_json(const RunRecord &r) {
    json j{{"version", r.version},
           {"run_id", r.run_id},
           {"pair_id", r.pair_id ? json(*r.pair_id) : json(nullptr)},
           {"role", r.role},
           {"solver", r.solver},
           {"repetition", r.repetition},
           {"graph_label", r.graph_label},
           {"n", r.n},
           {"c", r.c},
           {"config", r.config}};
    if (r.outcome) {
        j["outcome"] = to_json(*r.outcome);
        j["metrics"] = {
            {"feasible", r.outcome->feasible},
            {"binarization", r.binarization},
            {"normalized_cut",
             r.normalized_cut ? json(*r.normalized_cut) : json(nullptr)}};
    } else {
        j["outcome"] = nullptr;
        j["error"] = r.error;
    }
    j["baseline"] = {
        {"cut", r.baseline_cut ? json(*r.baseline_cut) : json(nullptr)},
        {"method", r.baseline_method}};
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline RunRecord record_from_json(const json &j) {
    RunRecord r;
    r.version = j.value("version", std::string());
    r.run_id = j.at("run_id").get<std::size_t>();
    if (j.contains("pair_id") && !j["pair_id"].is_null()) {
        r.pair_id = j["pair_id"].get<std::size_t>();
    }
    r.role = j.at("role").get<std::string>();
    r.solver = j.value("solver", std::string());
    r.repetition = j.value("repetition", std::size_t{0});
    r.graph_label = j.at("graph_label").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.c = j.at("c").get<std::size_t>();
    r.config = j.at("config");
    if (!j.at("outcome").is_null()) {
        r.outcome = outcome_from_json(j["outcome"]);
        const auto &m = j.at("metrics");
        r.binarization = m.at("binarization").get<double>();
        if (!m.at("normalized_cut").is_null()) {
            r.normalized_cut = m["normalized_cut"].get<double>();
        }
    } else {
        r.error = j.value("error", std::string());
    }
    if (j.contains("baseline")) {
        const auto &b = j["baseline"];
        if (!b.at("cut").is_null()) {
            r.baseline_cut = b["cut"].get<double>();
        }
        r.baseline_method = b.value("method", std::string());
    }
    r.wall_seconds = j.value("wall_seconds", 0.0);
    return r;
}

/// Parses a JSON Lines stream; blank lines are skipped.
inline std::vector<RunRecord> read_records(std::istream &in,
                                           const std::string &origin) {
    std::vector<RunRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const json::exception &e) {
            throw FormatError(origin + ":" + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return out;
}

} // namespace pce
