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

/// Aggregation of run records into the summary tables (constraint
/// efficiency, binarization, normalized cut, outer iterations, paired
/// contingency, paired cut comparison) and their JSON / CSV / markdown
/// renderings.

#include <iomanip>
#include <map>
#include <optional>
#include <tuple>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pce/errors.hpp"
#include "pce/harness/record.hpp"

namespace pce {

struct AggregateRow {
    std::string graph;
    std::size_t n = 0;
    std::optional<std::size_t> c; ///< absent: pooled over all budgets
    std::string solver;
    std::string role;
    std::size_t runs = 0;     ///< successful runs
    std::size_t failures = 0; ///< runs that raised an error
    std::size_t feasible = 0;
    std::optional<double> epsilon_c;
    std::optional<double> mean_binarization;
    std::optional<double> mean_normalized_cut; ///< feasible runs only
    std::optional<double> mean_cut;            ///< feasible runs only
    std::optional<double> mean_outer_iters;    ///< iterative runs only
    std::optional<double> mean_final_alpha;
};

/// Paired iterative/control outcomes per graph; first mark is the
/// iterative run, second the control.
struct Contingency {
    std::string graph;
    std::string solver;
    std::size_t both = 0;         ///< iterative ok, control ok
    std::size_t iter_only = 0;    ///< iterative ok, control not
    std::size_t control_only = 0; ///< iterative not, control ok
    std::size_t neither = 0;

    [[nodiscard]] std::size_t pairs() const {
        return both + iter_only + control_only + neither;
    }
    [[nodiscard]] double pct(std::size_t v) const {
        return pairs() == 0 ? 0.0 : 100.0 * static_cast<double>(v) /
                                        static_cast<double>(pairs());
    }
};

/// Cuts over pairs where both runs are feasible.
struct CutComparison {
    std::string graph;
    std::string solver;
    std::size_t pairs = 0;
    std::optional<double> mean_iterative;
    std::optional<double> mean_control;
    std::optional<double> delta_pct; ///< (iterative - control) / control * 100
};

struct AggregateReport {
    std::vector<AggregateRow> rows;  ///< per graph, solver, role
    std::vector<AggregateRow> cells; ///< additionally split by c
    std::vector<Contingency> contingency;
    std::vector<CutComparison> cut_comparison;
    std::size_t total_runs = 0;
    std::size_t failed_runs = 0;
};

namespace detail {

struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
    void add(double v) {
        sum += v;
        ++count;
    }
    [[nodiscard]] std::optional<double> mean() const {
        if (count == 0) {
            return std::nullopt;
        }
        return sum / static_cast<double>(count);
    }
};

struct RowAcc {
    AggregateRow row;
    Acc bin, ncut, cut, outer, alpha;
};

inline void accumulate(RowAcc &a, const RunRecord &r) {
    if (!r.ok()) {
        ++a.row.failures;
        return;
    }
    ++a.row.runs;
    a.bin.add(r.binarization);
    a.alpha.add(r.outcome->final_alpha);
    if (r.role == "iterative") {
        a.outer.add(static_cast<double>(r.outcome->outer_iters));
    }
    if (r.outcome->feasible) {
        ++a.row.feasible;
        a.cut.add(r.outcome->cut);
        if (r.normalized_cut) {
            a.ncut.add(*r.normalized_cut);
        }
    }
}

inline AggregateRow finish(RowAcc &a) {
    AggregateRow row = a.row;
    if (row.runs > 0) {
        row.epsilon_c = static_cast<double>(row.feasible) /
                        static_cast<double>(row.runs);
    }
    row.mean_binarization = a.bin.mean();
    row.mean_normalized_cut = a.ncut.mean();
    row.mean_cut = a.cut.mean();
    row.mean_outer_iters = a.outer.mean();
    row.mean_final_alpha = a.alpha.mean();
    return row;
}

template <class Key>
std::vector<AggregateRow>
group_rows(const std::vector<RunRecord> &records, bool split_c) {
    std::vector<RowAcc> accs;
    std::map<Key, std::size_t> index;
    for (const auto &r : records) {
        Key k{r.graph_label, split_c ? r.c : 0, r.solver, r.role};
        auto it = index.find(k);
        if (it == index.end()) {
            it = index.emplace(k, accs.size()).first;
            RowAcc a;
            a.row.graph = r.graph_label;
            a.row.n = r.n;
            if (split_c) {
                a.row.c = r.c;
            }
            a.row.solver = r.solver;
            a.row.role = r.role;
            accs.push_back(a);
        }
        accumulate(accs[it->second], r);
    }
    std::vector<AggregateRow> out;
    for (auto &a : accs) {
        out.push_back(finish(a));
    }
    return out;
}

} // namespace detail

/// Builds the report from records alone.
inline AggregateReport build_report(const std::vector<RunRecord> &records) {
    using Key =
        std::tuple<std::string, std::size_t, std::string, std::string>;
    AggregateReport rep;
    rep.total_runs = records.size();
    for (const auto &r : records) {
        rep.failed_runs += !r.ok();
    }
    rep.rows = detail::group_rows<Key>(records, false);
    rep.cells = detail::group_rows<Key>(records, true);

    // Pair up iterative and control records by pair id.
    std::map<std::size_t, std::pair<const RunRecord *, const RunRecord *>>
        pairs;
    for (const auto &r : records) {
        if (!r.pair_id || !r.ok()) {
            continue;
        }
        auto &p = pairs[*r.pair_id];
        (r.role == "control" ? p.second : p.first) = &r;
    }
    std::map<std::pair<std::string, std::string>, std::size_t> cidx;
    std::vector<std::pair<detail::Acc, detail::Acc>> cut_acc;
    for (const auto &[id, p] : pairs) {
        if (p.first == nullptr || p.second == nullptr) {
            continue;
        }
        const auto key = std::make_pair(p.first->graph_label, p.first->solver);
        auto it = cidx.find(key);
        if (it == cidx.end()) {
            it = cidx.emplace(key, rep.contingency.size()).first;
            Contingency ct;
            ct.graph = key.first;
            ct.solver = key.second;
            rep.contingency.push_back(ct);
            CutComparison cc;
            cc.graph = key.first;
            cc.solver = key.second;
            rep.cut_comparison.push_back(cc);
            cut_acc.emplace_back();
        }
        auto &ct = rep.contingency[it->second];
        const bool fi = p.first->feasible();
        const bool fc = p.second->feasible();
        if (fi && fc) {
            ++ct.both;
            cut_acc[it->second].first.add(p.first->outcome->cut);
            cut_acc[it->second].second.add(p.second->outcome->cut);
        } else if (fi) {
            ++ct.iter_only;
        } else if (fc) {
            ++ct.control_only;
        } else {
            ++ct.neither;
        }
    }
    for (std::size_t i = 0; i < rep.cut_comparison.size(); ++i) {
        auto &cc = rep.cut_comparison[i];
        cc.pairs = cut_acc[i].first.count;
        cc.mean_iterative = cut_acc[i].first.mean();
        cc.mean_control = cut_acc[i].second.mean();
        if (cc.mean_iterative && cc.mean_control && *cc.mean_control > 0.0) {
            cc.delta_pct =
                (*cc.mean_iterative - *cc.mean_control) / *cc.mean_control *
                100.0;
        }
    }
    return rep;
}

namespace detail {

inline json opt_json(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

inline std::string opt_text(const std::optional<double> &v, int digits = 2) {
    if (!v) {
        return "\u2212";
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << *v;
    return os.str();
}

inline json row_json(const AggregateRow &r) {
    json j{{"graph", r.graph},
           {"n", r.n},
           {"solver", r.solver},
           {"role", r.role},
           {"runs", r.runs},
           {"failures", r.failures},
           {"feasible", r.feasible},
           {"epsilon_c", opt_json(r.epsilon_c)},
           {"mean_binarization", opt_json(r.mean_binarization)},
           {"mean_normalized_cut", opt_json(r.mean_normalized_cut)},
           {"mean_cut", opt_json(r.mean_cut)},
           {"mean_outer_iters", opt_json(r.mean_outer_iters)},
           {"mean_final_alpha", opt_json(r.mean_final_alpha)}};
    if (r.c) {
        j["c"] = *r.c;
    }
    return j;
}

} // namespace detail

inline json to_json(const AggregateReport &rep) {
    json rows = json::array();
    for (const auto &r : rep.rows) {
        rows.push_back(detail::row_json(r));
    }
    json cells = json::array();
    for (const auto &r : rep.cells) {
        cells.push_back(detail::row_json(r));
    }
    json cont = json::array();
    for (const auto &c : rep.contingency) {
        cont.push_back({{"graph", c.graph},
                        {"solver", c.solver},
                        {"pairs", c.pairs()},
                        {"both_feasible", c.both},
                        {"iterative_only", c.iter_only},
                        {"control_only", c.control_only},
                        {"neither", c.neither}});
    }
    json cuts = json::array();
    for (const auto &c : rep.cut_comparison) {
        cuts.push_back({{"graph", c.graph},
                        {"solver", c.solver},
                        {"pairs", c.pairs},
                        {"mean_iterative", detail::opt_json(c.mean_iterative)},
                        {"mean_control", detail::opt_json(c.mean_control)},
                        {"delta_pct", detail::opt_json(c.delta_pct)}});
    }
    return {{"total_runs", rep.total_runs},
            {"failed_runs", rep.failed_runs},
            {"rows", rows},
            {"cells", cells},
            {"contingency", cont},
            {"cut_comparison", cuts}};
}

enum class ReportFormat { json, csv, markdown };

inline ReportFormat report_format_from_string(const std::string &s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "markdown" || s == "md") return ReportFormat::markdown;
    throw ParameterError("unknown report format '" + s + "'");
}

/// CSV is long-form: one (table, keys, metric, value) observation per row.
inline void emit_report(const AggregateReport &rep, ReportFormat fmt,
                        std::ostream &out) {
    if (fmt == ReportFormat::json) {
        out << to_json(rep).dump(2) << '\n';
    } else if (fmt == ReportFormat::csv) {
        out << "table,graph,solver,role,c,metric,value\n";
        out.precision(17);
        auto emit_row = [&](const char *table, const AggregateRow &r) {
            const std::string c = r.c ? std::to_string(*r.c) : "";
            auto put = [&](const char *metric, const std::optional<double> &v) {
                out << table << ',' << r.graph << ',' << r.solver << ','
                    << r.role << ',' << c << ',' << metric << ',';
                if (v) {
                    out << *v;
                }
                out << '\n';
            };
            put("runs", static_cast<double>(r.runs));
            put("failures", static_cast<double>(r.failures));
            put("epsilon_c", r.epsilon_c);
            put("mean_binarization", r.mean_binarization);
            put("mean_normalized_cut", r.mean_normalized_cut);
            put("mean_cut", r.mean_cut);
            put("mean_outer_iters", r.mean_outer_iters);
            put("mean_final_alpha", r.mean_final_alpha);
        };
        for (const auto &r : rep.rows) {
            emit_row("summary", r);
        }
        for (const auto &r : rep.cells) {
            emit_row("cells", r);
        }
        for (const auto &c : rep.contingency) {
            const std::pair<const char *, std::size_t> items[] = {
                {"both_feasible_pct", c.both},
                {"iterative_only_pct", c.iter_only},
                {"control_only_pct", c.control_only},
                {"neither_pct", c.neither}};
            for (const auto &[name, v] : items) {
                out << "contingency," << c.graph << ',' << c.solver
                    << ",pair,," << name << ',' << c.pct(v) << '\n';
            }
        }
        for (const auto &c : rep.cut_comparison) {
            out << "cut_comparison," << c.graph << ',' << c.solver
                << ",pair,,delta_pct,";
            if (c.delta_pct) {
                out << *c.delta_pct;
            }
            out << '\n';
        }
    } else {
        out << "| Graph | n | Solver | Role | Runs | eps_c | Binarization "
               "| Norm. CutSize | Outer iters |\n"
            << "|---|---|---|---|---|---|---|---|---|\n";
        for (const auto &r : rep.rows) {
            out << "| " << r.graph << " | " << r.n << " | " << r.solver
                << " | " << r.role << " | " << r.runs << " | "
                << detail::opt_text(r.epsilon_c) << " | "
                << detail::opt_text(r.mean_binarization) << " | "
                << detail::opt_text(r.mean_normalized_cut) << " | "
                << detail::opt_text(r.mean_outer_iters, 1) << " |\n";
        }
        if (!rep.contingency.empty()) {
            out << "\n| Graph | Iterative | Control | Share |\n"
                << "|---|---|---|---|\n";
            for (const auto &c : rep.contingency) {
                const std::tuple<const char *, const char *, std::size_t>
                    items[] = {{"yes", "yes", c.both},
                               {"yes", "no", c.iter_only},
                               {"no", "yes", c.control_only},
                               {"no", "no", c.neither}};
                for (const auto &[a, b, v] : items) {
                    out << "| " << c.graph << " | " << a << " | " << b
                        << " | " << detail::opt_text(c.pct(v), 0) << "% |\n";
                }
            }
            out << "\n| Graph | Pairs | Iterative cut | Control cut | "
                   "Delta % |\n"
                << "|---|---|---|---|---|\n";
            for (const auto &c : rep.cut_comparison) {
                out << "| " << c.graph << " | " << c.pairs << " | "
                    << detail::opt_text(c.mean_iterative) << " | "
                    << detail::opt_text(c.mean_control) << " | "
                    << detail::opt_text(c.delta_pct) << " |\n";
            }
        }
        if (rep.failed_runs > 0) {
            out << "\n" << rep.failed_runs << " of " << rep.total_runs
                << " runs failed.\n";
        }
    }
    if (!out) {
        throw FormatError("failed writing report");
    }
}

/// One row per run.
inline void write_runs_csv(std::ostream &out,
                           const std::vector<RunRecord> &records) {
    out << "run_id,pair_id,graph,n,c,solver,role,repetition,seed,alpha_mode,"
           "feasible,cut,baseline_cut,normalized_cut,binarization,"
           "final_alpha,outer_iters,termination,wall_seconds,error\n";
    out.precision(17);
    for (const auto &r : records) {
        out << r.run_id << ',';
        if (r.pair_id) {
            out << *r.pair_id;
        }
        out << ',' << r.graph_label << ',' << r.n << ',' << r.c << ','
            << r.solver << ',' << r.role << ',' << r.repetition << ','
            << (r.config.is_object() ? r.config.value("seed", std::uint64_t{0})
                                     : std::uint64_t{0})
            << ','
            << (r.config.is_object()
                    ? r.config.value("alpha_mode", std::string())
                    : std::string())
            << ',';
        if (r.ok()) {
            out << (r.outcome->feasible ? 1 : 0) << ',' << r.outcome->cut;
        } else {
            out << ',';
        }
        out << ',';
        if (r.baseline_cut) {
            out << *r.baseline_cut;
        }
        out << ',';
        if (r.normalized_cut) {
            out << *r.normalized_cut;
        }
        out << ',';
        if (r.ok()) {
            out << r.binarization << ',' << r.outcome->final_alpha << ','
                << r.outcome->outer_iters << ','
                << to_string(r.outcome->termination);
        } else {
            out << ",,,";
        }
        std::string err = r.error;
        for (char &ch : err) {
            if (ch == ',' || ch == '\n') {
                ch = ';';
            }
        }
        out << ',' << r.wall_seconds << ',' << err << '\n';
    }
}

/// One row per (run, outer iteration).
inline void write_history_tidy_csv(std::ostream &out,
                                   const std::vector<RunRecord> &records) {
    out << "run_id,graph,c,role,iter,alpha,loss,binarization,minus_count,"
           "multiplier,stalled\n";
    out.precision(17);
    for (const auto &r : records) {
        if (!r.ok()) {
            continue;
        }
        for (const auto &h : r.outcome->history) {
            out << r.run_id << ',' << r.graph_label << ',' << r.c << ','
                << r.role << ',' << h.iter << ',' << h.alpha << ',' << h.loss
                << ',' << h.binarization << ',' << h.minus_count << ','
                << h.multiplier << ',' << (h.stalled ? 1 : 0) << '\n';
        }
    }
}

/// One row per (run, outer iteration, variable) soft value.
inline void write_soft_tidy_csv(std::ostream &out,
                                const std::vector<RunRecord> &records) {
    out << "run_id,role,iter,alpha,variable,soft\n";
    out.precision(17);
    for (const auto &r : records) {
        if (!r.ok()) {
            continue;
        }
        for (const auto &h : r.outcome->history) {
            for (std::size_t i = 0; i < h.soft.size(); ++i) {
                out << r.run_id << ',' << r.role << ',' << h.iter << ','
                    << h.alpha << ',' << i << ',' << h.soft[i] << '\n';
            }
        }
    }
}

} // namespace pce
