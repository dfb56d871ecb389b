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

/// Classical reference solvers for budget-constrained MinCut: exhaustive
/// enumeration (ground truth for small graphs) and a swap-move simulated
/// annealer used as the normalization baseline.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pce/errors.hpp"
#include "pce/graph.hpp"
#include "pce/random.hpp"

namespace pce {

struct OracleResult {
    CutAssignment z; ///< exactly c entries are -1
    double cut = 0.0;
    bool optimal = false;
};

inline constexpr std::size_t kExhaustiveMaxNodes = 22;

namespace detail {

inline void check_budget(const WeightedGraph &g, std::size_t c) {
    if (c < 1 || c > g.n() / 2) {
        throw ParameterError("budget c=" + std::to_string(c) +
                             " outside [1, " + std::to_string(g.n() / 2) +
                             "]");
    }
}

inline CutAssignment assignment_from_minus(std::size_t n,
                                           const std::vector<std::size_t> &s) {
    std::vector<int> z(n, 1);
    for (std::size_t i : s) {
        z[i] = -1;
    }
    return CutAssignment(std::move(z));
}

} // namespace detail

/// Minimum cut over all c : n-c splits. Enumerates the size-c sets of
/// -1 nodes in lexicographic order and keeps the first minimum.
inline OracleResult exhaustive_best(const WeightedGraph &g, std::size_t c) {
    detail::check_budget(g, c);
    const std::size_t n = g.n();
    if (n > kExhaustiveMaxNodes) {
        throw SizingError("exhaustive_best refuses n=" + std::to_string(n) +
                          " (limit " + std::to_string(kExhaustiveMaxNodes) +
                          ")");
    }
    std::vector<std::size_t> idx(c);
    for (std::size_t i = 0; i < c; ++i) {
        idx[i] = i;
    }
    std::vector<char> in(n, 0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_set;
    while (true) {
        std::fill(in.begin(), in.end(), 0);
        for (std::size_t i : idx) {
            in[i] = 1;
        }
        double cut = 0.0;
        for (std::size_t i : idx) {
            const double *r = g.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (!in[j]) {
                    cut += r[j];
                }
            }
        }
        if (cut < best) {
            best = cut;
            best_set = idx;
        }
        std::size_t i = c;
        while (i > 0 && idx[i - 1] == n - c + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < c; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
    OracleResult r;
    r.z = detail::assignment_from_minus(n, best_set);
    r.cut = cut_size(g, r.z);
    r.optimal = true;
    return r;
}

struct SaConfig {
    double initial_temp = 0.0; ///< 0 selects max weight * n
    double cooling = 0.995;    ///< geometric factor per step
    std::size_t steps = 20000; ///< per restart
    std::size_t restarts = 5;
    std::uint64_t seed = 0;

    friend bool operator==(const SaConfig &, const SaConfig &) = default;
};

namespace detail {

struct SaRun {
    std::vector<int> z;
    double cut = std::numeric_limits<double>::infinity();
};

// One annealing chain. gain[u] = (same-side weight) - (other-side weight);
// swapping u in S with v outside S changes the cut by
// gain[u] + gain[v] + 2 d_uv.
inline SaRun anneal_once(const WeightedGraph &g, std::size_t c, double t0,
                         const SaConfig &cfg, std::uint64_t seed) {
    const std::size_t n = g.n();
    Rng rng(seed);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    }
    std::vector<int> z(n, 1);
    std::vector<std::size_t> minus(perm.begin(), perm.begin() + c);
    std::vector<std::size_t> plus(perm.begin() + c, perm.end());
    for (std::size_t i : minus) {
        z[i] = -1;
    }

    std::vector<double> gain(n, 0.0);
    double cut = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double *r = g.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (z[i] == z[j]) {
                gain[i] += r[j];
            } else {
                gain[i] -= r[j];
                if (i < j) {
                    cut += r[j];
                }
            }
        }
    }

    SaRun best{z, cut};
    double temp = t0;
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        const std::size_t a = uniform_index(rng, minus.size());
        const std::size_t b = uniform_index(rng, plus.size());
        const std::size_t u = minus[a];
        const std::size_t v = plus[b];
        const double delta = gain[u] + gain[v] + 2.0 * g.weight(u, v);
        const double draw = uniform01(rng);
        if (delta <= 0.0 || (temp > 0.0 && draw < std::exp(-delta / temp))) {
            // u joins the + side, v the - side.
            const double *ru = g.row(u);
            const double *rv = g.row(v);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == u || k == v) {
                    continue;
                }
                // For k on the - side, u left and v arrived; mirror for +.
                const double s = z[k] < 0 ? 2.0 : -2.0;
                gain[k] += s * (rv[k] - ru[k]);
            }
            gain[u] = -gain[u] - 2.0 * g.weight(u, v);
            gain[v] = -gain[v] - 2.0 * g.weight(u, v);
            z[u] = 1;
            z[v] = -1;
            minus[a] = v;
            plus[b] = u;
            cut += delta;
            if (cut < best.cut - 1e-12 * (1.0 + std::abs(best.cut))) {
                best.z = z;
                best.cut = cut;
            }
        }
        temp *= cfg.cooling;
    }
    return best;
}

} // namespace detail

/// Simulated annealing restricted to c : n-c splits (swap moves), best
/// over restarts. Restart r draws from derive_seed(cfg.seed, r).
inline OracleResult sa_solve(const WeightedGraph &g, std::size_t c,
                             const SaConfig &cfg = {}) {
    detail::check_budget(g, c);
    if (!(cfg.cooling > 0.0 && cfg.cooling < 1.0) || cfg.steps < 1 ||
        cfg.restarts < 1) {
        throw ParameterError("SA needs 0 < cooling < 1, steps >= 1, "
                             "restarts >= 1");
    }
    const double t0 = cfg.initial_temp > 0.0
                          ? cfg.initial_temp
                          : g.max_weight() * static_cast<double>(g.n());
    OracleResult out;
    out.cut = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto run = detail::anneal_once(g, c, t0, cfg, derive_seed(cfg.seed, r));
        CutAssignment z(std::move(run.z));
        const double exact = cut_size(g, z);
        if (exact < out.cut) {
            out.cut = exact;
            out.z = std::move(z);
        }
    }
    out.optimal = false;
    return out;
}

/// pce_cut / baseline_cut.
inline double normalized_cut(double pce_cut, double baseline_cut) {
    if (!(baseline_cut > 0.0)) {
        throw ParameterError("baseline cut is zero; normalization undefined");
    }
    return pce_cut / baseline_cut;
}

/// JSON side file of baseline cuts keyed by (graph hash, c):
/// {"entries": [{"graph_hash": "...", "c": 2, "cut": 8.0, "method": "sa"}]}
class BaselineCache {
  public:
    BaselineCache() = default;
    explicit BaselineCache(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_);
        if (!in) {
            return;
        }
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception &e) {
            throw FormatError(path_ + ": " + e.what());
        }
        for (const auto &e : doc.value("entries", nlohmann::json::array())) {
            entries_[key(e.at("graph_hash").get<std::string>(),
                         e.at("c").get<std::size_t>())] = {
                e.at("cut").get<double>(), e.value("method", "sa")};
        }
    }

    static std::string hash_hex(std::uint64_t h) {
        std::ostringstream os;
        os << std::hex;
        os.width(16);
        os.fill('0');
        os << h;
        return os.str();
    }

    [[nodiscard]] const std::pair<double, std::string> *
    find(const WeightedGraph &g, std::size_t c) const {
        const auto it = entries_.find(key(hash_hex(g.hash()), c));
        return it == entries_.end() ? nullptr : &it->second;
    }

    void put(const WeightedGraph &g, std::size_t c, double cut,
             const std::string &method) {
        entries_[key(hash_hex(g.hash()), c)] = {cut, method};
    }

    void save() const {
        if (path_.empty()) {
            return;
        }
        nlohmann::json entries = nlohmann::json::array();
        for (const auto &[k, v] : entries_) {
            entries.push_back({{"graph_hash", k.first},
                               {"c", k.second},
                               {"cut", v.first},
                               {"method", v.second}});
        }
        std::ofstream out(path_);
        if (!out) {
            throw FormatError("cannot write baseline cache " + path_);
        }
        out << nlohmann::json{{"entries", entries}}.dump(2) << '\n';
    }

  private:
    using Key = std::pair<std::string, std::size_t>;
    static Key key(std::string h, std::size_t c) { return {std::move(h), c}; }

    std::string path_;
    std::map<Key, std::pair<double, std::string>> entries_;
};

/// Exact optimum when n is small enough, SA otherwise.
inline OracleResult baseline_solve(const WeightedGraph &g, std::size_t c,
                                   const SaConfig &cfg = {},
                                   bool prefer_exhaustive = false) {
    if (prefer_exhaustive && g.n() <= kExhaustiveMaxNodes) {
        return exhaustive_best(g, c);
    }
    return sa_solve(g, c, cfg);
}

} // namespace pce
