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

/// Weighted undirected graphs, cut evaluation and graph file I/O.
///
/// Node indices are 0-based everywhere. Weights are kept as a dense
/// symmetric matrix since the benchmark instances are (near) complete.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pce/errors.hpp"
#include "pce/random.hpp"

namespace pce {

class WeightedGraph {
  public:
    /// `weights` is row-major n*n. Throws ParameterError unless it is
    /// symmetric, zero on the diagonal, finite and non-negative, n >= 2.
    WeightedGraph(std::size_t n, std::vector<double> weights)
        : n_(n), w_(std::move(weights)) {
        if (n_ < 2) {
            throw ParameterError("graph needs at least 2 nodes, got " +
                                 std::to_string(n_));
        }
        if (w_.size() != n_ * n_) {
            throw ParameterError("weight matrix size mismatch");
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (w_[i * n_ + i] != 0.0) {
                throw ParameterError("nonzero diagonal weight at node " +
                                     std::to_string(i));
            }
            for (std::size_t j = i + 1; j < n_; ++j) {
                const double a = w_[i * n_ + j];
                if (!std::isfinite(a) || a < 0.0) {
                    throw ParameterError("invalid weight on edge (" +
                                         std::to_string(i) + "," +
                                         std::to_string(j) + ")");
                }
                if (a != w_[j * n_ + i]) {
                    throw ParameterError("asymmetric weight on edge (" +
                                         std::to_string(i) + "," +
                                         std::to_string(j) + ")");
                }
            }
        }
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }

    [[nodiscard]] double weight(std::size_t i, std::size_t j) const {
        return w_[i * n_ + j];
    }

    /// Row i of the weight matrix.
    [[nodiscard]] const double *row(std::size_t i) const {
        return w_.data() + i * n_;
    }

    /// Weighted degree d_i = sum_j d_ij.
    [[nodiscard]] double degree(std::size_t i) const {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            s += w_[i * n_ + j];
        }
        return s;
    }

    [[nodiscard]] double max_weight() const {
        return *std::max_element(w_.begin(), w_.end());
    }

    /// Number of node pairs with nonzero weight.
    [[nodiscard]] std::size_t edge_count() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                e += w_[i * n_ + j] != 0.0;
            }
        }
        return e;
    }

    /// FNV-1a over n and the bit patterns of the upper triangle.
    [[nodiscard]] std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto feed = [&h](std::uint64_t v) {
            for (int b = 0; b < 8; ++b) {
                h ^= (v >> (8 * b)) & 0xffU;
                h *= 0x100000001b3ULL;
            }
        };
        feed(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                feed(std::bit_cast<std::uint64_t>(w_[i * n_ + j]));
            }
        }
        return h;
    }

    friend bool operator==(const WeightedGraph &,
                           const WeightedGraph &) = default;

  private:
    std::size_t n_;
    std::vector<double> w_;
};

/// A +/-1 spin per node. x = (z + 1) / 2 gives the 0/1 form.
class CutAssignment {
  public:
    CutAssignment() = default;

    explicit CutAssignment(std::vector<int> z) : z_(std::move(z)) {
        for (std::size_t i = 0; i < z_.size(); ++i) {
            if (z_[i] != 1 && z_[i] != -1) {
                throw ParameterError("cut assignment entry " +
                                     std::to_string(i) + " is not +/-1");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return z_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return z_[i]; }
    [[nodiscard]] const std::vector<int> &spins() const noexcept {
        return z_;
    }

    [[nodiscard]] CutAssignment flipped() const {
        CutAssignment out = *this;
        for (int &s : out.z_) {
            s = -s;
        }
        return out;
    }

    /// "+-+..." rendering, node 0 first.
    [[nodiscard]] std::string to_string() const {
        std::string s;
        s.reserve(z_.size());
        for (int v : z_) {
            s.push_back(v > 0 ? '+' : '-');
        }
        return s;
    }

    friend bool operator==(const CutAssignment &,
                           const CutAssignment &) = default;

  private:
    std::vector<int> z_;
};

/// Sum of weights of edges whose endpoints carry opposite spins.
inline double cut_size(const WeightedGraph &g, const CutAssignment &z) {
    if (z.size() != g.n()) {
        throw ParameterError("assignment length " + std::to_string(z.size()) +
                             " does not match graph size " +
                             std::to_string(g.n()));
    }
    double cut = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double *r = g.row(i);
        for (std::size_t j = i + 1; j < g.n(); ++j) {
            if (z[i] != z[j]) {
                cut += r[j];
            }
        }
    }
    return cut;
}

struct PartitionCount {
    std::size_t minus = 0;
    std::size_t plus = 0;
    friend bool operator==(const PartitionCount &,
                           const PartitionCount &) = default;
};

inline PartitionCount partition_count(const CutAssignment &z) {
    PartitionCount pc;
    for (std::size_t i = 0; i < z.size(); ++i) {
        (z[i] < 0 ? pc.minus : pc.plus) += 1;
    }
    return pc;
}

struct UnitWeights {};
struct UniformWeights {
    double lo = 0.0;
    double hi = 1.0;
};
using WeightMode = std::variant<UnitWeights, UniformWeights>;

/// Complete graph on n nodes. With `deletion_prob` > 0 each edge is
/// independently dropped, which yields the near-complete instances used
/// at larger sizes. Same arguments always give the same graph.
inline WeightedGraph generate_complete_graph(std::size_t n, WeightMode mode,
                                             std::uint64_t seed,
                                             double deletion_prob = 0.0) {
    if (n < 2) {
        throw ParameterError("n must be >= 2");
    }
    if (const auto *u = std::get_if<UniformWeights>(&mode)) {
        if (!(u->lo >= 0.0) || !(u->lo <= u->hi) || !std::isfinite(u->hi)) {
            throw ParameterError("uniform weight range must satisfy 0 <= lo "
                                 "<= hi");
        }
    }
    if (!(deletion_prob >= 0.0 && deletion_prob < 1.0)) {
        throw ParameterError("edge deletion probability must be in [0, 1)");
    }
    Rng rng(seed);
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 1.0;
            if (const auto *u = std::get_if<UniformWeights>(&mode)) {
                v = uniform(rng, u->lo, u->hi);
            }
            if (deletion_prob > 0.0 && uniform01(rng) < deletion_prob) {
                v = 0.0;
            }
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }
    return WeightedGraph(n, std::move(w));
}

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double density = 0.0;
    double average_degree = 0.0;
    double clustering = 0.0; ///< mean local clustering coefficient
    bool connected = false;
};

inline GraphStats graph_stats(const WeightedGraph &g) {
    const std::size_t n = g.n();
    GraphStats s;
    s.nodes = n;
    s.edges = g.edge_count();
    s.density = 2.0 * static_cast<double>(s.edges) /
                static_cast<double>(n * (n - 1));
    s.average_degree =
        2.0 * static_cast<double>(s.edges) / static_cast<double>(n);

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (g.weight(i, j) != 0.0) {
                adj[i].push_back(j);
            }
        }
    }
    double cc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &nb = adj[i];
        if (nb.size() < 2) {
            continue;
        }
        std::size_t links = 0;
        for (std::size_t a = 0; a < nb.size(); ++a) {
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                links += g.weight(nb[a], nb[b]) != 0.0;
            }
        }
        cc += 2.0 * static_cast<double>(links) /
              static_cast<double>(nb.size() * (nb.size() - 1));
    }
    s.clustering = cc / static_cast<double>(n);

    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    s.connected = reached == n;
    return s;
}

namespace detail {

struct EdgeTable {
    std::size_t max_index = 0;
    bool any = false;
    std::map<std::pair<std::size_t, std::size_t>, double> weights;

    void add(long long i, long long j, double w, const std::string &where,
             long long n_limit = -1) {
        if (i < 0 || j < 0 || (n_limit >= 0 && (i >= n_limit || j >= n_limit))) {
            throw FormatError(where + ": node index out of range");
        }
        if (i == j) {
            throw FormatError(where + ": self-loop on node " +
                              std::to_string(i));
        }
        if (!std::isfinite(w) || w < 0.0) {
            throw FormatError(where + ": weight must be finite and >= 0");
        }
        const auto a = static_cast<std::size_t>(std::min(i, j));
        const auto b = static_cast<std::size_t>(std::max(i, j));
        auto [it, inserted] = weights.emplace(std::make_pair(a, b), w);
        if (!inserted && it->second != w) {
            throw FormatError(where + ": conflicting weight for edge (" +
                              std::to_string(a) + "," + std::to_string(b) +
                              ")");
        }
        max_index = std::max(max_index, b);
        any = true;
    }

    WeightedGraph build(std::size_t n) const {
        std::vector<double> w(n * n, 0.0);
        for (const auto &[key, v] : weights) {
            w[key.first * n + key.second] = v;
            w[key.second * n + key.first] = v;
        }
        return WeightedGraph(n, std::move(w));
    }
};

inline WeightedGraph parse_graph_json(const std::string &text,
                                      const std::string &origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") ||
        !doc["n"].is_number_integer()) {
        throw FormatError(origin + ": field \"n\" must be an integer");
    }
    const long long n = doc["n"].get<long long>();
    if (n < 2) {
        throw FormatError(origin + ": field \"n\" must be >= 2");
    }
    EdgeTable table;
    if (doc.contains("edges")) {
        const auto &edges = doc["edges"];
        if (!edges.is_array()) {
            throw FormatError(origin + ": field \"edges\" must be an array");
        }
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const auto &e = edges[k];
            const std::string where =
                origin + ": edges[" + std::to_string(k) + "]";
            if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
                !e[1].is_number_integer() || !e[2].is_number()) {
                throw FormatError(where + ": expected [i, j, w]");
            }
            table.add(e[0].get<long long>(), e[1].get<long long>(),
                      e[2].get<double>(), where, n);
        }
    }
    return table.build(static_cast<std::size_t>(n));
}

inline WeightedGraph parse_edge_list(const std::string &text,
                                     const std::string &origin) {
    std::istringstream in(text);
    std::string line;
    EdgeTable table;
    std::size_t lineno = 0;
    std::size_t declared_n = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            // "# n=<count>" pins the node count so trailing isolated
            // nodes survive a round trip.
            std::istringstream cs(line.substr(hash + 1));
            std::string tok;
            if (cs >> tok && tok.rfind("n=", 0) == 0) {
                try {
                    declared_n = std::stoul(tok.substr(2));
                } catch (const std::exception &) {
                    declared_n = 0;
                }
            }
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(lineno);
        long long i = 0;
        long long j = 0;
        double w = 0.0;
        std::string extra;
        try {
            std::size_t pos = 0;
            i = std::stoll(first, &pos);
            if (pos != first.size()) {
                throw std::invalid_argument(first);
            }
        } catch (const std::exception &) {
            throw FormatError(where + ": expected \"i j w\"");
        }
        if (!(ls >> j >> w) || (ls >> extra)) {
            throw FormatError(where + ": expected \"i j w\"");
        }
        table.add(i, j, w, where);
    }
    if (!table.any && declared_n < 2) {
        throw FormatError(origin + ": no edges");
    }
    if (declared_n != 0 && declared_n <= table.max_index) {
        throw FormatError(origin + ": edge index exceeds declared n=" +
                          std::to_string(declared_n));
    }
    return table.build(std::max(declared_n, table.max_index + 1));
}

} // namespace detail

/// Parses either the JSON form {"n": .., "edges": [[i, j, w], ...]} or a
/// whitespace edge list ("i j w" per line, '#' comments). The JSON form is
/// detected by a leading '{'.
inline WeightedGraph parse_graph(const std::string &text,
                                 const std::string &origin = "<graph>") {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return detail::parse_graph_json(text, origin);
    }
    return detail::parse_edge_list(text, origin);
}

inline WeightedGraph read_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open graph file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), path);
}

inline nlohmann::json graph_to_json(const WeightedGraph &g) {
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = i + 1; j < g.n(); ++j) {
            if (g.weight(i, j) != 0.0) {
                edges.push_back({i, j, g.weight(i, j)});
            }
        }
    }
    return {{"n", g.n()}, {"edges", std::move(edges)}};
}

/// Writes JSON when `path` ends in ".json", an edge list otherwise.
/// Weights are printed with round-trip precision.
inline void write_graph(const WeightedGraph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write graph file " + path);
    }
    const bool json = path.size() >= 5 &&
                      path.compare(path.size() - 5, 5, ".json") == 0;
    if (json) {
        out << graph_to_json(g).dump() << '\n';
    } else {
        out << "# n=" << g.n() << '\n';
        out.precision(17);
        for (std::size_t i = 0; i < g.n(); ++i) {
            for (std::size_t j = i + 1; j < g.n(); ++j) {
                if (g.weight(i, j) != 0.0) {
                    out << i << ' ' << j << ' ' << g.weight(i, j) << '\n';
                }
            }
        }
    }
    if (!out) {
        throw FormatError("write failed for " + path);
    }
}

} // namespace pce
