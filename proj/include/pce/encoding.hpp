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

/// Pauli-string encodings: each classical variable is carried by the sign
/// of one Pauli correlator whose non-identity letters all share a type.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pce/errors.hpp"
#include "pce/random.hpp"

namespace pce {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
        throw ParameterError(std::string("unknown Pauli letter '") + c + "'");
    }
}

/// One encoded variable. Letters are stored qubit 0 first, which is also
/// the textual order ("IXX" acts with X on qubits 1 and 2).
class PauliString {
  public:
    PauliString(std::vector<Pauli> letters, std::size_t variable_index = 0)
        : letters_(std::move(letters)), variable_index_(variable_index) {
        Pauli seen = Pauli::I;
        for (Pauli p : letters_) {
            if (p == Pauli::I) {
                continue;
            }
            if (seen != Pauli::I && p != seen) {
                throw ParameterError("Pauli string mixes letter types");
            }
            seen = p;
        }
        if (seen == Pauli::I) {
            throw ParameterError("Pauli string must have order >= 1");
        }
        if (letters_.size() > 62) {
            throw ParameterError("Pauli string too long");
        }
        type_ = seen;
    }

    static PauliString parse(std::string_view text,
                             std::size_t variable_index = 0) {
        std::vector<Pauli> letters;
        letters.reserve(text.size());
        for (char c : text) {
            letters.push_back(pauli_from_char(c));
        }
        return PauliString(std::move(letters), variable_index);
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept {
        return letters_.size();
    }
    [[nodiscard]] std::size_t order() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(letters_.begin(), letters_.end(),
                          [](Pauli p) { return p != Pauli::I; }));
    }
    [[nodiscard]] Pauli type() const noexcept { return type_; }
    [[nodiscard]] std::size_t variable_index() const noexcept {
        return variable_index_;
    }
    [[nodiscard]] const std::vector<Pauli> &letters() const noexcept {
        return letters_;
    }

    /// Basis-index bit of qubit q is (m-1-q): qubit 0 is the MSB.
    [[nodiscard]] std::uint64_t x_mask() const noexcept {
        return mask_if([](Pauli p) { return p == Pauli::X || p == Pauli::Y; });
    }
    [[nodiscard]] std::uint64_t z_mask() const noexcept {
        return mask_if([](Pauli p) { return p == Pauli::Z || p == Pauli::Y; });
    }

    [[nodiscard]] std::string to_string() const {
        std::string s;
        for (Pauli p : letters_) {
            s.push_back(pauli_char(p));
        }
        return s;
    }

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.letters_ == b.letters_;
    }

  private:
    template <class Pred> std::uint64_t mask_if(Pred pred) const noexcept {
        const std::size_t m = letters_.size();
        std::uint64_t mask = 0;
        for (std::size_t q = 0; q < m; ++q) {
            if (pred(letters_[q])) {
                mask |= std::uint64_t{1} << (m - 1 - q);
            }
        }
        return mask;
    }

    std::vector<Pauli> letters_;
    std::size_t variable_index_;
    Pauli type_ = Pauli::I;
};

enum class EncodingFamily {
    full_xyz_fixed_k,     ///< X, Y and Z strings of one order k
    single_pauli_fixed_k, ///< one Pauli type, one order k
    single_pauli_mixed_k, ///< one Pauli type, orders k_min..k_max
};

inline std::string to_string(EncodingFamily f) {
    switch (f) {
    case EncodingFamily::full_xyz_fixed_k: return "full_xyz_fixed_k";
    case EncodingFamily::single_pauli_fixed_k: return "single_pauli_fixed_k";
    case EncodingFamily::single_pauli_mixed_k: return "single_pauli_mixed_k";
    }
    return "?";
}

inline EncodingFamily encoding_family_from_string(std::string_view s) {
    if (s == "full_xyz_fixed_k") return EncodingFamily::full_xyz_fixed_k;
    if (s == "single_pauli_fixed_k") return EncodingFamily::single_pauli_fixed_k;
    if (s == "single_pauli_mixed_k") return EncodingFamily::single_pauli_mixed_k;
    throw ParameterError("unknown encoding family '" + std::string(s) + "'");
}

struct EncodingSpec {
    EncodingFamily family = EncodingFamily::full_xyz_fixed_k;
    Pauli pauli = Pauli::Z; ///< single-Pauli families only
    std::size_t m = 3;      ///< qubits
    std::size_t k = 2;      ///< order for fixed-k families; k_min for mixed
    std::size_t k_max = 0;  ///< mixed-k upper order, clipped to m
    std::size_t n_vars = 0;
    /// When set, variables receive the enumerated strings in a seeded
    /// random order instead of the canonical one.
    std::optional<std::uint64_t> permutation_seed;

    friend bool operator==(const EncodingSpec &,
                           const EncodingSpec &) = default;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Number of variables an encoding family can hold on m qubits. For the
/// mixed family `k` is the lowest order and `k_max` the highest (clipped
/// to m).
inline std::uint64_t capacity(EncodingFamily family, std::size_t m,
                              std::size_t k, std::size_t k_max = 0) {
    if (m < 1) {
        throw ParameterError("capacity: need m >= 1");
    }
    if (k < 1 || k > m) {
        throw ParameterError("capacity: order k=" + std::to_string(k) +
                             " outside [1, " + std::to_string(m) + "]");
    }
    switch (family) {
    case EncodingFamily::full_xyz_fixed_k: return 3 * binomial(m, k);
    case EncodingFamily::single_pauli_fixed_k: return binomial(m, k);
    case EncodingFamily::single_pauli_mixed_k: {
        const std::size_t hi = std::min(std::max(k_max, k), m);
        std::uint64_t total = 0;
        for (std::size_t j = k; j <= hi; ++j) {
            total += binomial(m, j);
        }
        return total;
    }
    }
    return 0;
}

inline std::uint64_t capacity(const EncodingSpec &spec) {
    return capacity(spec.family, spec.m, spec.k, spec.k_max);
}

/// Smallest m whose capacity reaches n_vars.
inline std::size_t minimal_qubits(EncodingFamily family, std::size_t k,
                                  std::size_t n_vars, std::size_t k_max = 0) {
    if (n_vars < 1) {
        throw ParameterError("minimal_qubits: need n_vars >= 1");
    }
    if (k < 1) {
        throw ParameterError("minimal_qubits: need k >= 1");
    }
    for (std::size_t m = k;; ++m) {
        if (capacity(family, m, k, k_max) >= n_vars) {
            return m;
        }
    }
}

namespace detail {

// Lexicographic k-subsets of {0..m-1}, as basis-index bit positions.
template <class Visit>
void for_each_combination(std::size_t m, std::size_t k, Visit &&visit) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

inline std::vector<Pauli> letters_on_bits(std::size_t m,
                                          const std::vector<std::size_t> &bits,
                                          Pauli p) {
    std::vector<Pauli> letters(m, Pauli::I);
    for (std::size_t b : bits) {
        letters[m - 1 - b] = p;
    }
    return letters;
}

} // namespace detail

/// Canonical enumeration: support sets in lexicographic order of their
/// bit positions (bit 0 is the rightmost letter), X, Y, Z per support for
/// the full family, ascending order k for the mixed family. Returns the
/// first n_vars strings, variable i getting entry i.
inline std::vector<PauliString> enumerate_strings(const EncodingSpec &spec) {
    const std::uint64_t cap = capacity(spec);
    if (cap < spec.n_vars) {
        throw SizingError("encoding " + to_string(spec.family) + " on m=" +
                          std::to_string(spec.m) + " qubits holds " +
                          std::to_string(cap) + " variables, " +
                          std::to_string(spec.n_vars) + " required");
    }
    if (spec.family != EncodingFamily::full_xyz_fixed_k &&
        spec.pauli == Pauli::I) {
        throw ParameterError("single-Pauli encoding needs X, Y or Z");
    }

    std::vector<std::vector<Pauli>> all;
    all.reserve(spec.n_vars);
    const auto add_order = [&](std::size_t k) {
        detail::for_each_combination(
            spec.m, k, [&](const std::vector<std::size_t> &bits) {
                if (spec.family == EncodingFamily::full_xyz_fixed_k) {
                    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                        all.push_back(detail::letters_on_bits(spec.m, bits, p));
                    }
                } else {
                    all.push_back(
                        detail::letters_on_bits(spec.m, bits, spec.pauli));
                }
            });
    };
    if (spec.family == EncodingFamily::single_pauli_mixed_k) {
        const std::size_t hi = std::min(std::max(spec.k_max, spec.k), spec.m);
        for (std::size_t k = spec.k; k <= hi && all.size() < spec.n_vars;
             ++k) {
            add_order(k);
        }
    } else {
        add_order(spec.k);
    }
    all.resize(spec.n_vars);

    if (spec.permutation_seed) {
        Rng rng(*spec.permutation_seed);
        for (std::size_t i = all.size(); i > 1; --i) {
            std::swap(all[i - 1], all[uniform_index(rng, i)]);
        }
    }

    std::vector<PauliString> out;
    out.reserve(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        out.emplace_back(std::move(all[i]), i);
    }
    return out;
}

/// Groups strings by Pauli type (X, then Y, then Z). Same-type strings
/// commute, so each group is one measurement setting.
inline std::vector<std::vector<PauliString>>
commuting_groups(const std::vector<PauliString> &strings) {
    std::vector<std::vector<PauliString>> groups;
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        std::vector<PauliString> g;
        for (const auto &s : strings) {
            if (s.type() == p) {
                g.push_back(s);
            }
        }
        if (!g.empty()) {
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

/// Order k used for an n-node instance: 2 up to 25 nodes, 3 up to 50,
/// 4 beyond.
inline std::size_t default_order(std::size_t n_nodes) {
    if (n_nodes <= 25) {
        return 2;
    }
    return n_nodes <= 50 ? 3 : 4;
}

/// Full X/Y/Z encoding on the fewest qubits for an n-node instance.
inline EncodingSpec default_encoding(std::size_t n_nodes) {
    EncodingSpec spec;
    spec.family = EncodingFamily::full_xyz_fixed_k;
    spec.k = default_order(n_nodes);
    spec.n_vars = n_nodes;
    spec.m = minimal_qubits(spec.family, spec.k, n_nodes);
    return spec;
}

} // namespace pce
