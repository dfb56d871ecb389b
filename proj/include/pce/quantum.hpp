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

/// Exact statevector simulation of the brickwork ansatz and Pauli-string
/// expectation values.
///
/// Amplitude order: qubit 0 is the most significant bit of the basis
/// index. Ansatz layout for `layers` = L on m qubits:
///
///   repeat L times:
///     RY, RZ on every qubit
///     CZ on (0,1), (2,3), ...
///     RY, RZ on every qubit
///     CZ on (1,2), (3,4), ...
///   RY, RZ on every qubit
///
/// Parameters are consumed column by column, per qubit as (ry, rz), so
/// parameter_count = 2 m (2 L + 1).

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pce/encoding.hpp"
#include "pce/errors.hpp"

namespace pce {

using cplx = std::complex<double>;

inline constexpr const char *kAnsatzLayout =
    "brickwork[ry,rz|cz even|ry,rz|cz odd]xL+ry,rz";

inline std::size_t parameter_count(std::size_t m, std::size_t layers = 1) {
    if (m < 1) {
        throw ParameterError("parameter_count: need m >= 1");
    }
    return 2 * m * (2 * layers + 1);
}

class QuantumState {
  public:
    explicit QuantumState(std::size_t m) : m_(m) {
        if (m < 1 || m > 30) {
            throw ParameterError("qubit count must be in [1, 30]");
        }
        amps_.assign(std::size_t{1} << m, cplx{0.0, 0.0});
        amps_[0] = 1.0;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }

    void reset() {
        std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
        amps_[0] = 1.0;
    }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const cplx &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    /// Applies RZ(phi) * RY(theta) to `qubit`.
    void apply_ry_rz(std::size_t qubit, double theta, double phi) {
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        const cplx lo = std::polar(1.0, -0.5 * phi);
        const cplx hi = std::conj(lo);
        const std::size_t stride = std::size_t{1} << (m_ - 1 - qubit);
        const std::size_t n = amps_.size();
        for (std::size_t base = 0; base < n; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const cplx a0 = amps_[i];
                const cplx a1 = amps_[i + stride];
                amps_[i] = lo * (c * a0 - s * a1);
                amps_[i + stride] = hi * (s * a0 + c * a1);
            }
        }
    }

    void apply_cz(std::size_t qa, std::size_t qb) {
        const std::size_t mask = (std::size_t{1} << (m_ - 1 - qa)) |
                                 (std::size_t{1} << (m_ - 1 - qb));
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == mask) {
                amps_[i] = -amps_[i];
            }
        }
    }

  private:
    std::size_t m_;
    std::vector<cplx> amps_;
};

/// Runs the ansatz from |0...0> into `state`, overwriting it.
inline void prepare_state_into(QuantumState &state,
                               std::span<const double> theta,
                               std::size_t layers = 1) {
    const std::size_t m = state.num_qubits();
    if (theta.size() != parameter_count(m, layers)) {
        throw ParameterError("ansatz expects " +
                             std::to_string(parameter_count(m, layers)) +
                             " parameters, got " +
                             std::to_string(theta.size()));
    }
    state.reset();
    std::size_t p = 0;
    const auto rotation_column = [&] {
        for (std::size_t q = 0; q < m; ++q) {
            state.apply_ry_rz(q, theta[p], theta[p + 1]);
            p += 2;
        }
    };
    for (std::size_t l = 0; l < layers; ++l) {
        rotation_column();
        for (std::size_t q = 0; q + 1 < m; q += 2) {
            state.apply_cz(q, q + 1);
        }
        rotation_column();
        for (std::size_t q = 1; q + 1 < m; q += 2) {
            state.apply_cz(q, q + 1);
        }
    }
    rotation_column();
}

inline QuantumState prepare_state(std::size_t m, std::span<const double> theta,
                                  std::size_t layers = 1) {
    QuantumState state(m);
    prepare_state_into(state, theta, layers);
    return state;
}

/// <psi|P|psi> including the (numerically tiny) imaginary part.
inline cplx expectation_complex(const QuantumState &state,
                                const PauliString &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw ParameterError("Pauli string acts on " +
                             std::to_string(p.num_qubits()) +
                             " qubits, state has " +
                             std::to_string(state.num_qubits()));
    }
    // P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const auto amps = state.amplitudes();
    cplx acc{0.0, 0.0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const cplx term = std::conj(amps[b ^ x]) * amps[b];
        if (std::popcount(b & z) & 1) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    switch (std::popcount(x & z) & 3) {
    case 1: return {-acc.imag(), acc.real()};
    case 2: return -acc;
    case 3: return {acc.imag(), -acc.real()};
    default: return acc;
    }
}

inline double expectation(const QuantumState &state, const PauliString &p) {
    return expectation_complex(state, p).real();
}

inline void expectations_into(const QuantumState &state,
                              const std::vector<PauliString> &strings,
                              std::span<double> out) {
    for (std::size_t i = 0; i < strings.size(); ++i) {
        out[i] = expectation(state, strings[i]);
    }
}

inline std::vector<double> expectations(const QuantumState &state,
                                        const std::vector<PauliString> &strings) {
    std::vector<double> out(strings.size());
    expectations_into(state, strings, out);
    return out;
}

/// Debug dump: {"m": m, "amplitudes": [[re, im], ...]}.
inline nlohmann::json state_to_json(const QuantumState &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const cplx &a : state.amplitudes()) {
        amps.push_back({a.real(), a.imag()});
    }
    return {{"m", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

} // namespace pce
