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

#include <numbers>
#include <random>

#include "pce/encoding.hpp"
#include "pce/quantum.hpp"
#include "support.hpp"

using namespace pce;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> random_theta(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-std::numbers::pi,
                                             std::numbers::pi);
    std::vector<double> t(n);
    for (auto &v : t) {
        v = u(rng);
    }
    return t;
}

std::vector<PauliString> all_strings(std::size_t m) {
    // Every non-identity single-type string on m qubits.
    std::vector<PauliString> out;
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<Pauli> letters(m, Pauli::I);
            for (std::size_t q = 0; q < m; ++q) {
                if ((mask >> q) & 1) {
                    letters[q] = p;
                }
            }
            out.emplace_back(letters);
        }
    }
    return out;
}

} // namespace

TEST_CASE("parameter count", "[quantum]") {
    CHECK(parameter_count(3, 1) == 18);
    CHECK(parameter_count(1, 1) == 6);
    CHECK(parameter_count(4, 2) == 40);
    CHECK_THROWS_AS(parameter_count(0, 1), ParameterError);
}

TEST_CASE("state preparation basics", "[quantum]") {
    const std::vector<double> zeros(parameter_count(3), 0.0);
    const auto s = prepare_state(3, zeros);
    CHECK(std::abs(s.amplitudes()[0] - cplx(1.0, 0.0)) < 1e-15);
    for (std::size_t i = 1; i < s.dim(); ++i) {
        CHECK(std::abs(s.amplitudes()[i]) == 0.0);
    }

    std::vector<double> flip(parameter_count(1), 0.0);
    flip[0] = std::numbers::pi;
    const auto one = prepare_state(1, flip);
    CHECK_THAT(std::abs(one.amplitudes()[0]), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(one.amplitudes()[1]), WithinAbs(1.0, 1e-15));

    CHECK_THROWS_AS(prepare_state(3, std::vector<double>(5, 0.0)),
                    ParameterError);
    CHECK_THROWS_AS(QuantumState(0), ParameterError);
}

TEST_CASE("state matches dense gate product", "[quantum][oracle]") {
    std::mt19937_64 rng(2024);
    for (std::size_t m = 1; m <= 5; ++m) {
        for (std::size_t layers : {1, 2}) {
            for (int trial = 0; trial < 10; ++trial) {
                const auto theta =
                    random_theta(parameter_count(m, layers), rng);
                const auto s = prepare_state(m, theta, layers);
                const auto ref = testsupport::dense_state(m, theta, layers);
                double err = 0.0;
                for (std::size_t i = 0; i < s.dim(); ++i) {
                    err = std::max(
                        err, std::abs(s.amplitudes()[i] -
                                      ref(static_cast<Eigen::Index>(i))));
                }
                CHECK(err < 1e-12);
                CHECK_THAT(s.norm_squared(), WithinAbs(1.0, 1e-12));
            }
        }
    }
}

TEST_CASE("expectations on known states", "[quantum]") {
    const QuantumState zero(3);
    CHECK(expectation(zero, PauliString::parse("ZZI")) == 1.0);
    CHECK(expectation(zero, PauliString::parse("XXI")) == 0.0);

    QuantumState plus(3);
    for (std::size_t q = 0; q < 3; ++q) {
        plus.apply_ry_rz(q, std::numbers::pi / 2, 0.0);
    }
    CHECK_THAT(expectation(plus, PauliString::parse("XIX")),
               WithinAbs(1.0, 1e-14));

    const std::vector<PauliString> zs{PauliString::parse("IZZ"),
                                      PauliString::parse("ZIZ"),
                                      PauliString::parse("ZZI")};
    CHECK(expectations(zero, zs) == std::vector<double>{1.0, 1.0, 1.0});

    EncodingSpec spec;
    spec.m = 3;
    spec.k = 2;
    spec.n_vars = 9;
    CHECK(expectations(zero, enumerate_strings(spec)) ==
          std::vector<double>{0, 0, 1, 0, 0, 1, 0, 0, 1});

    CHECK_THROWS_AS(expectation(zero, PauliString::parse("ZZ")),
                    ParameterError);
}

TEST_CASE("expectations match dense oracle", "[quantum][oracle]") {
    std::mt19937_64 rng(7);
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto strings = all_strings(m);
        for (int trial = 0; trial < 10; ++trial) {
            const auto theta = random_theta(parameter_count(m), rng);
            const auto s = prepare_state(m, theta);
            const auto psi = testsupport::dense_state(m, theta, 1);
            const auto fast = expectations(s, strings);
            for (std::size_t i = 0; i < strings.size(); ++i) {
                CHECK_THAT(fast[i], WithinAbs(testsupport::dense_expectation(
                                                  psi, strings[i].letters()),
                                              1e-12));
                CHECK(std::abs(fast[i]) <= 1.0 + 1e-12);
                CHECK(std::abs(expectation_complex(s, strings[i]).imag()) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("state json", "[quantum]") {
    const auto j = state_to_json(QuantumState(2));
    CHECK(j.dump().find("amplitudes") != std::string::npos);
}
