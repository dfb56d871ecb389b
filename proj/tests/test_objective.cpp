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

#include <memory>
#include <random>

#include "pce/objective.hpp"
#include "support.hpp"

using namespace pce;
using Catch::Approx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ObjectiveSpec make_spec(const WeightedGraph &g, std::size_t c, double alpha,
                        double beta, double eta = 0.0) {
    ObjectiveSpec s;
    s.graph = std::make_shared<const WeightedGraph>(g);
    s.encoding.n_vars = g.n();
    s.c = c;
    s.alpha = alpha;
    s.beta = beta;
    s.eta = eta;
    return s;
}

} // namespace

TEST_CASE("soft values", "[objective]") {
    const auto t = soft_values(std::vector<double>{0.0, 0.5, -0.5}, 1.0);
    CHECK(t[0] == 0.0);
    CHECK_THAT(t[1], WithinAbs(0.46211715726000974, 1e-15));
    CHECK(t[2] == -t[1]);
    CHECK_THAT(soft_values(std::vector<double>{1.0}, 100.0)[0],
               WithinAbs(1.0, 1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> e(5), ne(5);
        for (int i = 0; i < 5; ++i) {
            e[i] = u(rng);
            ne[i] = -e[i];
        }
        const double a = 0.1 + 10 * (u(rng) + 1);
        const auto p = soft_values(e, a);
        const auto q = soft_values(ne, a);
        for (int i = 0; i < 5; ++i) {
            CHECK(p[i] == -q[i]);
        }
    }
}

TEST_CASE("loss hand values", "[objective]") {
    const auto k3 = testsupport::unit_complete(3);
    CHECK_THAT(loss(make_spec(k3, 1, 5.0, 10.0), std::vector<double>(3, 0.0)),
               WithinAbs(11.5, 1e-12));

    for (double beta : {0.0, 0.5, 3.0}) {
        const auto spec = make_spec(k3, 1, 1e3, beta);
        const std::vector<double> e{1.0, -1.0, -1.0};
        CHECK_THAT(loss(spec, e), WithinAbs(2.0 + 4.0 * beta, 1e-6));
    }

    // Regularization term on top of the plain loss.
    const auto plain = make_spec(k3, 1, 1.0, 2.0);
    const auto reg = make_spec(k3, 1, 1.0, 2.0, 0.7);
    const std::vector<double> e{0.3, -0.2, 0.9};
    const auto t = soft_values(e, 1.0);
    double sq = 0.0;
    for (double v : t) {
        sq += v * v;
    }
    CHECK_THAT(loss(reg, e) - loss(plain, e),
               WithinAbs(0.7 * (sq / 3) * (sq / 3), 1e-14));
    CHECK_THROWS_AS(loss(plain, std::vector<double>{0.1, 0.2}),
                    ParameterError);
}

TEST_CASE("regularization", "[objective]") {
    CHECK(regularization(std::vector<double>(4, 0.0), 1.0, 4) == 0.0);
    CHECK(regularization(std::vector<double>{1, -1, 1}, 1.0, 3) == 1.0);
    CHECK(regularization(std::vector<double>{0.5, 0.5}, 2.0, 2) ==
          Approx(0.125));
}

TEST_CASE("relaxed loss reduces to the penalized cut on spins",
          "[objective][property]") {
    // Exhaustive over z for small random graphs.
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const auto g = testsupport::random_graph(n, 500 + trial);
        for (std::size_t c = 1; c <= n / 2; ++c) {
            const double beta = 0.25 * (trial % 5);
            const auto spec = make_spec(g, c, 1.0, beta);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n);
                 ++mask) {
                std::vector<int> z(n);
                std::vector<double> t(n);
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    z[i] = (mask >> i) & 1 ? -1 : 1;
                    t[i] = z[i];
                    sum += z[i];
                }
                const double target = double(n) - 2.0 * double(c);
                const double want = testsupport::brute_cut(g, z) +
                                    beta * (sum - target) * (sum - target);
                REQUIRE_THAT(loss_from_soft(spec, t), WithinAbs(want, 1e-9));
            }
        }
    }
}

TEST_CASE("beta_c", "[objective]") {
    CHECK(beta_c(testsupport::unit_complete(4), 2) == 6.0);
    for (std::size_t n = 3; n <= 9; ++n) {
        for (std::size_t c = 1; c <= n / 2; ++c) {
            CHECK(beta_c(testsupport::unit_complete(n), c) ==
                  double(c * (n - 1)));
        }
    }
    CHECK(beta_c(testsupport::path_graph(4), 2) == 4.0);
    CHECK_THROWS_AS(beta_c(testsupport::path_graph(4), 0), ParameterError);
}

TEST_CASE("beta_c bounds every budget cut", "[objective][property]") {
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 3 + trial % 8;
        const auto g = testsupport::random_graph(n, 900 + trial, 0.8);
        for (std::size_t c = 1; c <= n / 2; ++c) {
            const double bound = beta_c(g, c);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n);
                 ++mask) {
                if (std::popcount(mask) != static_cast<int>(c)) {
                    continue;
                }
                std::vector<int> z(n);
                for (std::size_t i = 0; i < n; ++i) {
                    z[i] = (mask >> i) & 1 ? -1 : 1;
                }
                REQUIRE(testsupport::brute_cut(g, z) <= bound + 1e-12);
            }
        }
    }
}

TEST_CASE("decode and feasibility", "[objective]") {
    CHECK(decode(std::vector<double>{0.3, -0.7, 0.0}) ==
          CutAssignment({1, -1, 1}));
    CHECK(decode(std::vector<double>{1, -1, -1}) ==
          CutAssignment({1, -1, -1}));
    const std::vector<double> e{0.2, -0.4, 0.9, -1e-9};
    const std::vector<double> ne{-0.2, 0.4, -0.9, 1e-9};
    CHECK(decode(ne) == decode(e).flipped());

    CHECK(is_feasible(CutAssignment({-1, -1, 1, 1, 1, 1}), 2));
    CHECK(is_feasible(CutAssignment({-1, -1, -1, -1, 1, 1}), 2));
    CHECK_FALSE(is_feasible(CutAssignment({-1, -1, -1, 1, 1, 1}), 2));
}

TEST_CASE("binarization", "[objective]") {
    CHECK(binarization(std::vector<double>{0.95, -0.99, 0.5, -0.91}) == 0.75);
    CHECK(binarization(std::vector<double>{0.9, -0.9, 0.0}) == 0.0);
    CHECK(binarization(std::vector<double>{1.0, -1.0}) == 1.0);
    CHECK_THROWS_AS(binarization(std::vector<double>{}), ParameterError);
}

TEST_CASE("plateau width", "[objective]") {
    CHECK_THAT(plateau_width(1.0), WithinRel(2.0 * std::atanh(0.99), 1e-15));
    CHECK_THAT(plateau_width(1.0), WithinAbs(5.293, 1e-3));
    for (double a = 1e-3; a < 1e6; a *= 3.7) {
        CHECK(plateau_width(2 * a) == plateau_width(a) / 2);
    }
    CHECK(plateau_width(1e300) < 1e-299);
    CHECK_THROWS_AS(plateau_width(0.0), ParameterError);
    CHECK_THROWS_AS(plateau_width(1.0, 1.0), ParameterError);
}

TEST_CASE("objective validation", "[objective]") {
    const auto g = testsupport::unit_complete(6);
    CHECK_NOTHROW(make_spec(g, 3, 1.0, 1.0).validate());
    CHECK_THROWS_AS(make_spec(g, 4, 1.0, 1.0).validate(), ParameterError);
    CHECK_THROWS_AS(make_spec(g, 0, 1.0, 1.0).validate(), ParameterError);
    CHECK_THROWS_AS(make_spec(g, 2, 0.0, 1.0).validate(), ParameterError);
    CHECK_THROWS_AS(make_spec(g, 2, 1.0, -1.0).validate(), ParameterError);
    ObjectiveSpec none;
    CHECK_THROWS_AS(none.validate(), ParameterError);
}
