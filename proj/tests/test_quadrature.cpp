// SPDX-License-Identifier: Apache-2.0
//
// rasim: rotatable-antenna array simulation and optimization toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "rasim/quadrature.hpp"

#include <cmath>

using namespace rasim;

TEST_CASE("smooth integrands")
{
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, pi) == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
          Catch::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("kinked integrand with a declared breakpoint")
{
    QuadratureOptions q;
    q.rel_tol = 1e-10;
    q.breakpoints = {0.3};
    const double v = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, q);
    const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(v == Catch::Approx(exact).epsilon(1e-12));
}

TEST_CASE("unreachable accuracy reports the achieved estimate")
{
    QuadratureOptions q;
    q.rel_tol = 1e-14;
    q.max_depth = 2;
    bool threw = false;
    try
    {
        // endpoint singularity, integrable but hopeless at depth 2
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0, q);
    }
    catch (const quadrature_error& e)
    {
        threw = true;
        CHECK(std::isfinite(e.value));
        CHECK(e.error > 0.0);
    }
    CHECK(threw);
}
