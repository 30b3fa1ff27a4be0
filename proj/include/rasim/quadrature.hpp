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

#ifndef RASIM_QUADRATURE_HPP
#define RASIM_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rasim
{

struct QuadratureOptions
{
    double rel_tol = 1e-8;
    unsigned max_depth = 14; // adaptive bisection depth per panel (2^depth subintervals)

    // Known kink locations; the integration domain is split there so the
    // adaptive rule never straddles a non-smooth point.
    std::vector<double> breakpoints;
};

// Thrown when the requested accuracy was not reached; carries the estimate
// that was achieved so callers can still inspect it.
class quadrature_error : public std::runtime_error
{
  public:
    quadrature_error(const std::string& what, double achieved_value, double achieved_error)
        : std::runtime_error(what), value(achieved_value), error(achieved_error)
    {
    }

    double value;
    double error;
};

// Adaptive Gauss-Kronrod integration of f over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opts = {})
{
    if (a == b)
        return 0.0;

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : opts.breakpoints)
        if (x > a && x < b)
            edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;

    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        double err = 0.0;
        total += rule::integrate(f, edges[i], edges[i + 1], opts.max_depth, opts.rel_tol, &err);
        total_err += err;
    }

    const double scale = std::max(std::abs(total), 1e-300);
    if (!std::isfinite(total) || total_err > 10.0 * opts.rel_tol * scale + 1e-300)
        throw quadrature_error("integrate: requested accuracy not reached", total, total_err);
    return total;
}

} // namespace rasim

#endif
