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
//
// Shared fixtures and independent oracles for the test suites. Everything in
// here is deliberately simple and slow, so the library code can be checked
// against brute force.

#ifndef RASIM_TESTS_SUPPORT_HPP
#define RASIM_TESTS_SUPPORT_HPP

#include "rasim/channel.hpp"
#include "rasim/geometry.hpp"
#include "rasim/quadrature.hpp"
#include "rasim/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace rasim_tests
{

using namespace rasim;

inline ArrayConfig paper_array(int nx, int ny)
{
    ArrayConfig cfg;
    cfg.n_x = nx;
    cfg.n_y = ny;
    cfg.wavelength = 0.125;
    cfg.spacing_delta = cfg.wavelength / 2.0;
    cfg.element_area = cfg.wavelength * cfg.wavelength / (4.0 * pi);
    cfg.validate();
    return cfg;
}

inline Scenario base_scenario(int nx, int ny, double directivity_p = 0.5, double theta_max = pi / 6)
{
    Scenario sc;
    sc.array = paper_array(nx, ny);
    sc.noise_power_w = 1e-11; // -80 dBm
    sc.pattern.directivity_p = directivity_p;
    sc.theta_max = theta_max;
    return sc;
}

inline void add_user(Scenario& sc, double r, double psi, double phi, double power_w = 0.01)
{
    sc.users.push_back({UserPlacement{r, psi, phi}, power_w});
}

// Total radiated power of the element pattern over the sphere, by 1D
// quadrature in the polar angle (the pattern has no azimuth dependence).
inline double pattern_sphere_integral(const GainPattern& pattern, double rel_tol = 1e-10)
{
    QuadratureOptions q;
    q.rel_tol = rel_tol;
    q.breakpoints = {pi / 2};
    return 2.0 * pi *
           integrate([&](double eps) { return directional_gain(pattern, eps) * std::sin(eps); }, 0.0,
                     pi, q);
}

// Element power gain by brute-force integration over the element surface,
// the form the closed expression approximates for apertures small next to
// the link distance.
inline double aperture_gain_integral(const PointingVector& f, const Vec3& antenna_pos,
                                     const Vec3& target, const ArrayConfig& cfg,
                                     const GainPattern& pattern, int panels = 64)
{
    const double half = std::sqrt(cfg.element_area) / 2.0;
    const double step = 2.0 * half / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i)
        for (int j = 0; j < panels; ++j)
        {
            const Vec3 a = antenna_pos + Vec3((i + 0.5) * step - half, (j + 0.5) * step - half, 0.0);
            const Vec3 d = target - a;
            const double r = d.norm();
            const double ce = f.dot(d / r);
            sum += projected_gain(pattern, ce) / (4.0 * pi * r * r) * step * step;
        }
    return sum;
}

inline Eigen::MatrixXcd random_complex_matrix(int rows, int cols, Rng& rng)
{
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = rng.cn_unit();
    return m;
}

inline std::vector<PointingVector> all_e3(int n)
{
    return std::vector<PointingVector>(static_cast<std::size_t>(n), PointingVector());
}

// Random boresight uniform over the feasible cone (solid-angle uniform).
inline PointingVector random_cap_pointing(double theta_max, Rng& rng)
{
    const double cz = rng.uniform(std::cos(theta_max), 1.0);
    const double az = rng.uniform(0.0, 2.0 * pi);
    return PointingVector::from_angles(std::acos(cz), az);
}

} // namespace rasim_tests

#endif
