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
// Single-user, free-space analysis: closed-form optimal pointing, exact
// grid sums, integral forms, large-array limits and disk bounds for the
// maximum SNR obtained with per-element boresight alignment and MRC.

#ifndef RASIM_SINGLE_USER_HPP
#define RASIM_SINGLE_USER_HPP

#include "rasim/channel.hpp"
#include "rasim/geometry.hpp"
#include "rasim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rasim
{

// Best feasible boresight for one element serving one terminal: point
// straight at it, or to the rotation-cone boundary at the same azimuth when
// the terminal sits outside the cone.
inline PointingVector optimal_pointing(const Vec3& antenna_pos, const Vec3& target_pos, double theta_max)
{
    const Vec3 d = target_pos - antenna_pos;
    const double r = d.norm();
    if (!(r > 0.0))
        throw std::domain_error("optimal_pointing: target coincides with the element");
    const Vec3 u = d / r;
    const double zen = std::acos(std::clamp(u.z(), -1.0, 1.0));
    const double theta_z = std::min(zen, theta_max);
    const double theta_a = (u.x() == 0.0 && u.y() == 0.0) ? 0.0 : std::atan2(u.y(), u.x());
    return PointingVector::from_angles(theta_z, theta_a);
}

// Alignment cos(eps_n) of an optimally pointed element at grid offset
// (n_x_idx, n_y_idx) toward a user on the z-axis: 1 inside the inner area,
// cos(arctan(rho*delta) - theta_max) outside.
inline double boresight_offset_cos(int n_x_idx, int n_y_idx, double delta_ratio, double theta_max)
{
    const double rho = std::sqrt(double(n_x_idx) * n_x_idx + double(n_y_idx) * n_y_idx);
    const double off = std::atan(rho * delta_ratio) - theta_max;
    return std::cos(std::max(off, 0.0));
}

// Linear-array analysis input; closed forms below assume the cosine pattern
// (directivity 1/2) and delta_ratio << 1.
struct SingleUserUla
{
    int n_x = 1;
    double delta_ratio = 0.0;   // spacing / range
    double theta_max = 0.0;
    double snr_scale = 1.0;     // transmit power over noise power
    double occupation_xi = 1.0;

    // The derivations behind the closed forms assume a small spacing-to-range
    // ratio; results above this gate should be treated as indicative only.
    bool small_delta_valid() const { return delta_ratio < 0.1; }
};

// Planar-array analysis input for grid sums, integral forms and disk bounds.
struct SingleUserUpa
{
    int n_x = 1;
    int n_y = 1;
    double spacing = 0.0;  // [m]
    double range_r = 1.0;  // [m]
    double directivity_p = 0.5;
    double theta_max = 0.0;
    double snr_scale = 1.0;
    double occupation_xi = 1.0;

    double delta_ratio() const { return spacing / range_r; }
};

// Exact double sum of the optimally pointed SNR for a user on the z-axis.
inline double snr_grid_sum(const SingleUserUpa& s)
{
    const double delta = s.delta_ratio();
    const double g0 = 2.0 * (2.0 * s.directivity_p + 1.0);
    const double pref = s.snr_scale * g0 * s.occupation_xi * delta * delta / (4.0 * pi);

    double sum = 0.0;
    const int hx = (s.n_x - 1) / 2, hy = (s.n_y - 1) / 2;
    if (s.n_x % 2 == 0 || s.n_y % 2 == 0)
        throw std::invalid_argument("snr_grid_sum: centered grid sum requires odd element counts");
    for (int ix = -hx; ix <= hx; ++ix)
        for (int iy = -hy; iy <= hy; ++iy)
        {
            const double rho2 = double(ix) * ix + double(iy) * iy;
            const double ce = boresight_offset_cos(ix, iy, delta, s.theta_max);
            sum += std::pow(ce, 2.0 * s.directivity_p) / (1.0 + rho2 * delta * delta);
        }
    return pref * sum;
}

// Integral form of the grid sum (continuum approximation over the array
// aperture). The inner/outer-area boundary is passed to the quadrature as an
// explicit breakpoint.
inline double snr_integral(const SingleUserUpa& s, const QuadratureOptions& q = {})
{
    const double delta = s.delta_ratio();
    const double g0 = 2.0 * (2.0 * s.directivity_p + 1.0);
    const double p2 = 2.0 * s.directivity_p;
    const double tm = s.theta_max;
    const double rim = std::tan(tm);

    auto point_gain = [&](double t2) {
        const double off = std::atan(std::sqrt(t2)) - tm;
        const double ce = std::cos(std::max(off, 0.0));
        return std::pow(ce, p2) / (1.0 + t2);
    };

    if (s.n_x == 0 || s.n_y == 0)
        return 0.0;

    if (s.n_y == 1)
    {
        const double b = s.n_x * delta / 2.0;
        QuadratureOptions q1 = q;
        q1.breakpoints = {rim};
        const double integral = integrate([&](double t) { return point_gain(t * t); }, 0.0, b, q1);
        return s.snr_scale * g0 * s.occupation_xi * delta / (4.0 * pi) * 2.0 * integral;
    }

    const double a = s.n_x * delta / 2.0;
    const double c = s.n_y * delta / 2.0;

    QuadratureOptions outer = q;
    outer.breakpoints = {rim};
    if (rim > a)
        outer.breakpoints.push_back(std::sqrt(rim * rim - a * a));

    QuadratureOptions inner = q;
    inner.rel_tol = q.rel_tol / 4.0;

    const double integral = integrate(
        [&](double u) {
            QuadratureOptions qi = inner;
            const double rem = rim * rim - u * u;
            if (rem > 0.0)
                qi.breakpoints = {std::sqrt(rem)};
            return integrate([&](double t) { return point_gain(t * t + u * u); }, 0.0, a, qi);
        },
        0.0, c, outer);

    return s.snr_scale * g0 * s.occupation_xi / (4.0 * pi) * 4.0 * integral;
}

namespace detail
{
// Optimally pointed cosine-pattern SNR accumulated from the array center out
// to a span angle, divided by the common factor 2*P*xi*delta/pi. Equals the
// span itself while the span stays inside the rotation cone.
inline double hinged_span_gain(double span, double theta_max)
{
    return span <= theta_max ? span : theta_max + std::sin(span - theta_max);
}
} // namespace detail

// Number of elements of a centered linear array whose optimal boresight can
// align exactly with a z-axis user.
inline int inner_area_count(double delta_ratio, double theta_max)
{
    return 2 * static_cast<int>(std::floor(std::tan(theta_max) / delta_ratio)) + 1;
}

// Closed-form maximum SNR of a linear array serving a z-axis user with the
// cosine pattern. Branches on whether the array extends past the inner area.
inline double ula_snr_closed_form(const SingleUserUla& s)
{
    const double span = std::atan(s.n_x * s.delta_ratio / 2.0);
    const double pref = 2.0 * s.snr_scale * s.occupation_xi * s.delta_ratio / pi;
    if (s.n_x <= inner_area_count(s.delta_ratio, s.theta_max))
        return pref * span;
    return pref * (s.theta_max + std::sin(span - s.theta_max));
}

// Large-array SNR limit of the linear array.
inline double ula_snr_asymptotic(double theta_max, double snr_scale, double xi, double delta_ratio)
{
    return 2.0 * xi * delta_ratio / pi * snr_scale * (theta_max + std::cos(theta_max));
}

// Ratio of the rotatable-array SNR limit to the fixed-boresight limit,
// theta_max + cos(theta_max) >= 1.
inline double rotatable_gain_ratio(double theta_max)
{
    if (theta_max < 0.0 || theta_max > pi / 2)
        throw std::domain_error("rotatable_gain_ratio: theta_max must lie in [0, pi/2]");
    return theta_max + std::cos(theta_max);
}

// Closed-form maximum SNR for a user in the array plane's front half-space at
// azimuth phi (zenith pi/2). The array is split at the foot of the user's
// perpendicular; each side contributes through its own span angle:
//   near span  = arctan(|L/2 - |x0|| / r'),   far span = arctan((L/2 + |x0|) / r'),
// with x0 = r sin(phi) the foot offset and r' = r cos(phi) the perpendicular
// distance. Sides add when the foot lies inside the aperture and subtract
// when it lies outside.
inline double ula_snr_offaxis(const SingleUserUla& s, double azimuth_phi)
{
    const double c = std::cos(azimuth_phi);
    if (!(c > 0.0) || std::abs(azimuth_phi) >= pi / 2)
        throw std::domain_error("ula_snr_offaxis: azimuth must lie strictly inside (-pi/2, pi/2)");

    const double half = s.n_x * s.delta_ratio / 2.0; // L / (2r)
    const double foot = std::abs(std::sin(azimuth_phi));
    const double span_far = std::atan((half + foot) / c);
    const double span_near = std::atan(std::abs(half - foot) / c);

    const double g_far = detail::hinged_span_gain(span_far, s.theta_max);
    const double g_near = detail::hinged_span_gain(span_near, s.theta_max);

    const double gamma_of = 2.0 * s.snr_scale * s.occupation_xi * s.delta_ratio / pi;
    const double sum = (foot <= half) ? (g_far + g_near) : (g_far - g_near);
    return gamma_of * sum / (2.0 * c);
}

// Linear-in-N approximation for a planar array fully inside the inner area.
// Requires the array diagonal within the inner disk and theta_max <= pi/4.
// Known to undershoot for small apertures: it rests on arctan(x) ~ pi*x/4,
// which is exact only at x = 1.
inline double upa_snr_linear_approx(const SingleUserUpa& s)
{
    const double diag = std::hypot(s.n_x * s.spacing, s.n_y * s.spacing);
    if (diag > 2.0 * s.range_r * std::tan(s.theta_max) || s.theta_max > pi / 4)
        throw std::invalid_argument("upa_snr_linear_approx: array must lie inside the inner area "
                                    "with theta_max <= pi/4");
    const double g0 = 2.0 * (2.0 * s.directivity_p + 1.0);
    const double delta = s.delta_ratio();
    return s.snr_scale * g0 * pi * s.occupation_xi * delta * delta * s.n_x * s.n_y / 64.0;
}

// Optimally pointed SNR collected over a disk of radius R at range r: the
// inner-area part in closed form plus the outer-area ring as an integral in
// the boresight offset angle.
inline double disk_snr(double R, double r, double directivity_p, double theta_max, double snr_scale,
                       double xi, const QuadratureOptions& q = {})
{
    if (R < 0.0 || !(r > 0.0))
        throw std::domain_error("disk_snr: radii must be non-negative with positive range");
    const double g0 = 2.0 * (2.0 * directivity_p + 1.0);
    const double tR = R / r;
    const double rim = std::tan(theta_max);
    const double tD = std::min(tR, rim);

    double total = 0.5 * std::log1p(tD * tD);
    if (tR > tD)
    {
        const double lo = std::atan(tD) - theta_max; // 0 at the inner rim
        const double hi = std::atan(tR) - theta_max;
        total += integrate(
            [&](double eps) {
                return std::pow(std::cos(eps), 2.0 * directivity_p) * std::tan(eps + theta_max);
            },
            lo, hi, q);
    }
    return snr_scale * g0 * xi / 2.0 * total;
}

// Same disk SNR for the cosine pattern (directivity 1/2), in closed form.
inline double disk_snr_cosine(double R, double r, double theta_max, double snr_scale, double xi)
{
    if (R < 0.0 || !(r > 0.0))
        throw std::domain_error("disk_snr_cosine: radii must be non-negative with positive range");
    const double t = R / r;
    const double hyp = std::hypot(1.0, t);
    const double cos_tr = 1.0 / hyp;   // cos(arctan(t)), stable for large t
    const double sin_tr = t / hyp;
    const double theta_r = std::atan(t);

    if (t <= std::tan(theta_max))
    {
        // ln(1 + tan^2) == -2 ln cos; guard against overflow of t^2
        const double v = (t > 1e8) ? 2.0 * std::log(t) : std::log1p(t * t);
        return snr_scale * xi * v;
    }

    const double sm = std::sin(theta_max);
    const double cm = std::cos(theta_max);
    const double val = 1.0 - std::log(cm) - std::cos(theta_r - theta_max) +
                       sm * std::log((1.0 + sin_tr) * (1.0 - sm) / (cos_tr * cm));
    return 2.0 * snr_scale * xi * val;
}

struct SnrBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

// Disk-based sandwich for the planar-array SNR: the inscribed disk of the
// rectangular aperture gives the lower bound, the circumscribed disk the
// upper bound.
inline SnrBounds upa_snr_bounds(const SingleUserUpa& s, const QuadratureOptions& q = {})
{
    const double lx = s.n_x * s.spacing, ly = s.n_y * s.spacing;
    const double r_lb = 0.5 * std::min(lx, ly);
    const double r_ub = 0.5 * std::hypot(lx, ly);

    SnrBounds b;
    if (s.directivity_p == 0.5)
    {
        b.lower = disk_snr_cosine(r_lb, s.range_r, s.theta_max, s.snr_scale, s.occupation_xi);
        b.upper = disk_snr_cosine(r_ub, s.range_r, s.theta_max, s.snr_scale, s.occupation_xi);
    }
    else
    {
        b.lower = disk_snr(r_lb, s.range_r, s.directivity_p, s.theta_max, s.snr_scale, s.occupation_xi, q);
        b.upper = disk_snr(r_ub, s.range_r, s.directivity_p, s.theta_max, s.snr_scale, s.occupation_xi, q);
    }
    return b;
}

// Direct per-element evaluation of the maximum single-user SNR: each element
// takes its optimal boresight and the per-element power gains are summed
// (MRC). Works for any user position and array size; serves as the reference
// the closed forms above are checked against.
inline double mrc_snr_optimal_pointing(const ArrayConfig& cfg, const Vec3& user_pos,
                                       const GainPattern& pattern, double theta_max, double snr_scale)
{
    double sum = 0.0;
    for (int n = 0; n < cfg.num_antennas(); ++n)
    {
        const Vec3 w = antenna_position_linear(n, cfg);
        const PointingVector f = optimal_pointing(w, user_pos, theta_max);
        sum += power_gain_user(f, w, user_pos, cfg, pattern);
    }
    return snr_scale * sum;
}

} // namespace rasim

#endif
