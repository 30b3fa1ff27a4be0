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

#ifndef RASIM_GEOMETRY_HPP
#define RASIM_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace rasim
{

using Vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;

// Uniform planar array on the x-y plane, centered at the origin.
// The element grid is n_x columns (x-axis) by n_y rows (y-axis) with
// separation spacing_delta; each element radiates from an effective
// aperture element_area with sqrt(element_area) <= spacing_delta.
struct ArrayConfig
{
    int n_x = 1;                 // elements along x
    int n_y = 1;                 // elements along y
    double spacing_delta = 0.0;  // element separation [m]
    double element_area = 0.0;   // effective aperture per element [m^2]
    double wavelength = 0.0;     // carrier wavelength [m]

    int num_antennas() const { return n_x * n_y; }

    // Fraction of the array surface that radiates, A / delta^2, in (0, 1].
    double occupation_ratio() const { return element_area / (spacing_delta * spacing_delta); }

    void validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("ArrayConfig: element counts must be positive");
        if (spacing_delta <= 0.0 || element_area <= 0.0 || wavelength <= 0.0)
            throw std::invalid_argument("ArrayConfig: spacing, area and wavelength must be positive");
        if (std::sqrt(element_area) > spacing_delta * (1.0 + 1e-12))
            throw std::invalid_argument("ArrayConfig: sqrt(element_area) must not exceed spacing_delta");
    }
};

// Position of one array element. Signed grid indices count from the array
// center; they require odd element counts so that the center element is
// (0, 0). |n_x_idx| <= (n_x-1)/2 and likewise for n_y_idx.
inline Vec3 antenna_position(int n_x_idx, int n_y_idx, const ArrayConfig& cfg)
{
    if (cfg.n_x % 2 == 0 || cfg.n_y % 2 == 0)
        throw std::domain_error("antenna_position: signed grid indices require odd element counts");
    if (std::abs(n_x_idx) > (cfg.n_x - 1) / 2 || std::abs(n_y_idx) > (cfg.n_y - 1) / 2)
        throw std::out_of_range("antenna_position: grid index out of range");
    return Vec3(n_x_idx * cfg.spacing_delta, n_y_idx * cfg.spacing_delta, 0.0);
}

// Position of element `linear` in row-major order (y-row by y-row, x fastest),
// 0-based. Valid for even counts as well: offsets are centered on the array,
// so even grids sit at half-integer multiples of the spacing.
inline Vec3 antenna_position_linear(int linear, const ArrayConfig& cfg)
{
    if (linear < 0 || linear >= cfg.num_antennas())
        throw std::out_of_range("antenna_position_linear: index out of range");
    const int col = linear % cfg.n_x;
    const int row = linear / cfg.n_x;
    const double ox = col - 0.5 * (cfg.n_x - 1);
    const double oy = row - 0.5 * (cfg.n_y - 1);
    return Vec3(ox * cfg.spacing_delta, oy * cfg.spacing_delta, 0.0);
}

// Unit vector giving the boresight direction of one rotatable antenna.
class PointingVector
{
  public:
    PointingVector() : v_(0.0, 0.0, 1.0) {}

    explicit PointingVector(const Vec3& v)
    {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::domain_error("PointingVector: cannot normalize a zero or non-finite vector");
        v_ = v / n;
    }

    // Boresight from zenith angle (from the z-axis) and azimuth (from the
    // x-axis in the x-y plane).
    static PointingVector from_angles(double theta_z, double theta_a)
    {
        if (theta_z < 0.0 || theta_z > pi)
            throw std::domain_error("PointingVector: zenith angle must lie in [0, pi]");
        PointingVector f;
        f.v_ = Vec3(std::sin(theta_z) * std::cos(theta_a),
                    std::sin(theta_z) * std::sin(theta_a),
                    std::cos(theta_z));
        return f;
    }

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

    double zenith() const { return std::acos(std::clamp(v_.z(), -1.0, 1.0)); }

    // Azimuth is undefined at the poles; 0 is returned there.
    double azimuth() const
    {
        if (v_.x() == 0.0 && v_.y() == 0.0)
            return 0.0;
        return std::atan2(v_.y(), v_.x());
    }

    double dot(const Vec3& u) const { return v_.dot(u); }

  private:
    Vec3 v_;
};

inline PointingVector pointing_from_angles(double theta_z, double theta_a)
{
    return PointingVector::from_angles(theta_z, theta_a);
}

// True iff the boresight stays within the allowed rotation cone.
inline bool is_feasible_pointing(const PointingVector& f, double theta_max)
{
    return f.zenith() <= theta_max + 1e-12;
}

// User location in range/zenith/azimuth form. The position maps to
// [r*sin(psi)*sin(phi), r*cos(psi), r*sin(psi)*cos(phi)], so a user with
// psi = pi/2 and phi = 0 sits on the z-axis, directly in front of the array.
struct UserPlacement
{
    double range_r = 0.0;    // [m]
    double zenith_psi = 0.0; // [rad], in [0, pi]
    double azimuth_phi = 0.0;// [rad], in [-pi/2, pi/2]

    void validate() const
    {
        if (!(range_r > 0.0))
            throw std::invalid_argument("UserPlacement: range must be positive");
        if (zenith_psi < 0.0 || zenith_psi > pi)
            throw std::invalid_argument("UserPlacement: zenith must lie in [0, pi]");
        if (azimuth_phi < -pi / 2 || azimuth_phi > pi / 2)
            throw std::invalid_argument("UserPlacement: azimuth must lie in [-pi/2, pi/2]");
    }
};

inline Vec3 user_position(const UserPlacement& p)
{
    p.validate();
    const double sp = std::sin(p.zenith_psi);
    return Vec3(p.range_r * sp * std::sin(p.azimuth_phi),
                p.range_r * std::cos(p.zenith_psi),
                p.range_r * sp * std::cos(p.azimuth_phi));
}

inline double distance(const Vec3& a, const Vec3& b)
{
    return (a - b).norm();
}

} // namespace rasim

#endif
