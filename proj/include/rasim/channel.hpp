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

#ifndef RASIM_CHANNEL_HPP
#define RASIM_CHANNEL_HPP

#include "rasim/geometry.hpp"
#include "rasim/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rasim
{

using cplx = std::complex<double>;

// Directional element pattern G0 * cos(eps)^(2p) over the front hemisphere,
// zero behind. The peak gain 2(2p+1) makes the pattern radiate unit average
// power over the sphere for every p >= 0.
struct GainPattern
{
    double directivity_p = 0.5;

    double peak_gain() const { return 2.0 * (2.0 * directivity_p + 1.0); }

    void validate() const
    {
        if (directivity_p < 0.0)
            throw std::invalid_argument("GainPattern: directivity factor must be non-negative");
    }
};

// Gain at incidence angle eps in [0, pi] off the boresight.
inline double directional_gain(const GainPattern& pattern, double epsilon)
{
    if (epsilon < 0.0 || epsilon > pi)
        throw std::domain_error("directional_gain: incidence angle must lie in [0, pi]");
    if (epsilon >= pi / 2)
        return 0.0;
    return pattern.peak_gain() * std::pow(std::cos(epsilon), 2.0 * pattern.directivity_p);
}

// Same pattern expressed through the boresight projection cos(eps); the
// back hemisphere (projection <= 0) contributes no gain.
inline double projected_gain(const GainPattern& pattern, double cos_eps)
{
    if (cos_eps <= 0.0)
        return 0.0;
    return pattern.peak_gain() * std::pow(std::min(cos_eps, 1.0), 2.0 * pattern.directivity_p);
}

struct Scatterer
{
    Vec3 position = Vec3::Zero();
    double rcs_sigma = 1.0;  // radar cross section [m^2]
    double phase_chi = 0.0;  // reflection phase shift [rad]

    void validate() const
    {
        if (!(rcs_sigma > 0.0))
            throw std::invalid_argument("Scatterer: RCS must be positive");
    }
};

struct User
{
    UserPlacement placement;
    double transmit_power_w = 0.0;
};

// Full uplink scene: array, users, scatterer clusters and noise.
struct Scenario
{
    ArrayConfig array;
    std::vector<User> users;
    std::vector<Scatterer> scatterers;
    double noise_power_w = 0.0;
    GainPattern pattern;
    double theta_max = 0.0;          // max boresight zenith [rad]
    double csi_error_power_w = 0.0;  // channel estimation error power e^2 [W]

    int num_users() const { return static_cast<int>(users.size()); }
    int num_antennas() const { return array.num_antennas(); }

    Vec3 user_pos(int k) const { return user_position(users.at(k).placement); }

    // Effective transmit SNR P_k / (sigma^2 + e^2); reduces to P_k / sigma^2
    // when no estimation error is modeled.
    double effective_snr(int k) const
    {
        return users.at(k).transmit_power_w / (noise_power_w + csi_error_power_w);
    }

    Eigen::VectorXd effective_snr_vector() const
    {
        Eigen::VectorXd p(num_users());
        for (int k = 0; k < num_users(); ++k)
            p[k] = effective_snr(k);
        return p;
    }

    void validate() const
    {
        array.validate();
        pattern.validate();
        if (users.empty())
            throw std::invalid_argument("Scenario: at least one user required");
        if (!(noise_power_w > 0.0))
            throw std::invalid_argument("Scenario: noise power must be positive");
        if (theta_max < 0.0 || theta_max > pi / 2)
            throw std::invalid_argument("Scenario: theta_max must lie in [0, pi/2]");
        if (csi_error_power_w < 0.0)
            throw std::invalid_argument("Scenario: CSI error power must be non-negative");
        for (const auto& u : users)
            u.placement.validate();
        for (const auto& s : scatterers)
            s.validate();
    }
};

// Channel power gain of the direct path between an element at antenna_pos
// pointed along f and a terminal at target_pos.
inline double power_gain_path(const PointingVector& f, const Vec3& antenna_pos, const Vec3& target_pos,
                              const ArrayConfig& cfg, const GainPattern& pattern)
{
    const Vec3 d = target_pos - antenna_pos;
    const double r = d.norm();
    if (!(r > 0.0))
        throw std::domain_error("power_gain: zero distance between element and target");
    const double cos_eps = f.dot(d / r);
    return cfg.element_area / (4.0 * pi * r * r) * projected_gain(pattern, cos_eps);
}

inline double power_gain_user(const PointingVector& f, const Vec3& antenna_pos, const Vec3& user_pos,
                              const ArrayConfig& cfg, const GainPattern& pattern)
{
    return power_gain_path(f, antenna_pos, user_pos, cfg, pattern);
}

inline double power_gain_scatterer(const PointingVector& f, const Vec3& antenna_pos, const Scatterer& sc,
                                   const ArrayConfig& cfg, const GainPattern& pattern)
{
    return power_gain_path(f, antenna_pos, sc.position, cfg, pattern);
}

// Direct-path channel coefficient sqrt(g) * exp(-j 2 pi r / lambda).
inline cplx los_channel(const PointingVector& f, int n_idx, int user_k, const Scenario& sc)
{
    const Vec3 w = antenna_position_linear(n_idx, sc.array);
    const Vec3 u = sc.user_pos(user_k);
    const double r = distance(u, w);
    const double g = power_gain_user(f, w, u, sc.array, sc.pattern);
    const double phase = -2.0 * pi * r / sc.array.wavelength;
    return std::sqrt(g) * std::polar(1.0, phase);
}

// Scattered-path channel coefficient, summed over all clusters. Each term is
// sqrt(sigma_q * g_c) / t * exp(-j 2 pi (d + t) / lambda + j chi).
inline cplx nlos_channel(const PointingVector& f, int n_idx, int user_k, const Scenario& sc)
{
    const Vec3 w = antenna_position_linear(n_idx, sc.array);
    const Vec3 u = sc.user_pos(user_k);
    cplx sum(0.0, 0.0);
    for (const auto& s : sc.scatterers)
    {
        const double d = distance(s.position, w);
        const double t = distance(u, s.position);
        if (!(d > 0.0) || !(t > 0.0))
            throw std::domain_error("nlos_channel: scatterer coincides with element or user");
        const double g = power_gain_scatterer(f, w, s, sc.array, sc.pattern);
        const double phase = -2.0 * pi * (d + t) / sc.array.wavelength + s.phase_chi;
        sum += std::sqrt(s.rcs_sigma * g) / t * std::polar(1.0, phase);
    }
    return sum;
}

// Coefficient of the direct term in the power-form channel
// h = alpha * (f.u)^p + sum_q beta_q * (f.c_q)^p.
inline cplx channel_alpha(int user_k, int n_idx, const Scenario& sc)
{
    const Vec3 w = antenna_position_linear(n_idx, sc.array);
    const Vec3 u = sc.user_pos(user_k);
    const double r = distance(u, w);
    if (!(r > 0.0))
        throw std::domain_error("channel_alpha: user coincides with element");
    const double mag = std::sqrt(sc.array.element_area * sc.pattern.peak_gain() / (4.0 * pi)) / r;
    return mag * std::polar(1.0, -2.0 * pi * r / sc.array.wavelength);
}

// Coefficient of scatterer q's term in the power-form channel.
inline cplx channel_beta(int user_k, int n_idx, int q, const Scenario& sc)
{
    const Vec3 w = antenna_position_linear(n_idx, sc.array);
    const Vec3 u = sc.user_pos(user_k);
    const Scatterer& s = sc.scatterers.at(q);
    const double d = distance(s.position, w);
    const double t = distance(u, s.position);
    if (!(d > 0.0) || !(t > 0.0))
        throw std::domain_error("channel_beta: scatterer coincides with element or user");
    const double mag =
        std::sqrt(sc.array.element_area * sc.pattern.peak_gain() * s.rcs_sigma / (4.0 * pi)) / (d * t);
    const double phase = -2.0 * pi * (d + t) / sc.array.wavelength + s.phase_chi;
    return mag * std::polar(1.0, phase);
}

struct ChannelMatrix
{
    Eigen::MatrixXcd entries;             // N x K
    std::vector<PointingVector> pointing; // per element

    int antennas() const { return static_cast<int>(entries.rows()); }
    int users() const { return static_cast<int>(entries.cols()); }
};

inline ChannelMatrix build_channel_matrix(const std::vector<PointingVector>& pointing, const Scenario& sc)
{
    const int n = sc.num_antennas();
    const int k = sc.num_users();
    if (static_cast<int>(pointing.size()) != n)
        throw std::invalid_argument("build_channel_matrix: one pointing vector per element required");

    ChannelMatrix cm;
    cm.pointing = pointing;
    cm.entries.resize(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i)
            cm.entries(i, j) = los_channel(pointing[i], i, j, sc) + nlos_channel(pointing[i], i, j, sc);
    return cm;
}

// Per-user receive SINR for unit-norm combiners V (N x K), columns v_k:
// gamma_k = Pbar_k |v_k^H h_k|^2 / (sum_{j != k} Pbar_j |v_k^H h_j|^2 + 1).
inline Eigen::VectorXd sinr_per_user(const Eigen::MatrixXcd& V, const ChannelMatrix& H, const Scenario& sc)
{
    const int k = H.users();
    if (V.cols() != k || V.rows() != H.antennas())
        throw std::invalid_argument("sinr_per_user: combiner dimensions do not match the channel");
    for (int j = 0; j < k; ++j)
        if (std::abs(V.col(j).norm() - 1.0) > 1e-9)
            throw std::invalid_argument("sinr_per_user: combiner columns must have unit norm");

    const Eigen::VectorXd pbar = sc.effective_snr_vector();
    Eigen::VectorXd gamma(k);
    for (int i = 0; i < k; ++i)
    {
        double interference = 1.0;
        for (int j = 0; j < k; ++j)
        {
            const double term = pbar[j] * std::norm(cplx(V.col(i).dot(H.entries.col(j))));
            if (j == i)
                gamma[i] = term;
            else
                interference += term;
        }
        gamma[i] /= interference;
    }
    return gamma;
}

// One block of transmitted symbols and the corresponding received samples,
// y = sum_k h_k sqrt(P_k) s_k + n with n ~ CN(0, sigma^2 I).
struct UplinkSample
{
    Eigen::MatrixXcd received; // N x S
    Eigen::MatrixXcd symbols;  // K x S, unit average power
};

inline UplinkSample simulate_uplink(const ChannelMatrix& H, const Scenario& sc, int num_symbols,
                                    std::uint64_t noise_seed)
{
    const int n = H.antennas();
    const int k = H.users();
    Rng rng(noise_seed);

    UplinkSample out;
    out.symbols.resize(k, num_symbols);
    for (int s = 0; s < num_symbols; ++s)
        for (int j = 0; j < k; ++j)
            out.symbols(j, s) = rng.cn_unit();

    Eigen::MatrixXcd scaled = H.entries;
    for (int j = 0; j < k; ++j)
        scaled.col(j) *= std::sqrt(sc.users[j].transmit_power_w);

    out.received = scaled * out.symbols;
    const double sigma = std::sqrt(sc.noise_power_w);
    for (int s = 0; s < num_symbols; ++s)
        for (int i = 0; i < n; ++i)
            out.received(i, s) += sigma * rng.cn_unit();
    return out;
}

// Empirical per-user SINR of a simulated block under combiners V, using the
// known transmitted symbols to split signal from residual.
inline Eigen::VectorXd empirical_sinr(const UplinkSample& sample, const Eigen::MatrixXcd& V,
                                      const ChannelMatrix& H, const Scenario& sc)
{
    const int k = H.users();
    Eigen::VectorXd sinr(k);
    for (int i = 0; i < k; ++i)
    {
        const cplx gain = cplx(V.col(i).dot(H.entries.col(i))) * std::sqrt(sc.users[i].transmit_power_w);
        const Eigen::RowVectorXcd out = V.col(i).adjoint() * sample.received;
        const Eigen::RowVectorXcd sig = gain * sample.symbols.row(i);
        const double ps = sig.squaredNorm();
        const double pr = (out - sig).squaredNorm();
        sinr[i] = ps / pr;
    }
    return sinr;
}

} // namespace rasim

#endif
