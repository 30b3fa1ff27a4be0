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

#ifndef RASIM_BEAMFORMING_HPP
#define RASIM_BEAMFORMING_HPP

#include "rasim/channel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace rasim
{

namespace detail
{
// Interferer columns of H for user k, i.e. H with column k removed.
inline Eigen::MatrixXcd drop_column(const Eigen::MatrixXcd& H, int k)
{
    Eigen::MatrixXcd out(H.rows(), H.cols() - 1);
    for (int j = 0, c = 0; j < H.cols(); ++j)
        if (j != k)
            out.col(c++) = H.col(j);
    return out;
}
} // namespace detail

// Maximum-ratio combiner, h / ||h||.
inline Eigen::VectorXcd mrc(const Eigen::VectorXcd& h)
{
    const double n = h.norm();
    if (!(n > 0.0))
        throw std::domain_error("mrc: zero channel vector");
    return h / n;
}

// MMSE combiner for user k: C_k^{-1} h_k normalized, with
// C_k = sum_{j != k} pbar_j h_j h_j^H + I. Direct N x N solve.
inline Eigen::VectorXcd mmse(const Eigen::MatrixXcd& H, int k, const Eigen::VectorXd& pbar)
{
    const int n = static_cast<int>(H.rows());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(n, n);
    for (int j = 0; j < H.cols(); ++j)
        if (j != k)
            C += pbar[j] * H.col(j) * H.col(j).adjoint();
    const Eigen::VectorXcd x = C.ldlt().solve(H.col(k));
    const double nx = x.norm();
    if (!(nx > 0.0))
        throw std::domain_error("mmse: zero channel vector");
    return x / nx;
}

// Same combiner computed through the Woodbury identity,
// C_k^{-1} = I - Ht (P^{-1} + Ht^H Ht)^{-1} Ht^H,
// inverting only a (K-1) x (K-1) matrix. Falls back to the direct solve when
// the inner matrix is numerically unreliable; `used_fallback` reports that.
inline Eigen::VectorXcd woodbury_mmse(const Eigen::MatrixXcd& H, int k, const Eigen::VectorXd& pbar,
                                      bool* used_fallback = nullptr)
{
    if (H.cols() < 2)
        throw std::invalid_argument("woodbury_mmse: at least two users required");
    if (used_fallback)
        *used_fallback = false;

    const Eigen::MatrixXcd Ht = detail::drop_column(H, k);

    Eigen::MatrixXcd inner = Ht.adjoint() * Ht;
    {
        int c = 0;
        for (int j = 0; j < H.cols(); ++j)
            if (j != k)
                inner(c, c) += 1.0 / pbar[j], ++c;
    }

    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(inner);
    bool ok = ldlt.info() == Eigen::Success;
    Eigen::VectorXcd x;
    if (ok)
    {
        const Eigen::VectorXcd rhs = Ht.adjoint() * H.col(k);
        const Eigen::VectorXcd sol = ldlt.solve(rhs);
        ok = (inner * sol - rhs).norm() <= 1e-8 * rhs.norm() + 1e-300;
        x = H.col(k) - Ht * sol;
    }
    if (!ok)
    {
        if (used_fallback)
            *used_fallback = true;
        return mmse(H, k, pbar);
    }
    const double nx = x.norm();
    if (!(nx > 0.0))
        throw std::domain_error("woodbury_mmse: zero channel vector");
    return x / nx;
}

// Zero-forcing combiner: h_k projected onto the orthogonal complement of the
// interferer columns and normalized, so v^H h_j = 0 for all j != k.
// Requires N >= K and full-rank interferers.
inline Eigen::VectorXcd zf(const Eigen::MatrixXcd& H, int k)
{
    const int n = static_cast<int>(H.rows());
    const int kk = static_cast<int>(H.cols());
    if (n < kk)
        throw std::invalid_argument("zf: requires at least as many antennas as users");
    if (kk == 1)
        return mrc(H.col(0));

    const Eigen::MatrixXcd Ht = detail::drop_column(H, k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Ht, Eigen::ComputeThinU);
    const double smax = svd.singularValues()(0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-12 * smax)
            ++rank;
    if (rank < Ht.cols())
        throw std::runtime_error("zf: interferer channel matrix is rank deficient");

    const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
    Eigen::VectorXcd x = H.col(k) - U * (U.adjoint() * H.col(k));
    const double nx = x.norm();
    if (nx <= 1e-12 * H.col(k).norm())
        throw std::runtime_error("zf: desired channel lies in the interferer span");
    return x / nx;
}

// SNR loss of zero-forcing relative to interference-free combining:
// rho_k is the fraction of ||h_k||^2 lying in the interferer span and
// zf_snr_k = pbar_k ||h_k||^2 (1 - rho_k).
struct ZfDiagnostics
{
    Eigen::VectorXd snr_loss_rho;
    Eigen::VectorXd zf_snr;
};

inline ZfDiagnostics zf_diagnostics(const Eigen::MatrixXcd& H, const Eigen::VectorXd& pbar)
{
    const int kk = static_cast<int>(H.cols());
    ZfDiagnostics d;
    d.snr_loss_rho.resize(kk);
    d.zf_snr.resize(kk);
    for (int k = 0; k < kk; ++k)
    {
        const double h2 = H.col(k).squaredNorm();
        if (kk == 1)
        {
            d.snr_loss_rho[k] = 0.0;
        }
        else
        {
            const Eigen::MatrixXcd Ht = detail::drop_column(H, k);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Ht, Eigen::ComputeThinU);
            const double smax = svd.singularValues()(0);
            int rank = 0;
            for (int i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) > 1e-12 * smax)
                    ++rank;
            if (rank < Ht.cols())
                throw std::runtime_error("zf_diagnostics: interferer channel matrix is rank deficient");
            const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
            d.snr_loss_rho[k] = (U.adjoint() * H.col(k)).squaredNorm() / h2;
        }
        d.zf_snr[k] = pbar[k] * h2 * (1.0 - d.snr_loss_rho[k]);
    }
    return d;
}

// Convenience: one combiner per user, stacked as columns.
enum class Beamformer
{
    mrc,
    mmse,
    zf
};

inline Eigen::MatrixXcd beamforming_matrix(const Eigen::MatrixXcd& H, const Eigen::VectorXd& pbar,
                                           Beamformer type)
{
    const int kk = static_cast<int>(H.cols());
    Eigen::MatrixXcd V(H.rows(), kk);
    for (int k = 0; k < kk; ++k)
    {
        switch (type)
        {
        case Beamformer::mrc: V.col(k) = mrc(H.col(k)); break;
        case Beamformer::mmse:
            V.col(k) = (kk >= 2) ? woodbury_mmse(H, k, pbar) : mrc(H.col(k));
            break;
        case Beamformer::zf: V.col(k) = zf(H, k); break;
        }
    }
    return V;
}

} // namespace rasim

#endif
