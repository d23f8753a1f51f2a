// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: sequential uplink processing for cell-free massive MIMO with limited-memory APs
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

#ifndef cfmimo_geometry_channel_H
#define cfmimo_geometry_channel_H

#include "config.hpp"
#include "rng.hpp"
#include "types.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace cfmimo
{

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

struct Placement
{
    std::vector<Point> aps;
    std::vector<Point> users;
};

// Point at a given arclength along the perimeter of the square [0, side]^2,
// walking counterclockwise from the corner (0, 0).
inline Point perimeter_point(double arclength, double side)
{
    const double perim = 4.0 * side;
    double s = std::fmod(arclength, perim);
    if (s < 0.0)
        s += perim;
    if (s <= side)
        return {s, 0.0};
    if (s <= 2.0 * side)
        return {side, s - side};
    if (s <= 3.0 * side)
        return {3.0 * side - s, side};
    return {0.0, 4.0 * side - s};
}

// L APs equally spaced in arclength (D / L apart) on the outer square, AP 0 at corner (0, 0)
inline std::vector<Point> place_aps(std::size_t L, double D)
{
    if (L < 1)
        throw ConfigError("number of APs must be at least 1");
    if (!(D > 0.0))
        throw ConfigError("perimeter must be positive");
    const double side = D / 4.0;
    const double step = D / static_cast<double>(L);
    std::vector<Point> out;
    out.reserve(L);
    for (std::size_t i = 0; i < L; ++i)
        out.push_back(perimeter_point(static_cast<double>(i) * step, side));
    return out;
}

// K users uniform in the concentric inner square of perimeter cfg.inner_perimeter
inline std::vector<Point> place_users(std::size_t K, const NetworkConfig &cfg, Rng &rng)
{
    if (!(cfg.inner_perimeter > 0.0) || !(cfg.inner_perimeter < cfg.perimeter))
        throw ConfigError("inner perimeter must lie in (0, perimeter)");
    const double center = cfg.perimeter / 8.0;
    const double half = cfg.inner_perimeter / 8.0;
    std::vector<Point> out;
    out.reserve(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        const double x = rng.uniform(center - half, center + half);
        const double y = rng.uniform(center - half, center + half);
        out.push_back({x, y});
    }
    return out;
}

inline Placement make_placement(const NetworkConfig &cfg, Rng &rng)
{
    return {place_aps(cfg.L, cfg.perimeter), place_users(cfg.K, cfg, rng)};
}

// 3-D distance between an AP and a user separated vertically by `height`
inline double ap_user_distance(const Point &ap, const Point &user, double height)
{
    const double dx = ap.x - user.x;
    const double dy = ap.y - user.y;
    return std::sqrt(dx * dx + dy * dy + height * height);
}

// Urban microcell path loss at 2 GHz, in dB
inline double large_scale_fading_db(double d)
{
    if (!(d > 0.0))
        throw std::domain_error("distance must be positive");
    return -30.5 - 36.7 * std::log10(d);
}

inline double large_scale_fading(double d) { return std::pow(10.0, large_scale_fading_db(d) / 10.0); }

// Correlation shape T with unit diagonal (trace N); R_kl = beta_kl T
inline RMatrix correlation_shape(CorrelationModel model, double rho, std::size_t N)
{
    const auto n = static_cast<Eigen::Index>(N);
    if (model == CorrelationModel::independent)
        return RMatrix::Identity(n, n);
    RMatrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            t(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    return t;
}

// Hermitian square root of a PSD matrix; throws NumericError if R is not PSD
inline CMatrix psd_sqrt(const CMatrix &R)
{
    if (R.rows() != R.cols())
        throw NumericError("correlation matrix must be square");
    const double scale = std::max(R.cwiseAbs().maxCoeff(), 1e-300);
    if ((R - R.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NumericError("correlation matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(R);
    RVector ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-10 * scale * static_cast<double>(R.rows()))
        throw NumericError("correlation matrix is not positive semi-definite");
    ev = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// One CN(0, R) draw
inline CVector correlated_draw(const CMatrix &R, Rng &rng)
{
    return psd_sqrt(R) * rng.complex_normal(R.rows(), 1);
}

struct ChannelRealization
{
    RMatrix beta;              // K x L linear large-scale coefficients
    RMatrix shape;             // N x N correlation shape shared by all (k, l)
    std::vector<CMatrix> H;    // L matrices, N x K

    std::size_t L() const { return H.size(); }
    std::size_t K() const { return static_cast<std::size_t>(beta.rows()); }
    std::size_t N() const { return static_cast<std::size_t>(shape.rows()); }

    // Spatial correlation matrix of user k at AP l
    RMatrix R(std::size_t k, std::size_t l) const
    {
        return beta(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) * shape;
    }

    // All APs' channels stacked into one NL x K matrix
    CMatrix stacked() const
    {
        const auto n = static_cast<Eigen::Index>(N());
        CMatrix out(n * static_cast<Eigen::Index>(L()), static_cast<Eigen::Index>(K()));
        for (std::size_t l = 0; l < L(); ++l)
            out.middleRows(static_cast<Eigen::Index>(l) * n, n) = H[l];
        return out;
    }
};

inline RMatrix large_scale_matrix(const Placement &placement, double height)
{
    const auto K = static_cast<Eigen::Index>(placement.users.size());
    const auto L = static_cast<Eigen::Index>(placement.aps.size());
    RMatrix beta(K, L);
    for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index l = 0; l < L; ++l)
            beta(k, l) = large_scale_fading(
                ap_user_distance(placement.aps[static_cast<std::size_t>(l)], placement.users[static_cast<std::size_t>(k)], height));
    return beta;
}

// Correlated Rayleigh channels for one coherence block.
// Draw order: AP-major, then user, then antenna.
inline ChannelRealization draw_channel(const NetworkConfig &cfg, const Placement &placement, Rng &rng)
{
    if (placement.aps.size() != cfg.L || placement.users.size() != cfg.K)
        throw ConfigError("placement does not match the configuration");
    const auto N = static_cast<Eigen::Index>(cfg.N);
    const auto K = static_cast<Eigen::Index>(cfg.K);

    ChannelRealization ch;
    ch.beta = large_scale_matrix(placement, cfg.height);
    ch.shape = correlation_shape(cfg.correlation, cfg.rho, cfg.N);

    const bool white = cfg.correlation == CorrelationModel::independent || cfg.rho == 0.0;
    CMatrix root;
    if (!white)
        root = psd_sqrt(ch.shape.cast<cdouble>());

    ch.H.reserve(cfg.L);
    for (std::size_t l = 0; l < cfg.L; ++l)
    {
        CMatrix Hl(N, K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            CVector g = rng.complex_normal(N, 1);
            if (!white)
                g = root * g;
            Hl.col(k) = std::sqrt(ch.beta(k, static_cast<Eigen::Index>(l))) * g;
        }
        ch.H.push_back(std::move(Hl));
    }
    return ch;
}

} // namespace cfmimo

#endif
