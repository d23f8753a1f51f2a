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

#ifndef cfmimo_metrics_H
#define cfmimo_metrics_H

#include "compression.hpp"
#include "linalg.hpp"
#include "types.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cfmimo
{

struct SeReport
{
    double sum_se_exact = 0.0;   // bits/s/Hz, before the tau factor
    double sum_se_bound = 0.0;
    double per_user_exact = 0.0; // tau_factor * sum / K
    double per_user_bound = 0.0;
    Scheme scheme = Scheme::none;
};

namespace detail
{
inline CMatrix stacked_whitened(std::span<const CMatrix> H, std::span<const Whitener> w)
{
    if (H.size() != w.size())
        throw std::invalid_argument("one whitener per AP is required");
    Eigen::Index rows = 0;
    for (const auto &h : H)
        rows += h.rows();
    const Eigen::Index K = H.empty() ? 0 : H[0].cols();
    CMatrix out(rows, K);
    Eigen::Index r = 0;
    for (std::size_t l = 0; l < H.size(); ++l)
    {
        out.middleRows(r, H[l].rows()) = w[l].apply(H[l]);
        r += H[l].rows();
    }
    return out;
}
} // namespace detail

// log2 det(p Z^{-1/2} H H^H Z^{-1/2} + I) over the whole network. The whiteners decide
// which Z is used (Z_v for VC, the diagonal surrogate for EC, sigma^2 I for none).
inline double sum_se_exact(std::span<const CMatrix> H, std::span<const Whitener> w, double p)
{
    return log2det_identity_plus_gram(detail::stacked_whitened(H, w), p);
}

// Upper bounds obtained by dropping cross-AP terms, then off-diagonal terms within an AP.
struct BoundChain
{
    double per_ap = 0.0;   // sum_l log2 det(p H_l H_l^H Z_l^{-1} + I)
    double diagonal = 0.0; // sum_l sum_i log2(1 + p [Z_l^{-1/2} H_l H_l^H Z_l^{-1/2}]_ii)
};

inline BoundChain se_bound_chain(std::span<const CMatrix> H, std::span<const Whitener> w, double p)
{
    if (H.size() != w.size())
        throw std::invalid_argument("one whitener per AP is required");
    BoundChain b;
    for (std::size_t l = 0; l < H.size(); ++l)
    {
        const CMatrix Hw = w[l].apply(H[l]);
        b.per_ap += log2det_identity_plus_gram(Hw.adjoint(), p);
        for (Eigen::Index i = 0; i < Hw.rows(); ++i)
            b.diagonal += std::log2(1.0 + p * Hw.row(i).squaredNorm());
    }
    return b;
}

// The bound reported for a scheme: per-AP for VC and none, fully diagonal for EC
inline double sum_se_bound(std::span<const CMatrix> H, std::span<const Whitener> w, double p, Scheme scheme)
{
    const BoundChain b = se_bound_chain(H, w, p);
    return scheme == Scheme::ec ? b.diagonal : b.per_ap;
}

inline double per_user_se(double sum_se, std::size_t K, double tau_factor = 1.0)
{
    if (K < 1)
        throw ConfigError("K must be at least 1");
    return tau_factor * sum_se / static_cast<double>(K);
}

inline SeReport se_report(std::span<const CMatrix> H, std::span<const Whitener> w, double p, Scheme scheme,
                          double tau_factor = 1.0)
{
    SeReport r;
    r.scheme = scheme;
    r.sum_se_exact = sum_se_exact(H, w, p);
    r.sum_se_bound = sum_se_bound(H, w, p, scheme);
    const std::size_t K = H.empty() ? 1 : static_cast<std::size_t>(H[0].cols());
    r.per_user_exact = per_user_se(r.sum_se_exact, K, tau_factor);
    r.per_user_bound = per_user_se(r.sum_se_bound, K, tau_factor);
    return r;
}

} // namespace cfmimo

#endif
