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

#ifndef cfmimo_compression_H
#define cfmimo_compression_H

#include "linalg.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace cfmimo
{

// Solver settings for the water-filling multiplier search
struct WaterfillOptions
{
    double rate_tolerance = 1e-9; // bits; the contract is 1e-6
    int max_iterations = 200;
};

// Vector-wise compression of one AP's received vector.
// Q^{-1} = U diag(lambda_q) U^H, with U the eigenvectors of H H^H.
struct VcAllocation
{
    CMatrix U;
    RVector lambda_h2;         // eigenvalues of H H^H (ascending, clamped at 0)
    RVector lambda_q;          // eigenvalues of Q^{-1}; 0 marks a discarded direction
    double mu = 0.0;           // Lagrange multiplier
    double achieved_bits = 0.0;
    bool unlimited = false;        // no memory limit: Z = sigma^2 I and lambda_q is unused
    bool rate_unreachable = false; // zero channel with a positive budget
    bool saturated = false;        // some direction's rate exceeds double range; lambda_q clamped to DBL_MAX
};

// Element-wise compression. Only the diagonal of the compression noise covariance is known.
struct EcAllocation
{
    RVector inv_sigma2_e;     // 1 / sigma_e,i^2
    RVector bits_per_element; // b_i
    RVector P_diag;           // p ||H[i,:]||^2 + sigma^2
    RVector W_diag;           // ||H[i,:]||^2
    double mu = 0.0;
    double achieved_bits = 0.0;
    bool unlimited = false;
    bool rate_unreachable = false;
    bool saturated = false; // inv_sigma2_e clamped to DBL_MAX where 2^b_i overflows
};

// Z^{-1} = basis diag(zinv_eigs) basis^H. Whitened coordinates of a vector x are
// diag(zinv_sqrt_eigs) basis^H x, so discarded directions come out exactly zero.
struct Whitener
{
    CMatrix basis;
    RVector zinv_eigs;
    RVector zinv_sqrt_eigs;
    bool identity_basis = true;

    Eigen::Index size() const { return zinv_eigs.size(); }

    CMatrix apply(const CMatrix &X) const
    {
        if (identity_basis)
            return zinv_sqrt_eigs.asDiagonal() * X;
        return zinv_sqrt_eigs.asDiagonal() * (basis.adjoint() * X);
    }

    CMatrix zinv() const
    {
        if (identity_basis)
            return zinv_eigs.cast<cdouble>().asDiagonal();
        return basis * zinv_eigs.cast<cdouble>().asDiagonal() * basis.adjoint();
    }
};

namespace detail
{

struct WaterfillSolution
{
    RVector inv;  // per-direction inverse compression-noise variance (0 = discarded)
    RVector bits; // per-direction rate
    double log2_water = 0.0;
    double mu = 0.0;
    double total_bits = 0.0;
    bool unreachable = false;
    bool saturated = false;
};

// Rate of each direction at log water level tau, where tau = log2(1/mu - 1).
// With snr_i = s_i / sigma^2 the closed form of log2(inv_i P_i + 1) is
// max(0, tau + log2 snr_i), and the sum is continuous and increasing in tau.
inline double rate_at_level(const RVector &log2_snr, const std::vector<bool> &usable, double tau)
{
    double r = 0.0;
    for (Eigen::Index i = 0; i < log2_snr.size(); ++i)
        if (usable[static_cast<std::size_t>(i)])
            r += std::max(0.0, tau + log2_snr(i));
    return r;
}

// Water-filling over independent directions with signal powers s_i:
//   inv_i = [ (1/mu)(1/sigma^2 - 1/P_i) - 1/sigma^2 ]^+,  P_i = s_i + sigma^2,
// with mu such that sum_i log2(inv_i P_i + 1) = budget. The multiplier is
// bisected through the monotone map tau = log2(1/mu - 1) so that budgets of
// thousands of bits neither overflow nor underflow.
inline WaterfillSolution waterfill(const RVector &signal, double sigma2, double budget, const WaterfillOptions &opt)
{
    if (!(sigma2 > 0.0))
        throw ConfigError("noise power must be positive");
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw ConfigError("bit budget must be finite and non-negative");

    const Eigen::Index n = signal.size();
    WaterfillSolution sol;
    sol.inv = RVector::Zero(n);
    sol.bits = RVector::Zero(n);

    std::vector<bool> usable(static_cast<std::size_t>(n), false);
    RVector log2_snr = RVector::Zero(n);
    double g_max = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
        if (signal(i) > 0.0)
        {
            usable[static_cast<std::size_t>(i)] = true;
            log2_snr(i) = std::log2(signal(i) / sigma2);
            g_max = std::max(g_max, log2_snr(i));
        }
    if (!std::isfinite(g_max))
    {
        sol.mu = 1.0;
        sol.unreachable = budget > 0.0;
        return sol;
    }

    // rate(lo) = 0 and rate(hi) > budget, since the strongest direction alone contributes tau + g_max
    double lo = -g_max;
    double hi = budget - g_max + 1.0;
    double tau = lo;
    if (budget > 0.0)
    {
        if (rate_at_level(log2_snr, usable, lo) > budget || rate_at_level(log2_snr, usable, hi) < budget)
            throw NumericError("water level is not bracketed");
        double rate = 0.0;
        tau = hi;
        for (int it = 0; it < opt.max_iterations; ++it)
        {
            tau = 0.5 * (lo + hi);
            rate = rate_at_level(log2_snr, usable, tau);
            if (std::abs(rate - budget) <= opt.rate_tolerance || tau <= lo || tau >= hi)
                break;
            (rate > budget ? hi : lo) = tau;
        }

        // The rate is affine in tau on a fixed active set; invert it there and keep
        // the result if the active set does not change.
        std::size_t active = 0;
        double g_sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (usable[static_cast<std::size_t>(i)] && tau + log2_snr(i) > 0.0)
            {
                ++active;
                g_sum += log2_snr(i);
            }
        const double tau_exact = (budget - g_sum) / static_cast<double>(active);
        std::size_t active_exact = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (usable[static_cast<std::size_t>(i)] && tau_exact + log2_snr(i) > 0.0)
                ++active_exact;
        if (active_exact == active &&
            std::abs(rate_at_level(log2_snr, usable, tau_exact) - budget) <= std::abs(rate - budget))
            tau = tau_exact;
    }

    sol.log2_water = tau;
    // mu = 1 / (1 + 2^tau), evaluated on the side that does not overflow
    sol.mu = tau > 0.0 ? std::exp2(-tau) / (1.0 + std::exp2(-tau)) : 1.0 / (1.0 + std::exp2(tau));
    if (!(sol.mu >= std::numeric_limits<double>::min()))
    {
        sol.mu = std::numeric_limits<double>::min();
        sol.saturated = true;
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (!usable[static_cast<std::size_t>(i)])
            continue;
        const double b = tau + log2_snr(i);
        if (b <= 0.0)
            continue;
        sol.bits(i) = b;
        // inv_i P_i = 2^b - 1
        const double v = std::expm1(b * std::numbers::ln2) / (signal(i) + sigma2);
        if (std::isfinite(v))
            sol.inv(i) = v;
        else
        {
            sol.inv(i) = std::numeric_limits<double>::max();
            sol.saturated = true;
        }
    }
    sol.total_bits = sol.bits.sum();
    return sol;
}

// Eigenvalues below this fraction of the largest are treated as exact zeros
inline double null_threshold(const RVector &ev)
{
    if (ev.size() == 0)
        return 0.0;
    return 16.0 * static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() * ev.cwiseAbs().maxCoeff();
}

} // namespace detail

inline VcAllocation vc_waterfill(const CMatrix &H, double p, double sigma2, Bits budget,
                                 const WaterfillOptions &opt = {})
{
    if (!(p > 0.0))
        throw ConfigError("transmit power must be positive");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H * H.adjoint());
    if (es.info() != Eigen::Success)
        throw NumericError("eigendecomposition of H H^H failed");

    VcAllocation out;
    out.U = es.eigenvectors();
    out.lambda_h2 = es.eigenvalues();
    const double tiny = detail::null_threshold(out.lambda_h2);
    for (Eigen::Index i = 0; i < out.lambda_h2.size(); ++i)
        if (out.lambda_h2(i) <= tiny)
            out.lambda_h2(i) = 0.0;

    out.lambda_q = RVector::Zero(out.lambda_h2.size());
    if (!budget)
    {
        out.unlimited = true;
        return out;
    }
    const auto sol = detail::waterfill(p * out.lambda_h2, sigma2, *budget, opt);
    out.lambda_q = sol.inv;
    out.mu = sol.mu;
    out.achieved_bits = sol.total_bits;
    out.rate_unreachable = sol.unreachable;
    out.saturated = sol.saturated;
    return out;
}

inline EcAllocation ec_waterfill(const CMatrix &H, double p, double sigma2, Bits budget,
                                 const WaterfillOptions &opt = {})
{
    if (!(p > 0.0))
        throw ConfigError("transmit power must be positive");
    EcAllocation out;
    out.W_diag = H.rowwise().squaredNorm();
    out.P_diag = p * out.W_diag.array() + sigma2;
    out.inv_sigma2_e = RVector::Zero(H.rows());
    out.bits_per_element = RVector::Zero(H.rows());
    if (!budget)
    {
        out.unlimited = true;
        return out;
    }
    const auto sol = detail::waterfill(p * out.W_diag, sigma2, *budget, opt);
    out.inv_sigma2_e = sol.inv;
    out.bits_per_element = sol.bits;
    out.mu = sol.mu;
    out.achieved_bits = sol.total_bits;
    out.rate_unreachable = sol.unreachable;
    out.saturated = sol.saturated;
    return out;
}

// Whitener with no compression noise: Z = sigma^2 I
inline Whitener uncompressed_whitener(Eigen::Index N, double sigma2)
{
    Whitener w;
    w.zinv_eigs = RVector::Constant(N, 1.0 / sigma2);
    w.zinv_sqrt_eigs = w.zinv_eigs.cwiseSqrt();
    w.identity_basis = true;
    w.basis = CMatrix::Identity(N, N);
    return w;
}

namespace detail
{
// Eigenvalue of (1/v + sigma^2)^{-1}, i.e. v / (1 + sigma^2 v); v = 0 stays 0
inline RVector inverse_noise_eigs(const RVector &v, double sigma2)
{
    return (v.array() / (1.0 + sigma2 * v.array())).matrix();
}
} // namespace detail

inline Whitener build_whitener(const VcAllocation &alloc, double sigma2)
{
    if (alloc.unlimited)
        return uncompressed_whitener(alloc.lambda_h2.size(), sigma2);
    Whitener w;
    w.basis = alloc.U;
    w.identity_basis = false;
    w.zinv_eigs = detail::inverse_noise_eigs(alloc.lambda_q, sigma2);
    w.zinv_sqrt_eigs = w.zinv_eigs.cwiseSqrt();
    return w;
}

inline Whitener build_whitener(const EcAllocation &alloc, double sigma2)
{
    if (alloc.unlimited)
        return uncompressed_whitener(alloc.W_diag.size(), sigma2);
    Whitener w;
    w.basis = CMatrix::Identity(alloc.W_diag.size(), alloc.W_diag.size());
    w.identity_basis = true;
    w.zinv_eigs = detail::inverse_noise_eigs(alloc.inv_sigma2_e, sigma2);
    w.zinv_sqrt_eigs = w.zinv_eigs.cwiseSqrt();
    return w;
}

// Mutual-information rate log2 det(Q^{-1}(p H H^H + sigma^2 I) + I), rebuilt from
// the allocation's Q^{-1} and the raw channel.
inline double achieved_rate(const VcAllocation &alloc, const CMatrix &H, double p, double sigma2)
{
    if (alloc.unlimited)
        throw ConfigError("an unlimited allocation has no finite rate");
    const Eigen::Index n = H.rows();
    CMatrix A = p * (H * H.adjoint());
    A.diagonal().array() += sigma2;
    // evaluated in the eigenbasis of the allocation
    const auto d = alloc.lambda_q.cwiseSqrt().cast<cdouble>().asDiagonal();
    CMatrix M = d * (alloc.U.adjoint() * A * alloc.U) * d;
    M = hermitian_part(M);
    M += CMatrix::Identity(n, n);
    return log2det_hpd(M);
}

// log2 det((Q^d)^{-1} P + I) with P the diagonal of the conditional received covariance
inline double achieved_rate(const EcAllocation &alloc, const CMatrix &H, double p, double sigma2)
{
    if (alloc.unlimited)
        throw ConfigError("an unlimited allocation has no finite rate");
    double bits = 0.0;
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        bits += std::log2(alloc.inv_sigma2_e(i) * (p * H.row(i).squaredNorm() + sigma2) + 1.0);
    return bits;
}

// Per-AP pipeline: solve the allocation for the scheme and return its whitener
inline Whitener compress(Scheme scheme, const CMatrix &H, double p, double sigma2, Bits budget,
                         const WaterfillOptions &opt = {})
{
    switch (scheme)
    {
    case Scheme::vc:
        return build_whitener(vc_waterfill(H, p, sigma2, budget, opt), sigma2);
    case Scheme::ec:
        return build_whitener(ec_waterfill(H, p, sigma2, budget, opt), sigma2);
    case Scheme::none:
        break;
    }
    return uncompressed_whitener(H.rows(), sigma2);
}

} // namespace cfmimo

#endif
