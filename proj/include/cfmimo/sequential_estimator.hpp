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

#ifndef cfmimo_sequential_estimator_H
#define cfmimo_sequential_estimator_H

#include "compression.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cfmimo
{

// Running state of the daisy chain after `stage` APs.
// gamma is the error covariance of the estimates, s_hat holds one column per uplink sample.
struct RlsState
{
    CMatrix gamma;
    CMatrix s_hat;
    std::size_t stage = 0;
};

inline RlsState initial_rls_state(Eigen::Index K, double p, Eigen::Index samples = 1)
{
    if (!(p > 0.0))
        throw ConfigError("transmit power must be positive");
    RlsState st;
    st.gamma = p * CMatrix::Identity(K, K);
    st.s_hat = CMatrix::Zero(K, samples);
    st.stage = 0;
    return st;
}

// Z^{-1/2} applied to the stored vector of one AP, one column per sample
struct WhitenedObservation
{
    CMatrix y_tilde;
};

// Noise-free part Z^{-1/2} H s
inline WhitenedObservation whitened_signal(const CMatrix &H, const Whitener &w, const CMatrix &s)
{
    if (H.rows() != w.size() || H.cols() != s.rows())
        throw std::invalid_argument("dimension mismatch in whitened observation");
    return {w.apply(H) * s};
}

// Z^{-1/2}(H s + n + q). The whitened noise is unit CN on every kept direction and
// exactly zero on discarded ones.
inline WhitenedObservation simulate_whitened_observation(const CMatrix &H, const Whitener &w, const CMatrix &s,
                                                         Rng &rng)
{
    WhitenedObservation obs = whitened_signal(H, w, s);
    for (Eigen::Index c = 0; c < obs.y_tilde.cols(); ++c)
        for (Eigen::Index i = 0; i < obs.y_tilde.rows(); ++i)
            if (w.zinv_sqrt_eigs(i) > 0.0)
                obs.y_tilde(i, c) += rng.complex_normal();
    return obs;
}

// One AP of the chain: fold its whitened observation into the running estimate.
inline RlsState rls_step(const RlsState &state, const CMatrix &H, const Whitener &w, const WhitenedObservation &obs,
                         double hermitian_tol = 1e-10)
{
    const Eigen::Index K = state.gamma.rows();
    if (H.cols() != K || H.rows() != w.size() || obs.y_tilde.rows() != H.rows() ||
        obs.y_tilde.cols() != state.s_hat.cols())
        throw std::invalid_argument("dimension mismatch in RLS step");
    if (hermitian_defect(state.gamma) > hermitian_tol)
        throw NumericError("RLS covariance lost Hermitian symmetry at stage " + std::to_string(state.stage));

    const CMatrix Hw = w.apply(H);
    const CMatrix gh = state.gamma * Hw.adjoint(); // K x N
    CMatrix G = Hw * gh;
    G.diagonal().array() += 1.0;
    G = hermitian_part(G);
    Eigen::LLT<CMatrix> llt(G);
    if (llt.info() != Eigen::Success)
        throw NumericError("innovation covariance is not positive definite");

    RlsState next;
    next.gamma = hermitian_part(state.gamma - gh * llt.solve(gh.adjoint()));
    const CMatrix innovation = obs.y_tilde - Hw * state.s_hat;
    next.s_hat = state.s_hat + next.gamma * (Hw.adjoint() * innovation);
    next.stage = state.stage + 1;
    return next;
}

struct RlsResult
{
    CMatrix s_hat;              // estimates after the last AP
    std::vector<CMatrix> gamma; // gamma[l] after AP l+1 has been processed
};

inline RlsResult rls_run(std::span<const CMatrix> H, std::span<const Whitener> whiteners,
                         std::span<const WhitenedObservation> observations, double p)
{
    if (H.empty() || H.size() != whiteners.size() || H.size() != observations.size())
        throw std::invalid_argument("inconsistent number of APs in RLS inputs");
    RlsState st = initial_rls_state(H[0].cols(), p, observations[0].y_tilde.cols());
    RlsResult out;
    out.gamma.reserve(H.size());
    for (std::size_t l = 0; l < H.size(); ++l)
    {
        st = rls_step(st, H[l], whiteners[l], observations[l]);
        out.gamma.push_back(st.gamma);
    }
    out.s_hat = std::move(st.s_hat);
    return out;
}

// Closed-form estimate (H^H Z^{-1} H + I/p)^{-1} H^H Z^{-1} y, assembled in whitened
// coordinates from the per-AP blocks of the block-diagonal Z.
inline CMatrix centralized_ls(std::span<const CMatrix> H, std::span<const Whitener> whiteners,
                              std::span<const WhitenedObservation> observations, double p)
{
    if (H.empty() || H.size() != whiteners.size() || H.size() != observations.size())
        throw std::invalid_argument("inconsistent number of APs in estimator inputs");
    if (!(p > 0.0))
        throw ConfigError("transmit power must be positive");
    const Eigen::Index K = H[0].cols();
    const Eigen::Index S = observations[0].y_tilde.cols();
    CMatrix normal = CMatrix::Identity(K, K) / p;
    CMatrix rhs = CMatrix::Zero(K, S);
    for (std::size_t l = 0; l < H.size(); ++l)
    {
        const CMatrix Hw = whiteners[l].apply(H[l]);
        normal += Hw.adjoint() * Hw;
        rhs += Hw.adjoint() * observations[l].y_tilde;
    }
    Eigen::LDLT<CMatrix> ldlt(hermitian_part(normal));
    return ldlt.solve(rhs);
}

} // namespace cfmimo

#endif
