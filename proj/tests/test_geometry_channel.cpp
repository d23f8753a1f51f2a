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

#include <cfmimo/geometry_channel.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace cfmimo;

namespace
{

// Arclength of a point on the perimeter of [0, side]^2, counterclockwise from (0, 0)
double arclength_of(const Point &p, double side)
{
    const double eps = 1e-9;
    if (std::abs(p.y) < eps)
        return p.x;
    if (std::abs(p.x - side) < eps)
        return side + p.y;
    if (std::abs(p.y - side) < eps)
        return 3.0 * side - p.x;
    return 4.0 * side - p.y;
}

NetworkConfig single_link(std::size_t N)
{
    NetworkConfig cfg;
    cfg.total_antennas = N;
    cfg.L = 1;
    cfg.N = N;
    cfg.K = 1;
    return cfg;
}

} // namespace

TEST(PlaceAps, FourApsSitOnCorners)
{
    const auto aps = place_aps(4, 500.0);
    ASSERT_EQ(aps.size(), 4u);
    const std::vector<Point> expect{{0, 0}, {125, 0}, {125, 125}, {0, 125}};
    for (std::size_t i = 0; i < 4; ++i)
    {
        EXPECT_DOUBLE_EQ(aps[i].x, expect[i].x);
        EXPECT_DOUBLE_EQ(aps[i].y, expect[i].y);
    }
}

TEST(PlaceAps, TwoApsSitOnOppositeCorners)
{
    const auto aps = place_aps(2, 500.0);
    EXPECT_DOUBLE_EQ(aps[0].x, 0.0);
    EXPECT_DOUBLE_EQ(aps[0].y, 0.0);
    EXPECT_DOUBLE_EQ(aps[1].x, 125.0);
    EXPECT_DOUBLE_EQ(aps[1].y, 125.0);
}

TEST(PlaceAps, ArclengthGapsAreUniform)
{
    for (std::size_t L : {1u, 3u, 7u, 16u, 128u, 200u})
    {
        const double D = 500.0;
        const auto aps = place_aps(L, D);
        std::vector<double> s;
        for (const auto &p : aps)
        {
            EXPECT_TRUE(std::abs(p.x) < 1e-9 || std::abs(p.y) < 1e-9 || std::abs(p.x - D / 4) < 1e-9 ||
                        std::abs(p.y - D / 4) < 1e-9);
            s.push_back(arclength_of(p, D / 4));
        }
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < L; ++i)
        {
            const double next = i + 1 < L ? s[i + 1] : s[0] + D;
            EXPECT_NEAR(next - s[i], D / static_cast<double>(L), 1e-9) << "L=" << L;
        }
    }
}

TEST(PlaceAps, RejectsBadArguments)
{
    EXPECT_THROW(place_aps(0, 500.0), ConfigError);
    EXPECT_THROW(place_aps(4, 0.0), ConfigError);
    EXPECT_THROW(place_aps(4, -1.0), ConfigError);
}

TEST(PlaceUsers, ContainedInInnerSquare)
{
    NetworkConfig cfg;
    Rng rng(7);
    for (const auto &u : place_users(5000, cfg, rng))
    {
        EXPECT_GE(u.x, 12.5);
        EXPECT_LE(u.x, 112.5);
        EXPECT_GE(u.y, 12.5);
        EXPECT_LE(u.y, 112.5);
    }
}

TEST(PlaceUsers, SampleMeanIsCenter)
{
    NetworkConfig cfg;
    Rng rng(11);
    const auto users = place_users(100000, cfg, rng);
    double mx = 0.0, my = 0.0;
    for (const auto &u : users)
    {
        mx += u.x;
        my += u.y;
    }
    EXPECT_NEAR(mx / 1e5, 62.5, 0.5);
    EXPECT_NEAR(my / 1e5, 62.5, 0.5);
}

TEST(PlaceUsers, SameSeedSamePositions)
{
    NetworkConfig cfg;
    Rng a(42), b(42);
    const auto ua = place_users(64, cfg, a);
    const auto ub = place_users(64, cfg, b);
    for (std::size_t i = 0; i < ua.size(); ++i)
    {
        EXPECT_EQ(ua[i].x, ub[i].x);
        EXPECT_EQ(ua[i].y, ub[i].y);
    }
}

TEST(PlaceUsers, RejectsInnerSquareNotInsideOuter)
{
    NetworkConfig cfg;
    cfg.inner_perimeter = 500.0;
    Rng rng(1);
    EXPECT_THROW(place_users(4, cfg, rng), ConfigError);
}

TEST(LargeScaleFading, ReferenceDistances)
{
    EXPECT_DOUBLE_EQ(large_scale_fading_db(1.0), -30.5);
    EXPECT_NEAR(large_scale_fading_db(10.0), -67.2, 1e-12);
    EXPECT_NEAR(large_scale_fading_db(100.0), -103.9, 1e-12);
    EXPECT_NEAR(large_scale_fading(10.0), std::pow(10.0, -6.72), 1e-20);
}

TEST(LargeScaleFading, StrictlyDecreasing)
{
    double prev = large_scale_fading(5.0);
    for (double d = 5.5; d < 400.0; d += 0.5)
    {
        const double b = large_scale_fading(d);
        EXPECT_LT(b, prev);
        EXPECT_GT(b, 0.0);
        prev = b;
    }
}

TEST(LargeScaleFading, RejectsNonPositiveDistance)
{
    EXPECT_THROW(large_scale_fading(0.0), std::domain_error);
    EXPECT_THROW(large_scale_fading(-3.0), std::domain_error);
}

TEST(Distance, NeverBelowHeight)
{
    NetworkConfig cfg = NetworkConfig{}.with_aps(128);
    Rng rng(3);
    const Placement pl = make_placement(cfg, rng);
    for (const auto &ap : pl.aps)
        for (const auto &u : pl.users)
            EXPECT_GE(ap_user_distance(ap, u, cfg.height), cfg.height);
    EXPECT_DOUBLE_EQ(ap_user_distance({0, 0}, {0, 0}, 5.0), 5.0);
}

TEST(DrawChannel, EmpiricalCovarianceMatchesBetaIdentity)
{
    const std::size_t N = 4;
    NetworkConfig cfg = single_link(N);
    const Placement pl{{{0.0, 0.0}}, {{30.0, 40.0}}};
    Rng rng(2024);
    const int draws = 10000;
    CMatrix cov = CMatrix::Zero(N, N);
    double energy = 0.0;
    double beta = 0.0;
    for (int t = 0; t < draws; ++t)
    {
        const auto ch = draw_channel(cfg, pl, rng);
        const CVector h = ch.H[0].col(0);
        cov += h * h.adjoint();
        energy += h.squaredNorm();
        beta = ch.beta(0, 0);
    }
    cov /= draws;
    const CMatrix target = beta * CMatrix::Identity(N, N);
    EXPECT_LT((cov - target).norm() / target.norm(), 0.05);
    EXPECT_NEAR(energy / draws / (static_cast<double>(N) * beta), 1.0, 0.02);
}

TEST(DrawChannel, TraceNormalizationBothModels)
{
    for (auto model : {CorrelationModel::independent, CorrelationModel::exponential})
    {
        NetworkConfig cfg = NetworkConfig{}.with_aps(16);
        cfg.correlation = model;
        cfg.rho = 0.7;
        Rng rng(5);
        const auto pl = make_placement(cfg, rng);
        const auto ch = draw_channel(cfg, pl, rng);
        for (std::size_t k = 0; k < cfg.K; ++k)
            for (std::size_t l = 0; l < cfg.L; ++l)
            {
                const RMatrix R = ch.R(k, l);
                EXPECT_NEAR(R.trace() / static_cast<double>(cfg.N), ch.beta(k, l), 1e-15 * ch.beta(k, l) * 8);
                EXPECT_GT(ch.beta(k, l), 0.0);
            }
    }
}

TEST(DrawChannel, ExponentialWithZeroRhoEqualsIndependent)
{
    NetworkConfig a = NetworkConfig{}.with_aps(8);
    NetworkConfig b = a;
    b.correlation = CorrelationModel::exponential;
    b.rho = 0.0;
    Rng ra(99), rb(99);
    const auto pa = make_placement(a, ra);
    const auto pb = make_placement(b, rb);
    const auto ca = draw_channel(a, pa, ra);
    const auto cb = draw_channel(b, pb, rb);
    EXPECT_EQ(ca.shape, cb.shape);
    for (std::size_t l = 0; l < a.L; ++l)
        EXPECT_EQ(ca.H[l], cb.H[l]);
}

TEST(DrawChannel, ExponentialCorrelationCovariance)
{
    const std::size_t N = 3;
    NetworkConfig cfg = single_link(N);
    cfg.correlation = CorrelationModel::exponential;
    cfg.rho = 0.6;
    const Placement pl{{{0.0, 0.0}}, {{10.0, 0.0}}};
    Rng rng(8);
    CMatrix cov = CMatrix::Zero(N, N);
    RMatrix R;
    for (int t = 0; t < 20000; ++t)
    {
        const auto ch = draw_channel(cfg, pl, rng);
        cov += ch.H[0].col(0) * ch.H[0].col(0).adjoint();
        R = ch.R(0, 0);
    }
    cov /= 20000.0;
    EXPECT_LT((cov - R.cast<cdouble>()).norm() / R.norm(), 0.05);
}

TEST(DrawChannel, BitReproducibleWithSeed)
{
    NetworkConfig cfg = NetworkConfig{}.with_aps(32);
    cfg.K = 16;
    auto once = [&] {
        Rng rng(derive_seed(123, {32, 4}));
        const auto pl = make_placement(cfg, rng);
        return draw_channel(cfg, pl, rng);
    };
    const auto a = once();
    const auto b = once();
    EXPECT_EQ(a.beta, b.beta);
    for (std::size_t l = 0; l < cfg.L; ++l)
        EXPECT_EQ(a.H[l], b.H[l]);
}

TEST(DrawChannel, RejectsNonPsdCorrelation)
{
    CMatrix R(2, 2);
    R << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3 and -1
    Rng rng(1);
    EXPECT_THROW(correlated_draw(R, rng), NumericError);
    CMatrix ok = CMatrix::Identity(2, 2);
    EXPECT_NO_THROW(correlated_draw(ok, rng));
}
