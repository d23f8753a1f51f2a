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

#include <cfmimo/memory_model.hpp>

#include <gtest/gtest.h>

using namespace cfmimo;

TEST(PerVectorBits, FapLastApBudget)
{
    const MemoryPolicy pol{MemoryKind::fap, 64 * kibibyte, AllocationRule::per_ap_load};
    const auto b = per_vector_bits(pol, 128, 1024);
    ASSERT_EQ(b.per_ap.size(), 128u);
    ASSERT_TRUE(b.per_ap[127].has_value());
    EXPECT_NEAR(*b.per_ap[127], 4.031496062992126, 1e-12);
}

TEST(PerVectorBits, FirstApIsUnlimited)
{
    for (auto kind : {MemoryKind::fap, MemoryKind::ft, MemoryKind::infinite})
        for (auto rule : {AllocationRule::per_ap_load, AllocationRule::uniform_worst_case})
        {
            const auto b = per_vector_bits({kind, 1000.0, rule}, 5, 16);
            EXPECT_FALSE(b.per_ap[0].has_value());
        }
}

TEST(PerVectorBits, FtEqualSplit)
{
    const MemoryPolicy pol{MemoryKind::ft, 8 * mebibyte, AllocationRule::per_ap_load};
    const auto b = per_vector_bits(pol, 128, 1024);
    EXPECT_NEAR(*b.per_ap[127], 4.031496062992126, 1e-12);
    EXPECT_DOUBLE_EQ(bytes_per_ap(pol, 128), 65536.0);
}

TEST(PerVectorBits, FtTotalBytesConserved)
{
    for (std::size_t L : {1u, 2u, 3u, 7u, 64u, 128u})
    {
        const MemoryPolicy pol{MemoryKind::ft, 12345.0, AllocationRule::per_ap_load};
        double total = 0.0;
        for (std::size_t l = 0; l < L; ++l)
            total += bytes_per_ap(pol, L);
        EXPECT_NEAR(total, 12345.0, 1e-9);
    }
}

TEST(PerVectorBits, FapStrictlyDecreasingAlongChain)
{
    const auto b = per_vector_bits({MemoryKind::fap, 256 * kibibyte, AllocationRule::per_ap_load}, 64, 512);
    for (std::size_t l = 2; l < 64; ++l)
        EXPECT_GT(*b.per_ap[l - 1], *b.per_ap[l]);
}

TEST(PerVectorBits, DoublingCapacityDoublesBudgets)
{
    for (auto kind : {MemoryKind::fap, MemoryKind::ft})
        for (auto rule : {AllocationRule::per_ap_load, AllocationRule::uniform_worst_case})
        {
            const auto a = per_vector_bits({kind, 3000.0, rule}, 16, 100);
            const auto b = per_vector_bits({kind, 6000.0, rule}, 16, 100);
            for (std::size_t l = 1; l < 16; ++l)
                EXPECT_DOUBLE_EQ(*b.per_ap[l], 2.0 * *a.per_ap[l]);
        }
}

TEST(PerVectorBits, UniformWorstCaseUsesLastAp)
{
    const auto per = per_vector_bits({MemoryKind::fap, 64 * kibibyte, AllocationRule::per_ap_load}, 32, 1024);
    const auto uni = per_vector_bits({MemoryKind::fap, 64 * kibibyte, AllocationRule::uniform_worst_case}, 32, 1024);
    EXPECT_FALSE(uni.per_ap[0].has_value());
    for (std::size_t l = 1; l < 32; ++l)
        EXPECT_DOUBLE_EQ(*uni.per_ap[l], *per.per_ap[31]);
}

TEST(PerVectorBits, InfiniteIsUnlimitedEverywhere)
{
    const auto b = per_vector_bits({MemoryKind::infinite, 0.0, AllocationRule::per_ap_load}, 8, 1024);
    for (const auto &x : b.per_ap)
        EXPECT_FALSE(x.has_value());
}

TEST(PerVectorBits, Errors)
{
    EXPECT_THROW(per_vector_bits({MemoryKind::fap, 0.0, AllocationRule::per_ap_load}, 4, 16), ConfigError);
    EXPECT_THROW(per_vector_bits({MemoryKind::ft, -5.0, AllocationRule::per_ap_load}, 4, 16), ConfigError);
    EXPECT_THROW(per_vector_bits({MemoryKind::fap, 10.0, AllocationRule::per_ap_load}, 0, 16), ConfigError);
    EXPECT_THROW(per_vector_bits({MemoryKind::fap, 10.0, AllocationRule::per_ap_load}, 4, 0), ConfigError);
}
