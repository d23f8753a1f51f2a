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

#ifndef cfmimo_memory_model_H
#define cfmimo_memory_model_H

#include "types.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace cfmimo
{

enum class MemoryKind
{
    infinite, // no memory limit
    fap,      // fixed capacity per AP
    ft        // fixed total capacity, split equally among the APs
};

// How an AP turns its byte capacity into a per-vector bit budget
enum class AllocationRule
{
    per_ap_load,       // AP l spreads its pool over its own (l-1)F stored vectors
    uniform_worst_case // every AP l >= 2 uses the budget of the last AP
};

inline std::string_view to_string(MemoryKind k)
{
    switch (k)
    {
    case MemoryKind::infinite:
        return "inf";
    case MemoryKind::fap:
        return "fap";
    case MemoryKind::ft:
        return "ft";
    }
    return "?";
}

inline std::optional<MemoryKind> parse_memory_kind(std::string_view s)
{
    if (s == "inf" || s == "infinite")
        return MemoryKind::infinite;
    if (s == "fap")
        return MemoryKind::fap;
    if (s == "ft")
        return MemoryKind::ft;
    return std::nullopt;
}

inline std::string_view to_string(AllocationRule r)
{
    return r == AllocationRule::per_ap_load ? "per-ap-load" : "uniform-worst-case";
}

inline std::optional<AllocationRule> parse_allocation_rule(std::string_view s)
{
    if (s == "per-ap-load")
        return AllocationRule::per_ap_load;
    if (s == "uniform-worst-case")
        return AllocationRule::uniform_worst_case;
    return std::nullopt;
}

inline constexpr double kibibyte = 1024.0;
inline constexpr double mebibyte = 1024.0 * 1024.0;

struct MemoryPolicy
{
    MemoryKind kind = MemoryKind::infinite;
    double capacity_bytes = 0.0; // C_AP for fap, C_T for ft, ignored for infinite
    AllocationRule rule = AllocationRule::per_ap_load;

    void validate() const
    {
        if (kind != MemoryKind::infinite && !(capacity_bytes > 0.0))
            throw ConfigError("memory capacity must be positive for a finite memory policy");
    }
};

struct BitBudget
{
    std::vector<Bits> per_ap; // bits per stored complex N-vector, nullopt = unlimited
};

// Number of received vectors AP l (1-based) holds while waiting for its predecessor
inline std::size_t stored_vectors(std::size_t l, std::size_t F) { return (l - 1) * F; }

// Byte capacity assigned to one AP under the policy
inline double bytes_per_ap(const MemoryPolicy &policy, std::size_t L)
{
    switch (policy.kind)
    {
    case MemoryKind::fap:
        return policy.capacity_bytes;
    case MemoryKind::ft:
        return policy.capacity_bytes / static_cast<double>(L);
    case MemoryKind::infinite:
        break;
    }
    return 0.0;
}

inline BitBudget per_vector_bits(const MemoryPolicy &policy, std::size_t L, std::size_t F)
{
    if (L < 1)
        throw ConfigError("number of APs must be at least 1");
    if (F < 1)
        throw ConfigError("number of subcarriers must be at least 1");
    policy.validate();

    BitBudget out;
    out.per_ap.assign(L, unlimited_bits);
    if (policy.kind == MemoryKind::infinite)
        return out;

    const double pool_bits = 8.0 * bytes_per_ap(policy, L);
    for (std::size_t l = 2; l <= L; ++l)
    {
        const std::size_t ref = policy.rule == AllocationRule::uniform_worst_case ? L : l;
        out.per_ap[l - 1] = pool_bits / static_cast<double>(stored_vectors(ref, F));
    }
    return out;
}

} // namespace cfmimo

#endif
