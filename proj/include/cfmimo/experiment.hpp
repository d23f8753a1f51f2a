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

#ifndef cfmimo_experiment_H
#define cfmimo_experiment_H

#include "compression.hpp"
#include "config.hpp"
#include "geometry_channel.hpp"
#include "memory_model.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "types.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cfmimo
{

struct ExperimentPlan
{
    NetworkConfig base;
    std::vector<std::size_t> l_sweep{2, 4, 8, 16, 32, 64, 128};
    std::vector<Scheme> schemes{Scheme::vc, Scheme::ec};
    std::vector<MemoryPolicy> policies{MemoryPolicy{MemoryKind::fap, 64 * kibibyte, AllocationRule::per_ap_load}};
    std::size_t workers = 1;

    void validate() const
    {
        if (l_sweep.empty())
            throw ConfigError("the L sweep is empty");
        if (schemes.empty())
            throw ConfigError("no compression scheme selected");
        if (policies.empty())
            throw ConfigError("no memory policy selected");
        for (auto L : l_sweep)
            base.with_aps(L).validate();
        for (const auto &pol : policies)
            pol.validate();
    }

    std::size_t record_count() const { return policies.size() * schemes.size() * l_sweep.size() * base.trials; }
};

struct TrialRecord
{
    Scheme scheme = Scheme::none;
    MemoryKind memory_kind = MemoryKind::infinite;
    double capacity_bytes = 0.0;
    std::size_t L = 0;
    std::size_t N = 0;
    std::size_t K = 0;
    std::size_t F = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double sum_se_exact = 0.0;
    double sum_se_bound = 0.0;
    double per_user_exact = 0.0;
    double per_user_bound = 0.0;

    bool operator==(const TrialRecord &) const = default;
};

// Random stream of one (L, trial) cell. It does not depend on the scheme or the
// memory policy, so every scheme and policy is evaluated on the same channels.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t L, std::size_t trial)
{
    return derive_seed(master, {static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(trial)});
}

// Per-AP whiteners for one scheme and bit budget
inline std::vector<Whitener> compress_all(const ChannelRealization &ch, const NetworkConfig &cfg, Scheme scheme,
                                          const BitBudget &budget)
{
    std::vector<Whitener> w;
    w.reserve(ch.L());
    for (std::size_t l = 0; l < ch.L(); ++l)
        w.push_back(compress(scheme, ch.H[l], cfg.p, cfg.sigma2, budget.per_ap[l]));
    return w;
}

namespace detail
{
// Evaluates every (policy, scheme) pair on one channel draw
inline void run_cell(const ExperimentPlan &plan, std::size_t l_index, std::size_t trial,
                     std::vector<TrialRecord> &out)
{
    const NetworkConfig cfg = plan.base.with_aps(plan.l_sweep[l_index]);
    const std::uint64_t seed = trial_seed(cfg.master_seed, cfg.L, trial);
    Rng rng(seed);
    const Placement placement = make_placement(cfg, rng);
    const ChannelRealization ch = draw_channel(cfg, placement, rng);

    const std::size_t nL = plan.l_sweep.size();
    const std::size_t nT = plan.base.trials;
    for (std::size_t pi = 0; pi < plan.policies.size(); ++pi)
    {
        const MemoryPolicy &pol = plan.policies[pi];
        const BitBudget budget = per_vector_bits(pol, cfg.L, cfg.F);
        for (std::size_t si = 0; si < plan.schemes.size(); ++si)
        {
            const Scheme scheme = plan.schemes[si];
            const auto w = compress_all(ch, cfg, scheme, budget);
            const SeReport rep = se_report(ch.H, w, cfg.p, scheme, cfg.tau_factor);

            TrialRecord r;
            r.scheme = scheme;
            r.memory_kind = pol.kind;
            r.capacity_bytes = pol.kind == MemoryKind::infinite ? 0.0 : pol.capacity_bytes;
            r.L = cfg.L;
            r.N = cfg.N;
            r.K = cfg.K;
            r.F = cfg.F;
            r.trial = trial;
            r.seed = seed;
            r.sum_se_exact = rep.sum_se_exact;
            r.sum_se_bound = rep.sum_se_bound;
            r.per_user_exact = rep.per_user_exact;
            r.per_user_bound = rep.per_user_bound;

            const std::size_t slot = ((pi * plan.schemes.size() + si) * nL + l_index) * nT + trial;
            out[slot] = r;
        }
    }
}
} // namespace detail

// Runs all trials. Records come back ordered by (policy, scheme, L, trial) regardless
// of the worker count.
inline std::vector<TrialRecord> run_experiment(const ExperimentPlan &plan)
{
    plan.validate();
    std::vector<TrialRecord> out(plan.record_count());
    const std::size_t cells = plan.l_sweep.size() * plan.base.trials;
    if (cells == 0)
        return out;

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells)
                return;
            try
            {
                detail::run_cell(plan, c / plan.base.trials, c % plan.base.trials, out);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(cells);
                return;
            }
        }
    };

    const std::size_t n_workers = std::clamp<std::size_t>(plan.workers, 1, cells);
    if (n_workers == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace cfmimo

#endif
