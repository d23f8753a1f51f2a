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

#ifndef cfmimo_cli_H
#define cfmimo_cli_H

#include "config.hpp"
#include "experiment.hpp"
#include "memory_model.hpp"
#include "types.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfmimo
{

// Bad command line or config file; the tool exits with status 2
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct CliOptions
{
    ExperimentPlan plan;
    std::string out;  // CSV path, empty = stdout
    std::string plot; // SVG path, empty = no plot
    std::vector<std::string> warnings;
    bool help = false;
    std::string help_text;
};

inline constexpr double default_fap_bytes = 64 * kibibyte;
inline constexpr double default_ft_bytes = 8 * mebibyte;

// Builds an experiment plan from the command line. A config file given with
// --config holds `key = value` lines using the long option names; options on the
// command line take precedence over the file.
inline CliOptions parse_cli(int argc, const char *const *argv)
{
    CLI::App app{"Monte Carlo sum-SE of a daisy-chain cell-free massive MIMO uplink with limited-memory APs",
                 "cfmimo_sim"};
    app.set_config("--config", "", "Read settings from a key = value file");

    std::vector<std::size_t> l_list{2, 4, 8, 16, 32, 64, 128};
    std::size_t total_antennas = 128;
    std::size_t users = 4;
    std::vector<std::string> schemes;
    std::string memory = "fap";
    std::vector<double> capacity_kb;
    std::vector<double> capacity_mb;
    std::size_t subcarriers = 1024;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    double power_dbm = 10.0;
    double noise_dbm = -85.0;
    double perimeter = 500.0;
    double inner_perimeter = 400.0;
    double height = 5.0;
    std::string alloc = "per-ap-load";
    double tau_factor = 1.0;
    std::string correlation = "independent";
    double rho = 0.0;
    std::size_t threads = 1;
    CliOptions opts;

    app.add_option("--l-list", l_list, "Numbers of APs to sweep, comma separated")->delimiter(',');
    app.add_option("--total-antennas", total_antennas, "Total antennas N*L");
    app.add_option("--users", users, "Number of users K")->check(CLI::PositiveNumber);
    app.add_option("--scheme", schemes, "Compression scheme (repeatable): vc, ec or none")
        ->check(CLI::IsMember({"vc", "ec", "none"}))
        ->delimiter(',');
    app.add_option("--memory", memory, "Memory model: fap, ft or inf")->check(CLI::IsMember({"fap", "ft", "inf"}));
    app.add_option("--capacity-kb", capacity_kb, "Memory capacity in KiB (C_AP for fap, C_T for ft)")
        ->delimiter(',');
    app.add_option("--capacity-mb", capacity_mb, "Memory capacity in MiB")->delimiter(',');
    app.add_option("--subcarriers", subcarriers, "Subcarriers F sharing the AP memory")->check(CLI::PositiveNumber);
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--power-dbm", power_dbm, "User transmit power in dBm");
    app.add_option("--noise-dbm", noise_dbm, "Noise power at the APs in dBm");
    app.add_option("--perimeter-m", perimeter, "Perimeter of the AP square in meters");
    app.add_option("--inner-perimeter-m", inner_perimeter, "Perimeter of the user square in meters");
    app.add_option("--height-m", height, "Vertical AP-user distance in meters");
    app.add_option("--alloc", alloc, "Per-vector budget rule")
        ->check(CLI::IsMember({"per-ap-load", "uniform-worst-case"}));
    app.add_option("--tau-factor", tau_factor, "Uplink fraction tau_u/tau_c");
    app.add_option("--correlation", correlation, "Spatial correlation model")
        ->check(CLI::IsMember({"independent", "exponential"}));
    app.add_option("--rho", rho, "Exponential correlation coefficient");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", opts.out, "CSV output file (default: stdout)");
    app.add_option("--plot", opts.plot, "SVG plot output file");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &)
    {
        opts.help = true;
        opts.help_text = app.help();
        return opts;
    }
    catch (const CLI::ParseError &e)
    {
        throw UsageError(e.what());
    }

    ExperimentPlan &plan = opts.plan;
    NetworkConfig &cfg = plan.base;
    cfg.total_antennas = total_antennas;
    cfg.K = users;
    cfg.p = dbm_to_mw(power_dbm);
    cfg.sigma2 = dbm_to_mw(noise_dbm);
    cfg.perimeter = perimeter;
    cfg.inner_perimeter = inner_perimeter;
    cfg.height = height;
    cfg.F = subcarriers;
    cfg.tau_factor = tau_factor;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.correlation = correlation == "exponential" ? CorrelationModel::exponential : CorrelationModel::independent;
    cfg.rho = rho;

    plan.l_sweep = l_list;
    plan.workers = threads;
    plan.schemes.clear();
    for (const auto &s : schemes)
    {
        const Scheme sc = *parse_scheme(s);
        if (std::find(plan.schemes.begin(), plan.schemes.end(), sc) == plan.schemes.end())
            plan.schemes.push_back(sc);
    }
    if (plan.schemes.empty())
        plan.schemes = {Scheme::vc, Scheme::ec};

    const MemoryKind kind = *parse_memory_kind(memory);
    const AllocationRule rule = *parse_allocation_rule(alloc);
    std::vector<double> capacities;
    for (double kb : capacity_kb)
        capacities.push_back(kb * kibibyte);
    for (double mb : capacity_mb)
        capacities.push_back(mb * mebibyte);

    plan.policies.clear();
    if (kind == MemoryKind::infinite)
    {
        if (!capacities.empty())
            opts.warnings.push_back("memory model 'inf' ignores the given capacity");
        plan.policies.push_back({MemoryKind::infinite, 0.0, rule});
    }
    else
    {
        if (capacities.empty())
            capacities.push_back(kind == MemoryKind::fap ? default_fap_bytes : default_ft_bytes);
        for (double c : capacities)
            plan.policies.push_back({kind, c, rule});
    }

    if (!opts.out.empty() && opts.out == opts.plot)
        throw UsageError("--out and --plot must name different files");
    try
    {
        if (l_list.empty())
            throw ConfigError("--l-list is empty");
        for (auto L : l_list)
            if (L == 0 || total_antennas % L != 0)
                throw ConfigError("L = " + std::to_string(L) + " does not divide --total-antennas " +
                                  std::to_string(total_antennas));
        plan.validate();
    }
    catch (const ConfigError &e)
    {
        throw UsageError(e.what());
    }
    return opts;
}

inline CliOptions parse_cli(const std::vector<std::string> &args)
{
    std::vector<const char *> argv{"cfmimo_sim"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return parse_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace cfmimo

#endif
