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

#include <cfmimo/cli.hpp>
#include <cfmimo/experiment.hpp>
#include <cfmimo/report.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

int main(int argc, char **argv)
{
    cfmimo::CliOptions opts;
    try
    {
        opts = cfmimo::parse_cli(argc, argv);
    }
    catch (const cfmimo::UsageError &e)
    {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
        return 2;
    }
    if (opts.help)
    {
        std::cout << opts.help_text;
        return 0;
    }
    for (const auto &w : opts.warnings)
        std::cerr << "warning: " << w << '\n';

    try
    {
        const auto records = cfmimo::run_experiment(opts.plan);
        if (opts.out.empty())
            cfmimo::write_csv(records, std::cout);
        else
            cfmimo::emit_csv(records, opts.out);
        if (!opts.plot.empty())
            cfmimo::emit_plot(records, opts.plot);

        // Summary on stderr so stdout stays clean CSV
        for (const auto &[key, pts] : cfmimo::curve_means(records))
        {
            std::cerr << cfmimo::curve_label(key) << ":";
            for (const auto &p : pts)
                std::fprintf(stderr, "  L=%zu %.4f", p.L, p.mean);
            std::cerr << '\n';
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
