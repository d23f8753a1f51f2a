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

#ifndef cfmimo_config_H
#define cfmimo_config_H

#include "memory_model.hpp"
#include "types.hpp"

#include <cstddef>
#include <cstdint>

namespace cfmimo
{

enum class CorrelationModel
{
    independent, // R_kl = beta_kl I_N
    exponential  // R_kl[i,j] = beta_kl rho^|i-j|
};

// Scalar parameters of one experiment. Powers are in milliwatt, lengths in meters.
struct NetworkConfig
{
    std::size_t L = 2;               // APs
    std::size_t N = 64;              // antennas per AP
    std::size_t K = 4;               // single-antenna users
    std::size_t total_antennas = 128; // N * L
    double p = 10.0;                 // transmit power, mW
    double sigma2 = dbm_to_mw(-85.0);
    double perimeter = 500.0;        // outer square perimeter D
    double inner_perimeter = 400.0;  // user square perimeter
    double height = 5.0;             // vertical AP-user offset
    std::size_t F = 1024;            // subcarriers sharing the AP memory
    double tau_factor = 1.0;         // tau_u / tau_c
    MemoryPolicy memory{};
    Scheme scheme = Scheme::vc;
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    CorrelationModel correlation = CorrelationModel::independent;
    double rho = 0.0; // only used by the exponential model

    // Returns a copy with the antennas redistributed over L APs
    NetworkConfig with_aps(std::size_t aps) const
    {
        if (aps == 0 || total_antennas % aps != 0)
            throw ConfigError("L = " + std::to_string(aps) + " does not divide the total number of antennas " +
                              std::to_string(total_antennas));
        NetworkConfig c = *this;
        c.L = aps;
        c.N = total_antennas / aps;
        return c;
    }

    void validate() const
    {
        if (L < 1)
            throw ConfigError("L must be at least 1");
        if (K < 1)
            throw ConfigError("K must be at least 1");
        if (N < 1 || N * L != total_antennas)
            throw ConfigError("N * L must equal the total number of antennas");
        if (!(p > 0.0))
            throw ConfigError("transmit power must be positive");
        if (!(sigma2 > 0.0))
            throw ConfigError("noise power must be positive");
        if (!(perimeter > 0.0))
            throw ConfigError("perimeter must be positive");
        if (!(inner_perimeter > 0.0) || !(inner_perimeter < perimeter))
            throw ConfigError("inner perimeter must lie in (0, perimeter)");
        if (!(height >= 0.0))
            throw ConfigError("height must be non-negative");
        if (!(tau_factor > 0.0 && tau_factor <= 1.0))
            throw ConfigError("tau factor must lie in (0, 1]");
        if (F < 1)
            throw ConfigError("number of subcarriers must be at least 1");
        if (correlation == CorrelationModel::exponential && !(rho >= 0.0 && rho <= 1.0))
            throw ConfigError("correlation coefficient must lie in [0, 1]");
        memory.validate();
    }
};

} // namespace cfmimo

#endif
