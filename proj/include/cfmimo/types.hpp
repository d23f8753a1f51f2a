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

#ifndef cfmimo_types_H
#define cfmimo_types_H

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfmimo
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Invalid experiment or function parameters (bad L, non-positive power, ...)
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical precondition violated at runtime (non-PSD input, lost Hermitian symmetry, ...)
class NumericError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Scheme
{
    none, // no compression, Z = sigma^2 I
    vc,   // vector-wise compression
    ec    // element-wise compression
};

inline std::string_view to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::none:
        return "none";
    case Scheme::vc:
        return "vc";
    case Scheme::ec:
        return "ec";
    }
    return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view s)
{
    if (s == "none")
        return Scheme::none;
    if (s == "vc")
        return Scheme::vc;
    if (s == "ec")
        return Scheme::ec;
    return std::nullopt;
}

// Bit budget for one stored received vector. An empty optional means no memory limit.
using Bits = std::optional<double>;
inline constexpr Bits unlimited_bits = std::nullopt;

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

} // namespace cfmimo

#endif
