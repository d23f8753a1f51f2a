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

#ifndef cfmimo_cfmimo_H
#define cfmimo_cfmimo_H

#include "compression.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "geometry_channel.hpp"
#include "linalg.hpp"
#include "memory_model.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sequential_estimator.hpp"
#include "types.hpp"

#endif
