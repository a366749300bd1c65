// SPDX-License-Identifier: Apache-2.0
//
// kdml-chanest: OFDM link simulation with knowledge-driven channel estimation
// Copyright (C) 2026 kdml-chanest contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use
// this file except in compliance with the License. You may obtain a copy of the
// License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed
// under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR
// CONDITIONS OF ANY KIND, either express or implied. See the License for the
// specific language governing permissions and limitations under the License.
// ------------------------------------------------------------------------------

#pragma once

#include <cstdint>

namespace kdml {

/// Multiply count of one LSTM inference pass over a window, as a function of
/// steps n, input width i, hidden width m and readout width l. Each of the
/// four gates costs i*m + m*m multiplies for [X, H] W plus m for the
/// elementwise cell/hidden products attributed to it; the per-step readout
/// adds m*l:
///
///   flops(n, i, m, l) = n * 4 * (i*m + m*m + m) + n * m * l
inline constexpr std::uint64_t lstm_flops(std::uint64_t n, std::uint64_t i, std::uint64_t m,
                                          std::uint64_t l)
{
    return n * 4 * (i * m + m * m + m) + n * m * l;
}

static_assert(lstm_flops(1, 2, 128, 2) == 67328, "reference operating point");
static_assert(lstm_flops(1, 1, 1, 1) == 13, "minimal cell");

} // namespace kdml
