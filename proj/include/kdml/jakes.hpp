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

#include <cmath>
#include <numbers>

#include <kdml/errors.hpp>
#include <kdml/grid.hpp>

namespace kdml {

/// Sum-of-sinusoids Rayleigh fader (Jakes' model).
///
///   g(t)   = E0 / sqrt(2M + 1) * (g_I(t) + j g_Q(t))
///   g_I(t) = 2 sum_{m=1..M} cos(phi_m) cos(w_m t + theta)
///            + sqrt(2) cos(phi_T) cos(w_d t + theta)
///   g_Q(t) = 2 sum_{m=1..M} sin(phi_m) cos(w_m t + theta)
///            + sqrt(2) sin(phi_T) cos(w_d t + theta)
///
/// with M = (T/2 - 1)/2 low-frequency oscillators, w_m = w_d cos(2 pi m / T),
/// phi_m = pi m / (M + 1), and phi_T = 0. T is the notional number of arrival
/// rays and must satisfy T = 2 (mod 4) so that M is integral.
///
/// theta is an initial phase offset applied to every oscillator of this fader;
/// theta = 0 reproduces the textbook waveform exactly. In a multipath profile
/// each path gets its own theta (and its own Doppler draw), the standard knob
/// for decorrelating the tap processes.
struct JakesConfig {
    double e0 = 1.0;            ///< amplitude scale E0
    int t_oscillators = 34;     ///< T; T >= 6 and T = 2 (mod 4)
    double doppler_max = 2.0 * std::numbers::pi * 100.0; ///< w_d [rad/s]
    double phase_offset = 0.0;  ///< theta [rad]
};

inline void validate(const JakesConfig& c)
{
    if (!(c.e0 > 0.0))
        throw ConfigError("jakes: E0 must be positive");
    if (c.t_oscillators < 6 || c.t_oscillators % 4 != 2)
        throw ConfigError("jakes: T must be >= 6 with T = 2 (mod 4)");
    if (c.doppler_max < 0.0 || !std::isfinite(c.doppler_max))
        throw ConfigError("jakes: doppler_max must be finite and non-negative");
}

/// Number of low-frequency oscillators M = (T/2 - 1)/2.
inline int jakes_oscillator_count(const JakesConfig& c)
{
    return (c.t_oscillators / 2 - 1) / 2;
}

/// Complex fading gain at time t [s].
inline cplx jakes_gain(const JakesConfig& c, double t)
{
    validate(c);
    const int m_cnt = jakes_oscillator_count(c);

    // Maximum-Doppler oscillator: phi_T = 0, so it feeds only the in-phase arm.
    double g_i = std::numbers::sqrt2 * std::cos(c.doppler_max * t + c.phase_offset);
    double g_q = 0.0;

    for (int m = 1; m <= m_cnt; ++m)
    {
        const double phi_m = std::numbers::pi * m / (m_cnt + 1);
        const double w_m =
            c.doppler_max * std::cos(2.0 * std::numbers::pi * m / c.t_oscillators);
        const double osc = std::cos(w_m * t + c.phase_offset);
        g_i += 2.0 * std::cos(phi_m) * osc;
        g_q += 2.0 * std::sin(phi_m) * osc;
    }

    const double scale = c.e0 / std::sqrt(2.0 * m_cnt + 1.0);
    return {scale * g_i, scale * g_q};
}

} // namespace kdml
