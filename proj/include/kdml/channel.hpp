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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <kdml/errors.hpp>
#include <kdml/fft.hpp>
#include <kdml/grid.hpp>
#include <kdml/jakes.hpp>
#include <kdml/ofdm.hpp>
#include <kdml/rng.hpp>

namespace kdml {

/// One propagation path of a tapped delay line: average power P_i, absolute
/// delay tau_i, and an independently parameterized Jakes fader.
struct PathSpec {
    double power = 1.0;   ///< P_i, sum over paths must be 1
    double delay_s = 0.0; ///< tau_i [s]
    JakesConfig fading;
};

/// Tapped-delay-line channel: h(t) = sum_i sqrt(P_i) g_i(t) delta(t - tau_i).
struct MultipathProfile {
    std::vector<PathSpec> paths;
};

/// Profile invariants, checked against the OFDM config the profile will be
/// used with: unit total power, strictly increasing delays, and every delay
/// tap inside the cyclic prefix (no inter-symbol interference).
inline void validate(const MultipathProfile& p, const OfdmConfig& cfg)
{
    validate(cfg);
    if (p.paths.empty())
        throw ConfigError("channel: profile must contain at least one path");

    double total = 0.0;
    double prev_delay = -1.0;
    for (const PathSpec& path : p.paths)
    {
        if (!(path.power >= 0.0))
            throw ConfigError("channel: path powers must be non-negative");
        total += path.power;
        if (!(path.delay_s > prev_delay))
            throw ConfigError("channel: path delays must be strictly increasing");
        prev_delay = path.delay_s;
        validate(path.fading);

        const double tap = std::round(path.delay_s * cfg.sample_rate);
        if (tap < 0.0 || tap >= static_cast<double>(cfg.cp_len))
            throw ConfigError("channel: path delay must map to a tap inside the cyclic prefix");
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("channel: path powers must sum to 1 (power normalization violated)");
}

/// Integer sample tap of each path delay.
inline std::vector<std::size_t> delay_taps(const MultipathProfile& p, const OfdmConfig& cfg)
{
    std::vector<std::size_t> taps(p.paths.size());
    for (std::size_t i = 0; i < p.paths.size(); ++i)
        taps[i] = static_cast<std::size_t>(std::llround(p.paths[i].delay_s * cfg.sample_rate));
    return taps;
}

/// A channel sampled once per OFDM symbol (block fading within a symbol).
struct ChannelRealization {
    CGrid path_gains;    ///< [symbol x path], sqrt(P_i) g_i(t_j)
    CGrid freq_response; ///< [symbol x subcarrier]
};

/// Sample the tapped delay line at the given symbol times. Each symbol's
/// frequency-response row is the fft_size-point DFT of the sparse impulse
/// response placed on integer delay taps.
inline ChannelRealization realize_channel(const MultipathProfile& p, const OfdmConfig& cfg,
                                          const std::vector<double>& times)
{
    validate(p, cfg);
    if (times.empty())
        throw std::invalid_argument("realize_channel: empty symbol time vector");

    const std::vector<std::size_t> taps = delay_taps(p, cfg);
    const std::size_t n_paths = p.paths.size();

    ChannelRealization out;
    out.path_gains = CGrid(times.size(), n_paths);
    out.freq_response = CGrid(times.size(), cfg.fft_size);

    std::vector<cplx> impulse(cfg.fft_size);
    for (std::size_t j = 0; j < times.size(); ++j)
    {
        std::fill(impulse.begin(), impulse.end(), cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n_paths; ++i)
        {
            const cplx g = std::sqrt(p.paths[i].power) * jakes_gain(p.paths[i].fading, times[j]);
            out.path_gains(j, i) = g;
            impulse[taps[i]] += g;
        }
        std::vector<cplx> row = dft(impulse);
        std::copy(row.begin(), row.end(), out.freq_response.data.begin() + static_cast<std::ptrdiff_t>(j * cfg.fft_size));
    }
    return out;
}

/// Randomized profile generator used by the experiment pipeline.
struct ChannelDrawOptions {
    std::size_t n_paths = 3;
    int t_oscillators = 34;
    double fd_min_hz = 5.0;     ///< per-path max Doppler draw range [Hz]
    double fd_max_hz = 300.0;
    double power_decay = 0.5;   ///< P_{i+1} / P_i before normalization
    std::size_t max_delay_taps = 8; ///< delays drawn from distinct taps in [0, max]
    bool phase_diversity = true;    ///< per-path uniform theta in [0, 2 pi)
};

inline void validate(const ChannelDrawOptions& o, const OfdmConfig& cfg)
{
    validate(cfg);
    if (o.n_paths == 0)
        throw ConfigError("channel: n_paths must be positive");
    if (o.max_delay_taps + 1 < o.n_paths)
        throw ConfigError("channel: not enough distinct delay taps for the requested path count");
    if (o.max_delay_taps >= cfg.cp_len)
        throw ConfigError("channel: max_delay_taps must be inside the cyclic prefix");
    if (!(o.fd_min_hz >= 0.0) || !(o.fd_max_hz >= o.fd_min_hz))
        throw ConfigError("channel: Doppler draw range must satisfy 0 <= fd_min <= fd_max");
    if (!(o.power_decay > 0.0))
        throw ConfigError("channel: power_decay must be positive");
}

/// Draw a random multipath profile: distinct integer delay taps uniform in
/// [0, max_delay_taps], per-path max Doppler uniform in [fd_min, fd_max] Hz,
/// exponentially decaying powers renormalized to sum 1, and (optionally) a
/// uniform initial phase per path.
inline MultipathProfile draw_multipath_profile(const ChannelDrawOptions& o, const OfdmConfig& cfg,
                                               Rng& rng)
{
    validate(o, cfg);

    std::vector<std::size_t> taps;
    while (taps.size() < o.n_paths)
    {
        const std::size_t cand = rng.below(o.max_delay_taps + 1);
        if (std::find(taps.begin(), taps.end(), cand) == taps.end())
            taps.push_back(cand);
    }
    std::sort(taps.begin(), taps.end());

    std::vector<double> powers(o.n_paths);
    double w = 1.0, total = 0.0;
    for (std::size_t i = 0; i < o.n_paths; ++i, w *= o.power_decay)
    {
        powers[i] = w;
        total += w;
    }
    for (double& v : powers)
        v /= total;

    MultipathProfile profile;
    profile.paths.resize(o.n_paths);
    for (std::size_t i = 0; i < o.n_paths; ++i)
    {
        PathSpec& path = profile.paths[i];
        path.power = powers[i];
        path.delay_s = static_cast<double>(taps[i]) / cfg.sample_rate;
        path.fading.e0 = 1.0;
        path.fading.t_oscillators = o.t_oscillators;
        path.fading.doppler_max = 2.0 * std::numbers::pi * rng.uniform(o.fd_min_hz, o.fd_max_hz);
        path.fading.phase_offset = o.phase_diversity ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
    }
    validate(profile, cfg);
    return profile;
}

} // namespace kdml
