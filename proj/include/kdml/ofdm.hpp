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
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <kdml/errors.hpp>
#include <kdml/fft.hpp>
#include <kdml/grid.hpp>
#include <kdml/rng.hpp>

namespace kdml {

/// Link parameters of the simulated OFDM system.
///
/// Pilots are comb-type in frequency: every OFDM symbol carries pilots on the
/// subcarriers whose index is divisible by `nps` (so subcarrier 0 is always a
/// pilot and the pilot count is fft_size / nps).
struct OfdmConfig {
    std::size_t fft_size = 1024;
    double subcarrier_spacing = 15e3;  ///< [Hz]
    double sample_rate = 15.36e6;      ///< [samples/s], must equal fft_size * spacing
    std::size_t cp_len = 128;          ///< cyclic prefix [samples]
    std::size_t nps = 2;               ///< pilot spacing in subcarriers
};

inline void validate(const OfdmConfig& c)
{
    if (!is_pow2(c.fft_size) || c.fft_size < 2)
        throw ConfigError("ofdm: fft_size must be a power of two >= 2");
    if (!(c.subcarrier_spacing > 0.0))
        throw ConfigError("ofdm: subcarrier_spacing must be positive");
    const double expected = static_cast<double>(c.fft_size) * c.subcarrier_spacing;
    if (!(std::abs(c.sample_rate - expected) <= 1e-6 * expected))
        throw ConfigError("ofdm: sample_rate must equal fft_size * subcarrier_spacing");
    if (c.cp_len == 0 || c.cp_len >= c.fft_size)
        throw ConfigError("ofdm: cp_len must lie in (0, fft_size)");
    if (c.nps == 0 || c.fft_size % c.nps != 0)
        throw ConfigError("ofdm: nps must divide fft_size");
}

/// Duration of one OFDM symbol including its cyclic prefix [s].
inline double symbol_duration(const OfdmConfig& c)
{
    return static_cast<double>(c.fft_size + c.cp_len) / c.sample_rate;
}

/// Sampling instants of `count` consecutive symbols starting at t0.
inline std::vector<double> symbol_times(const OfdmConfig& c, std::size_t count, double t0 = 0.0)
{
    std::vector<double> t(count);
    const double ts = symbol_duration(c);
    for (std::size_t j = 0; j < count; ++j)
        t[j] = t0 + ts * static_cast<double>(j);
    return t;
}

// --------------------------------------------------------------------------
// QPSK mapping (Gray-coded, unit energy)
// --------------------------------------------------------------------------

/// 00 -> (+1+j)/sqrt(2), 01 -> (+1-j)/sqrt(2), 10 -> (-1+j)/sqrt(2),
/// 11 -> (-1-j)/sqrt(2). First bit selects the real sign, second the
/// imaginary sign; adjacent constellation points differ in one bit.
inline cplx qpsk_point(int b0, int b1)
{
    constexpr double a = 0.7071067811865475244; // 1/sqrt(2)
    return {b0 ? -a : a, b1 ? -a : a};
}

/// Map a bit vector (even length) onto QPSK symbols, two bits per symbol.
inline std::vector<cplx> qpsk_modulate(const std::vector<std::uint8_t>& bits)
{
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_modulate: odd bit count");
    std::vector<cplx> out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = qpsk_point(bits[2 * i] != 0, bits[2 * i + 1] != 0);
    return out;
}

/// Hard decision per symbol. Boundary values (component exactly zero) map to
/// bit 0, the positive half-plane: the decision is `component < 0`.
inline std::vector<std::uint8_t> qpsk_demodulate(const std::vector<cplx>& symbols)
{
    std::vector<std::uint8_t> bits(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i)
    {
        bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

// --------------------------------------------------------------------------
// Time-domain modem
// --------------------------------------------------------------------------

/// Frequency-domain symbol row -> time-domain samples with cyclic prefix.
/// Uses the unitary IFFT, so tx power equals the constellation power.
inline std::vector<cplx> ofdm_modulate(const OfdmConfig& c, const std::vector<cplx>& freq_row)
{
    validate(c);
    if (freq_row.size() != c.fft_size)
        throw std::invalid_argument("ofdm_modulate: row length != fft_size");
    std::vector<cplx> body = ifft_unitary(freq_row);
    std::vector<cplx> out(c.cp_len + c.fft_size);
    for (std::size_t i = 0; i < c.cp_len; ++i)
        out[i] = body[c.fft_size - c.cp_len + i];
    for (std::size_t i = 0; i < c.fft_size; ++i)
        out[c.cp_len + i] = body[i];
    return out;
}

/// Time-domain samples (with cyclic prefix) -> frequency-domain symbol row.
inline std::vector<cplx> ofdm_demodulate(const OfdmConfig& c, const std::vector<cplx>& samples)
{
    validate(c);
    if (samples.size() != c.cp_len + c.fft_size)
        throw std::invalid_argument("ofdm_demodulate: sample count != cp_len + fft_size");
    std::vector<cplx> body(samples.begin() + static_cast<std::ptrdiff_t>(c.cp_len), samples.end());
    return fft_unitary(std::move(body));
}

// --------------------------------------------------------------------------
// Frame grid
// --------------------------------------------------------------------------

/// Seed of the fixed pseudo-random pilot sequence. The sequence is part of
/// the link definition: transmitter and receiver both derive it from this
/// constant, never from experiment seeds.
inline constexpr std::uint64_t kPilotSeed = 0x70696c6f74ull;

/// Known pilot value for each pilot subcarrier (index k = 0, nps, 2*nps, ...).
/// Pilots are QPSK points, constant across OFDM symbols.
inline std::vector<cplx> pilot_sequence(const OfdmConfig& c)
{
    validate(c);
    Rng rng(kPilotSeed);
    std::vector<cplx> seq(c.fft_size / c.nps);
    for (cplx& v : seq)
    {
        const int b0 = static_cast<int>(rng.below(2));
        const int b1 = static_cast<int>(rng.below(2));
        v = qpsk_point(b0, b1);
    }
    return seq;
}

/// One simulated frame in the frequency domain, plus the simulation metadata
/// a receiver is entitled to (pilot layout, SNR operating point, the noise
/// variance actually injected).
struct FrameGrid {
    OfdmConfig cfg;
    CGrid tx;                             ///< transmitted constellation points
    CGrid rx;                             ///< received points (channel + AWGN)
    std::vector<std::uint8_t> pilot_mask; ///< [symbol * fft_size + subcarrier]
    double snr_db = std::numeric_limits<double>::infinity();
    double noise_var = 0.0;               ///< E|w|^2 injected by apply_channel

    bool is_pilot(std::size_t sym, std::size_t k) const
    {
        return pilot_mask[sym * cfg.fft_size + k] != 0;
    }
};

/// Build the transmit side of a frame: pilots on the comb positions, random
/// QPSK data elsewhere (two bits per data subcarrier drawn from `data_rng`).
inline FrameGrid make_frame(const OfdmConfig& c, std::size_t n_symbols, Rng& data_rng)
{
    validate(c);
    if (n_symbols == 0)
        throw std::invalid_argument("make_frame: n_symbols must be positive");

    FrameGrid f;
    f.cfg = c;
    f.tx = CGrid(n_symbols, c.fft_size);
    f.rx = CGrid(n_symbols, c.fft_size);
    f.pilot_mask.assign(n_symbols * c.fft_size, 0);

    const std::vector<cplx> pilots = pilot_sequence(c);
    for (std::size_t j = 0; j < n_symbols; ++j)
    {
        for (std::size_t k = 0; k < c.fft_size; ++k)
        {
            if (k % c.nps == 0)
            {
                f.tx(j, k) = pilots[k / c.nps];
                f.pilot_mask[j * c.fft_size + k] = 1;
            }
            else
            {
                const int b0 = static_cast<int>(data_rng.below(2));
                const int b1 = static_cast<int>(data_rng.below(2));
                f.tx(j, k) = qpsk_point(b0, b1);
            }
        }
    }
    return f;
}

/// Per-subcarrier link model: rx = h .* tx + w.
///
/// SNR is defined against the received signal power E|h x|^2 measured over
/// this grid, so sigma_w^2 = E|h x|^2 * 10^(-snr_db/10). Noise is drawn
/// row-major with variance sigma_w^2/2 per component; snr_db = +inf disables
/// the noise entirely (rx is exactly h .* tx). The injected variance is
/// reported through noise_var_out.
inline CGrid apply_channel(const CGrid& tx, const CGrid& freq_response, double snr_db, Rng& noise_rng,
                           double* noise_var_out = nullptr)
{
    if (!tx.same_shape(freq_response))
        throw std::invalid_argument("apply_channel: tx and channel dimensions differ");
    if (std::isnan(snr_db))
        throw std::invalid_argument("apply_channel: snr_db is NaN");

    CGrid rx(tx.rows, tx.cols);
    double p_rx = 0.0;
    for (std::size_t i = 0; i < tx.size(); ++i)
    {
        rx.data[i] = freq_response.data[i] * tx.data[i];
        p_rx += std::norm(rx.data[i]);
    }
    p_rx /= static_cast<double>(tx.size());

    double sigma2 = 0.0;
    if (!std::isinf(snr_db))
    {
        sigma2 = p_rx * std::pow(10.0, -snr_db / 10.0);
        for (cplx& v : rx.data)
            v += noise_rng.cnormal(sigma2);
    }
    if (noise_var_out != nullptr)
        *noise_var_out = sigma2;
    return rx;
}

} // namespace kdml
