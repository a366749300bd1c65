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
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <kdml/grid.hpp>

namespace kdml {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 decimation-in-time FFT.
///
/// sign = -1 computes X[k] = sum_n x[n] e^{-j 2 pi k n / N} (forward kernel),
/// sign = +1 the conjugate kernel. No normalization is applied; callers pick
/// the convention they need. Twiddles come from std::polar per stage, which
/// keeps the round-trip error near machine precision.
inline void fft_radix2(std::vector<cplx>& a, int sign)
{
    const std::size_t n = a.size();
    if (!is_pow2(n))
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("fft_radix2: sign must be +1 or -1");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len >> 1;
        for (std::size_t m = 0; m < half; ++m)
        {
            const cplx w = std::polar(1.0, ang * static_cast<double>(m));
            for (std::size_t i = m; i < n; i += len)
            {
                const cplx u = a[i];
                const cplx v = a[i + half] * w;
                a[i] = u + v;
                a[i + half] = u - v;
            }
        }
    }
}

/// Unitary FFT pair: both directions carry a 1/sqrt(N) factor, so energy is
/// preserved (Parseval) and modulate/demodulate are exact inverses.
inline std::vector<cplx> fft_unitary(std::vector<cplx> x)
{
    fft_radix2(x, -1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (cplx& v : x)
        v *= s;
    return x;
}

inline std::vector<cplx> ifft_unitary(std::vector<cplx> x)
{
    fft_radix2(x, +1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (cplx& v : x)
        v *= s;
    return x;
}

/// Non-unitary forward DFT (engineering convention, no scaling). Used for
/// channel frequency responses, where a single tap at delay zero must map to
/// a flat response of exactly the tap gain.
inline std::vector<cplx> dft(std::vector<cplx> x)
{
    fft_radix2(x, -1);
    return x;
}

} // namespace kdml
