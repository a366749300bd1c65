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
//
// Sliding-window datasets over per-subcarrier rough-estimate tracks. A window
// takes n_steps consecutive symbols of one subcarrier as input and the next
// `horizon` symbols of the same subcarrier as target, both as re/im pairs.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <kdml/grid.hpp>
#include <kdml/tensor.hpp>

namespace kdml {

/// Where a window's prediction lands, for scoring against ground truth.
/// `symbol` is the first predicted symbol (window start + n_steps).
struct WindowPosition {
    std::uint32_t frame = 0;
    std::uint32_t subcarrier = 0;
    std::uint32_t symbol = 0;
};

struct WindowedDataset {
    std::size_t n_steps = 0;
    std::size_t horizon = 0;
    Mat x; ///< n_windows x (n_steps * 2), step-major re/im pairs
    Mat y; ///< n_windows x (horizon * 2)
    std::vector<WindowPosition> pos;

    std::size_t size() const { return x.rows; }
};

/// Number of windows a single frame of `rows` symbols yields per subcarrier.
inline std::size_t windows_per_track(std::size_t rows, std::size_t n_steps, std::size_t horizon)
{
    return (rows >= n_steps + horizon) ? rows - n_steps - horizon + 1 : 0;
}

/// Builds a dataset from one rough-estimate grid per frame (rows = symbols,
/// cols = subcarriers). Windows are enumerated frame-major, then subcarrier,
/// then start symbol; if more than `max_windows` are available, an evenly
/// strided subset is taken to preserve frame/subcarrier/time diversity.
/// `max_windows == 0` keeps everything.
inline WindowedDataset build_dataset(const std::vector<const CGrid*>& frames,
                                     std::size_t n_steps, std::size_t horizon,
                                     std::size_t max_windows = 0)
{
    if (n_steps == 0 || horizon == 0)
        throw std::invalid_argument("build_dataset: n_steps and horizon must be positive");
    if (frames.empty())
        throw std::invalid_argument("build_dataset: no frames");

    std::size_t avail = 0;
    for (const CGrid* g : frames)
    {
        if (g == nullptr || g->size() == 0)
            throw std::invalid_argument("build_dataset: null or empty frame grid");
        avail += g->cols * windows_per_track(g->rows, n_steps, horizon);
    }
    if (avail == 0)
        throw std::invalid_argument("build_dataset: frames are too short for the window shape");

    const std::size_t wanted = (max_windows == 0 || max_windows > avail) ? avail : max_windows;

    WindowedDataset ds;
    ds.n_steps = n_steps;
    ds.horizon = horizon;
    ds.x = Mat(wanted, n_steps * 2);
    ds.y = Mat(wanted, horizon * 2);
    ds.pos.reserve(wanted);

    std::size_t run = 0;   // enumeration index
    std::size_t taken = 0; // rows emitted
    for (std::size_t f = 0; f < frames.size(); ++f)
    {
        const CGrid& g = *frames[f];
        const std::size_t per_track = windows_per_track(g.rows, n_steps, horizon);
        for (std::size_t k = 0; k < g.cols; ++k)
            for (std::size_t t0 = 0; t0 < per_track; ++t0, ++run)
            {
                if (taken >= wanted || run != taken * avail / wanted)
                    continue;
                double* xr = ds.x.row(taken);
                for (std::size_t t = 0; t < n_steps; ++t)
                {
                    const cplx v = g(t0 + t, k);
                    xr[2 * t] = v.real();
                    xr[2 * t + 1] = v.imag();
                }
                double* yr = ds.y.row(taken);
                for (std::size_t s = 0; s < horizon; ++s)
                {
                    const cplx v = g(t0 + n_steps + s, k);
                    yr[2 * s] = v.real();
                    yr[2 * s + 1] = v.imag();
                }
                ds.pos.push_back({static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(k),
                                  static_cast<std::uint32_t>(t0 + n_steps)});
                ++taken;
            }
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Input/target normalization
// ---------------------------------------------------------------------------

/// Affine re/im normalization fitted on a training set: subtract the
/// component means, then divide by the RMS magnitude of the centered values.
struct Normalization {
    double mu_re = 0.0;
    double mu_im = 0.0;
    double scale = 1.0;
};

/// Fits on a matrix of re/im pairs (any width with an even column count).
inline Normalization fit_normalization(const Mat& m)
{
    detail::require(m.size() > 0 && m.cols % 2 == 0, "fit_normalization: need re/im pairs");
    Normalization nz;
    const std::size_t pairs = m.size() / 2;
    double sre = 0.0, sim = 0.0;
    for (std::size_t idx = 0; idx < m.size(); idx += 2)
    {
        sre += m.a[idx];
        sim += m.a[idx + 1];
    }
    nz.mu_re = sre / static_cast<double>(pairs);
    nz.mu_im = sim / static_cast<double>(pairs);
    double power = 0.0;
    for (std::size_t idx = 0; idx < m.size(); idx += 2)
    {
        const double re = m.a[idx] - nz.mu_re;
        const double im = m.a[idx + 1] - nz.mu_im;
        power += re * re + im * im;
    }
    nz.scale = std::sqrt(power / static_cast<double>(pairs));
    if (!(nz.scale > 0.0) || !std::isfinite(nz.scale))
        nz.scale = 1.0;
    return nz;
}

inline void normalize_pairs(Mat& m, const Normalization& nz)
{
    detail::require(m.cols % 2 == 0, "normalize_pairs: need re/im pairs");
    const double inv = 1.0 / nz.scale;
    for (std::size_t idx = 0; idx < m.size(); idx += 2)
    {
        m.a[idx] = (m.a[idx] - nz.mu_re) * inv;
        m.a[idx + 1] = (m.a[idx + 1] - nz.mu_im) * inv;
    }
}

inline void denormalize_pairs(Mat& m, const Normalization& nz)
{
    detail::require(m.cols % 2 == 0, "denormalize_pairs: need re/im pairs");
    for (std::size_t idx = 0; idx < m.size(); idx += 2)
    {
        m.a[idx] = m.a[idx] * nz.scale + nz.mu_re;
        m.a[idx + 1] = m.a[idx + 1] * nz.scale + nz.mu_im;
    }
}

/// Copies src rows order[lo..hi) into out (resizing as needed).
inline void gather_rows(const Mat& src, const std::vector<std::size_t>& order, std::size_t lo,
                        std::size_t hi, Mat& out)
{
    detail::require(lo <= hi && hi <= order.size(), "gather_rows: bad range");
    const std::size_t n = hi - lo;
    if (out.rows != n || out.cols != src.cols)
        out = Mat(n, src.cols);
    for (std::size_t r = 0; r < n; ++r)
    {
        const std::size_t s = order[lo + r];
        detail::require(s < src.rows, "gather_rows: index out of range");
        const double* from = src.row(s);
        double* to = out.row(r);
        for (std::size_t j = 0; j < src.cols; ++j)
            to[j] = from[j];
    }
}

} // namespace kdml
