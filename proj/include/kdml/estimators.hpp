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
#include <string>
#include <vector>

#include <kdml/errors.hpp>
#include <kdml/grid.hpp>
#include <kdml/linalg.hpp>
#include <kdml/ofdm.hpp>

namespace kdml {

enum class EstimatorSource { ls, mmse, true_csi, kdml, mlp };

inline const char* to_string(EstimatorSource s)
{
    switch (s)
    {
    case EstimatorSource::ls: return "ls";
    case EstimatorSource::mmse: return "mmse-sim";
    case EstimatorSource::true_csi: return "true-csi";
    case EstimatorSource::kdml: return "kdml";
    case EstimatorSource::mlp: return "mlp";
    }
    return "?";
}

/// Channel estimates on the symbol-by-subcarrier grid. Pilot-only estimators
/// leave non-pilot entries at zero until interpolate_linear() fills them.
struct EstimateSeries {
    CGrid estimates;
    EstimatorSource source = EstimatorSource::ls;
};

/// Pilot subcarrier indices (k = 0, nps, 2 nps, ...).
inline std::vector<std::size_t> pilot_subcarriers(const OfdmConfig& c)
{
    validate(c);
    std::vector<std::size_t> idx(c.fft_size / c.nps);
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i * c.nps;
    return idx;
}

/// Least-squares estimate h = y / x at every pilot position.
inline EstimateSeries ls_estimate(const FrameGrid& frame)
{
    validate(frame.cfg);
    EstimateSeries out;
    out.source = EstimatorSource::ls;
    out.estimates = CGrid(frame.rx.rows, frame.rx.cols);

    for (std::size_t j = 0; j < frame.rx.rows; ++j)
        for (std::size_t k = 0; k < frame.rx.cols; k += frame.cfg.nps)
        {
            const cplx x = frame.tx(j, k);
            if (x == cplx{0.0, 0.0})
                throw std::invalid_argument("ls_estimate: zero pilot symbol at subcarrier " +
                                            std::to_string(k));
            out.estimates(j, k) = frame.rx(j, k) / x;
        }
    return out;
}

/// Sample autocorrelation R = (1/W) sum_j v_j v_j^H of the pilot-position LS
/// estimates over the trailing `window` symbols (all symbols when the series
/// is shorter). R is Hermitian positive semidefinite by construction.
inline CMat estimate_autocorrelation(const EstimateSeries& ls, const OfdmConfig& cfg,
                                     std::size_t window)
{
    if (window == 0)
        throw std::invalid_argument("estimate_autocorrelation: window must be positive");
    const std::vector<std::size_t> pilots = pilot_subcarriers(cfg);
    if (ls.estimates.cols != cfg.fft_size || ls.estimates.rows == 0)
        throw std::invalid_argument("estimate_autocorrelation: series does not match config");

    const std::size_t rows = ls.estimates.rows;
    const std::size_t w = std::min(window, rows);
    const std::size_t first = rows - w;
    const std::size_t p = pilots.size();

    CMat r(p);
    std::vector<cplx> v(p);
    for (std::size_t j = first; j < rows; ++j)
    {
        for (std::size_t i = 0; i < p; ++i)
            v[i] = ls.estimates(j, pilots[i]);
        for (std::size_t a = 0; a < p; ++a)
        {
            const cplx va = v[a];
            cplx* row = r.a.data() + a * p;
            for (std::size_t b = 0; b < p; ++b)
                row[b] += va * std::conj(v[b]);
        }
    }
    const double inv_w = 1.0 / static_cast<double>(w);
    for (cplx& x : r.a)
        x *= inv_w;
    return r;
}

/// Inputs of the linear MMSE filter h_mmse = R (R + ratio I)^{-1} h_ls applied
/// per symbol over the pilot subcarriers. `noise_ratio` is sigma_w^2/sigma_x^2;
/// `ridge_eps` is an additional Hermitian ridge added before the solve.
struct MmseContext {
    CMat r_hh;
    double noise_ratio = 0.0;
    double ridge_eps = 0.0;
};

/// Default ridge: 1e-6 * trace(R)/dim, enough to keep the sample covariance
/// factorizable without disturbing the filter.
inline double default_ridge(const CMat& r)
{
    double tr = 0.0;
    for (std::size_t i = 0; i < r.n; ++i)
        tr += r(i, i).real();
    return 1e-6 * tr / static_cast<double>(r.n);
}

/// Build the context from a pilot LS series: sample autocorrelation over the
/// trailing window plus the default ridge.
inline MmseContext make_mmse_context(const EstimateSeries& ls, const OfdmConfig& cfg,
                                     std::size_t window, double noise_ratio)
{
    MmseContext ctx;
    ctx.r_hh = estimate_autocorrelation(ls, cfg, window);
    ctx.noise_ratio = noise_ratio;
    ctx.ridge_eps = default_ridge(ctx.r_hh);
    return ctx;
}

/// Apply the per-symbol MMSE filter to a pilot LS series. Because R and
/// (R + c I)^{-1} share an eigenbasis they commute, so the filter is applied
/// as solve(R + c I, R v), one Cholesky factorization per context.
/// Throws NumericalError when the regularized system is not positive
/// definite; callers are expected to fall back to the LS estimates.
inline EstimateSeries mmse_estimate(const EstimateSeries& ls, const OfdmConfig& cfg,
                                    const MmseContext& ctx)
{
    const std::vector<std::size_t> pilots = pilot_subcarriers(cfg);
    if (ctx.r_hh.n != pilots.size())
        throw std::invalid_argument("mmse_estimate: context dimension != pilot count");
    if (!(ctx.noise_ratio >= 0.0) || !std::isfinite(ctx.noise_ratio))
        throw std::invalid_argument("mmse_estimate: noise_ratio must be finite and >= 0");
    if (ctx.ridge_eps < 0.0)
        throw std::invalid_argument("mmse_estimate: ridge_eps must be >= 0");

    const std::size_t p = pilots.size();
    CMat m = ctx.r_hh;
    const double c = ctx.noise_ratio + ctx.ridge_eps;
    for (std::size_t i = 0; i < p; ++i)
        m(i, i) += c;

    CMat l;
    if (!cholesky(m, l))
        throw NumericalError("mmse_estimate: singular system (R + ratio I not positive definite)");

    EstimateSeries out;
    out.source = EstimatorSource::mmse;
    out.estimates = CGrid(ls.estimates.rows, ls.estimates.cols);

    std::vector<cplx> v(p);
    for (std::size_t j = 0; j < ls.estimates.rows; ++j)
    {
        for (std::size_t i = 0; i < p; ++i)
            v[i] = ls.estimates(j, pilots[i]);
        const std::vector<cplx> z = cholesky_solve(l, matvec(ctx.r_hh, v));
        for (std::size_t i = 0; i < p; ++i)
            out.estimates(j, pilots[i]) = z[i];
    }
    return out;
}

/// Linear interpolation across subcarriers between consecutive pilots; indices
/// above the last pilot hold its value (flat extrapolation). nps = 1 returns
/// the input unchanged.
inline EstimateSeries interpolate_linear(const EstimateSeries& pilots_only, const OfdmConfig& cfg)
{
    validate(cfg);
    if (pilots_only.estimates.cols != cfg.fft_size)
        throw std::invalid_argument("interpolate_linear: series does not match config");

    EstimateSeries out = pilots_only;
    if (cfg.nps == 1)
        return out;

    const std::size_t n = cfg.fft_size;
    const std::size_t last_pilot = n - cfg.nps;
    for (std::size_t j = 0; j < out.estimates.rows; ++j)
    {
        for (std::size_t k0 = 0; k0 < last_pilot; k0 += cfg.nps)
        {
            const cplx a = out.estimates(j, k0);
            const cplx b = out.estimates(j, k0 + cfg.nps);
            for (std::size_t d = 1; d < cfg.nps; ++d)
            {
                const double frac = static_cast<double>(d) / static_cast<double>(cfg.nps);
                out.estimates(j, k0 + d) = a + (b - a) * frac;
            }
        }
        const cplx tail = out.estimates(j, last_pilot);
        for (std::size_t k = last_pilot + 1; k < n; ++k)
            out.estimates(j, k) = tail;
    }
    return out;
}

/// Mean squared error (1/|grid|) sum |a - b|^2.
inline double mse(const CGrid& a, const CGrid& b)
{
    if (!a.same_shape(b) || a.size() == 0)
        throw std::invalid_argument("mse: dimension mismatch or empty grids");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::norm(a.data[i] - b.data[i]);
    return acc / static_cast<double>(a.size());
}

inline double mse(const EstimateSeries& est, const CGrid& truth)
{
    return mse(est.estimates, truth);
}

} // namespace kdml
