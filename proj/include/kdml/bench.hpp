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
// Small wall-clock measurement helpers for the complexity report: median-of-
// repeats timing and a least-squares slope on log-log axes, which is how the
// scaling exponents of the kernels are checked.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kdml {

/// Wall time of one call, in milliseconds.
template <class F> double time_once_ms(F&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

/// Median wall time over `repeats` calls; robust against scheduler noise,
/// which matters because slope checks run on a shared machine.
template <class F> double median_time_ms(F&& fn, std::size_t repeats)
{
    if (repeats == 0)
        throw std::invalid_argument("median_time_ms: repeats must be positive");
    std::vector<double> t;
    t.reserve(repeats);
    for (std::size_t i = 0; i < repeats; ++i)
        t.push_back(time_once_ms(fn));
    std::sort(t.begin(), t.end());
    const std::size_t mid = repeats / 2;
    return repeats % 2 == 1 ? t[mid] : 0.5 * (t[mid - 1] + t[mid]);
}

/// Least-squares slope of log(y) against log(x). Both series must be positive
/// and at least two points long; this is the scaling exponent when y follows
/// a power law in x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need two or more paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("loglog_slope: points must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("loglog_slope: x values must not all coincide");
    return (n * sxy - sx * sy) / denom;
}

} // namespace kdml
