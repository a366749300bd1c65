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
#include <stdexcept>
#include <vector>

#include <kdml/grid.hpp>

namespace kdml {

/// Dense row-major square complex matrix (sized for pilot-count dimensions).
struct CMat {
    std::size_t n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(std::size_t dim) : n(dim), a(dim * dim) {}

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

/// y = A x.
inline std::vector<cplx> matvec(const CMat& m, const std::vector<cplx>& x)
{
    if (x.size() != m.n)
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cplx> y(m.n, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < m.n; ++r)
    {
        cplx acc{0.0, 0.0};
        const cplx* row = m.a.data() + r * m.n;
        for (std::size_t c = 0; c < m.n; ++c)
            acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

/// Cholesky factorization A = L L^H of a Hermitian positive-definite matrix.
/// On success `out` holds L in its lower triangle (upper untouched garbage is
/// never read by the solver). Returns false when a pivot is non-positive or
/// non-finite, i.e. the matrix is not numerically HPD.
inline bool cholesky(const CMat& m, CMat& out)
{
    const std::size_t n = m.n;
    out = CMat(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(out(j, k));
        if (!(d > 0.0) || !std::isfinite(d))
            return false;
        const double ljj = std::sqrt(d);
        out(j, j) = {ljj, 0.0};

        for (std::size_t i = j + 1; i < n; ++i)
        {
            cplx s = m(i, j);
            const cplx* ri = out.a.data() + i * n;
            const cplx* rj = out.a.data() + j * n;
            for (std::size_t k = 0; k < j; ++k)
                s -= ri[k] * std::conj(rj[k]);
            out(i, j) = s / ljj;
        }
    }
    return true;
}

/// Solve (L L^H) x = b given the factor from cholesky().
inline std::vector<cplx> cholesky_solve(const CMat& l, std::vector<cplx> b)
{
    const std::size_t n = l.n;
    if (b.size() != n)
        throw std::invalid_argument("cholesky_solve: dimension mismatch");

    // Forward: L y = b.
    for (std::size_t i = 0; i < n; ++i)
    {
        cplx s = b[i];
        const cplx* row = l.a.data() + i * n;
        for (std::size_t k = 0; k < i; ++k)
            s -= row[k] * b[k];
        b[i] = s / row[i].real();
    }
    // Backward: L^H x = y.
    for (std::size_t ii = n; ii-- > 0;)
    {
        cplx s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= std::conj(l(k, ii)) * b[k];
        b[ii] = s / l(ii, ii).real();
    }
    return b;
}

} // namespace kdml
