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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <kdml/rng.hpp>

// glibc provides SIMD implementations of exp and tanh in libmvec. Restating
// the declarations with the simd attribute lets the autovectorizer call those
// variants from the elementwise activation loops; this needs -fno-math-errno
// (nobody reads errno here) but none of the fast-math value transformations.
// The build defines KDML_USE_LIBMVEC only when it also links libmvec.
#if defined(KDML_USE_LIBMVEC)
extern "C" double exp(double) noexcept __attribute__((__simd__("notinbranch")));
extern "C" double tanh(double) noexcept __attribute__((__simd__("notinbranch")));
#endif

namespace kdml {

/// Dense row-major double matrix. This is the only tensor type used by the
/// learning stack; vectors are 1xN matrices.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    double* row(std::size_t r) { return a.data() + r * cols; }
    const double* row(std::size_t r) const { return a.data() + r * cols; }

    std::size_t size() const { return rows * cols; }
    void zero() { a.assign(a.size(), 0.0); }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

namespace detail {

inline void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace detail

/// C += A * B with A: r x k, B: k x n, C: r x n. The i-k-j loop order streams
/// contiguous rows of B and C so the inner loop vectorizes into FMAs; four
/// k-steps are fused per pass so narrow outputs are not serialized on the
/// accumulator reload.
inline void matmul_acc(Mat& c, const Mat& a, const Mat& b)
{
    detail::require(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols,
                    "matmul_acc: dimension mismatch");
    const std::size_t kq = a.cols - a.cols % 4;
    for (std::size_t i = 0; i < a.rows; ++i)
    {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        std::size_t k = 0;
        for (; k < kq; k += 4)
        {
            const double f0 = ai[k], f1 = ai[k + 1], f2 = ai[k + 2], f3 = ai[k + 3];
            const double* b0 = b.row(k);
            const double* b1 = b.row(k + 1);
            const double* b2 = b.row(k + 2);
            const double* b3 = b.row(k + 3);
            for (std::size_t j = 0; j < b.cols; ++j)
                ci[j] += (f0 * b0[j] + f1 * b1[j]) + (f2 * b2[j] + f3 * b3[j]);
        }
        for (; k < a.cols; ++k)
        {
            const double f = ai[k];
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j)
                ci[j] += f * bk[j];
        }
    }
}

/// C += A * B^T with A: r x k, B: n x k, C: r x n. Row-by-row dot products;
/// both operands are read along contiguous rows, with four partial sums so
/// the reduction is not one long dependency chain.
inline void matmul_bt_acc(Mat& c, const Mat& a, const Mat& b)
{
    detail::require(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows,
                    "matmul_bt_acc: dimension mismatch");
    const std::size_t kq = a.cols - a.cols % 4;
    for (std::size_t i = 0; i < a.rows; ++i)
    {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (std::size_t j = 0; j < b.rows; ++j)
        {
            const double* bj = b.row(j);
            double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
            std::size_t k = 0;
            for (; k < kq; k += 4)
            {
                a0 += ai[k] * bj[k];
                a1 += ai[k + 1] * bj[k + 1];
                a2 += ai[k + 2] * bj[k + 2];
                a3 += ai[k + 3] * bj[k + 3];
            }
            double acc = (a0 + a1) + (a2 + a3);
            for (; k < a.cols; ++k)
                acc += ai[k] * bj[k];
            ci[j] += acc;
        }
    }
}

/// C += A^T * B with A: r x k, B: r x n, C: k x n. Implemented as axpy
/// updates over the rows of A and B, four source rows fused per pass so each
/// C row is reloaded once instead of four times.
inline void matmul_at_acc(Mat& c, const Mat& a, const Mat& b)
{
    detail::require(a.rows == b.rows && c.rows == a.cols && c.cols == b.cols,
                    "matmul_at_acc: dimension mismatch");
    const std::size_t iq = a.rows - a.rows % 4;
    std::size_t i = 0;
    for (; i < iq; i += 4)
    {
        const double* a0 = a.row(i);
        const double* a1 = a.row(i + 1);
        const double* a2 = a.row(i + 2);
        const double* a3 = a.row(i + 3);
        const double* b0 = b.row(i);
        const double* b1 = b.row(i + 1);
        const double* b2 = b.row(i + 2);
        const double* b3 = b.row(i + 3);
        for (std::size_t p = 0; p < a.cols; ++p)
        {
            const double f0 = a0[p], f1 = a1[p], f2 = a2[p], f3 = a3[p];
            double* cp = c.row(p);
            for (std::size_t j = 0; j < b.cols; ++j)
                cp[j] += (f0 * b0[j] + f1 * b1[j]) + (f2 * b2[j] + f3 * b3[j]);
        }
    }
    for (; i < a.rows; ++i)
    {
        const double* ai = a.row(i);
        const double* bi = b.row(i);
        for (std::size_t p = 0; p < a.cols; ++p)
        {
            const double f = ai[p];
            double* cp = c.row(p);
            for (std::size_t j = 0; j < b.cols; ++j)
                cp[j] += f * bi[j];
        }
    }
}

/// Adds a 1 x n bias row to every row of m.
inline void add_row_broadcast(Mat& m, const Mat& bias)
{
    detail::require(bias.rows == 1 && bias.cols == m.cols,
                    "add_row_broadcast: bias shape mismatch");
    for (std::size_t i = 0; i < m.rows; ++i)
    {
        double* mi = m.row(i);
        const double* b = bias.row(0);
        for (std::size_t j = 0; j < m.cols; ++j)
            mi[j] += b[j];
    }
}

/// out (1 x n) += column sums of a.
inline void colsum_acc(Mat& out, const Mat& a)
{
    detail::require(out.rows == 1 && out.cols == a.cols, "colsum_acc: shape mismatch");
    double* o = out.row(0);
    for (std::size_t i = 0; i < a.rows; ++i)
    {
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < a.cols; ++j)
            o[j] += ai[j];
    }
}

/// Fills a matrix with i.i.d. uniform draws from [-bound, bound).
inline void fill_uniform(Mat& m, double bound, Rng& rng)
{
    for (double& v : m.a)
        v = rng.uniform(-bound, bound);
}

} // namespace kdml
