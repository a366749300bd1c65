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
// From-scratch LSTM with exact backpropagation through time.
//
// Conventions: row vectors. A batch of activations is a B x d matrix, weights
// multiply from the right. Each gate reads the concatenation Z_t = [X_t, H_{t-1}]
// (B x (input+hidden)) through its own (input+hidden) x hidden weight matrix:
//
//   F_t = sigmoid(Z_t W_f + b_f)          forget gate
//   I_t = sigmoid(Z_t W_i + b_i)          input gate
//   G_t = tanh   (Z_t W_c + b_c)          candidate cell
//   O_t = sigmoid(Z_t W_o + b_o)          output gate
//   C_t = F_t . C_{t-1} + I_t . G_t       cell state   (. = elementwise)
//   H_t = O_t . tanh(C_t)                 hidden state
//   Y_t = H_t W_g + b_g                   dense readout, applied at every step
//
// The prediction of a window is the readout at the last step; training loss is
// prediction_loss (see loss.hpp) on that row.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <kdml/errors.hpp>
#include <kdml/loss.hpp>
#include <kdml/rng.hpp>
#include <kdml/tensor.hpp>

namespace kdml {

struct LstmConfig {
    std::size_t input_size = 2;   ///< scalars per step (re/im of one rough estimate)
    std::size_t hidden_size = 128;
    std::size_t output_size = 2;  ///< 2M scalars for an M-symbol prediction horizon

    /// Constant added to the forget-gate bias at initialization. Zero keeps
    /// the literal gate equations; positive values start the network
    /// remembering (the usual trainability trick) and are opt-in.
    double forget_bias = 0.0;

    void validate() const
    {
        if (input_size == 0 || hidden_size == 0 || output_size == 0)
            throw ConfigError("lstm: all dimensions must be positive");
        if (!std::isfinite(forget_bias))
            throw ConfigError("lstm: forget_bias must be finite");
    }
};

/// All learnable tensors. The declaration order below is the canonical
/// serialization order used by checkpoints and by the flat views that Adam and
/// the gradient checker consume.
struct LstmParams {
    std::size_t input_size = 0;
    std::size_t hidden_size = 0;
    std::size_t output_size = 0;

    Mat w_f, b_f; // (input+hidden) x hidden, 1 x hidden
    Mat w_i, b_i;
    Mat w_c, b_c;
    Mat w_o, b_o;
    Mat w_g, b_g; // hidden x output, 1 x output

    std::vector<Mat*> tensors()
    {
        return {&w_f, &b_f, &w_i, &b_i, &w_c, &b_c, &w_o, &b_o, &w_g, &b_g};
    }
    std::vector<const Mat*> tensors() const
    {
        return {&w_f, &b_f, &w_i, &b_i, &w_c, &b_c, &w_o, &b_o, &w_g, &b_g};
    }
    static std::vector<const char*> tensor_names()
    {
        return {"w_f", "b_f", "w_i", "b_i", "w_c", "b_c", "w_o", "b_o", "w_g", "b_g"};
    }

    std::size_t param_count() const
    {
        std::size_t n = 0;
        for (const Mat* t : tensors())
            n += t->size();
        return n;
    }

    void zero()
    {
        for (Mat* t : tensors())
            t->zero();
    }
};

/// Allocates zero-valued tensors of the right shapes.
inline LstmParams make_lstm_zeros(const LstmConfig& cfg)
{
    cfg.validate();
    LstmParams p;
    p.input_size = cfg.input_size;
    p.hidden_size = cfg.hidden_size;
    p.output_size = cfg.output_size;
    const std::size_t zdim = cfg.input_size + cfg.hidden_size;
    p.w_f = Mat(zdim, cfg.hidden_size);
    p.w_i = Mat(zdim, cfg.hidden_size);
    p.w_c = Mat(zdim, cfg.hidden_size);
    p.w_o = Mat(zdim, cfg.hidden_size);
    p.w_g = Mat(cfg.hidden_size, cfg.output_size);
    p.b_f = Mat(1, cfg.hidden_size);
    p.b_i = Mat(1, cfg.hidden_size);
    p.b_c = Mat(1, cfg.hidden_size);
    p.b_o = Mat(1, cfg.hidden_size);
    p.b_g = Mat(1, cfg.output_size);
    return p;
}

/// Random initialization: weights i.i.d. uniform on [-1/sqrt(hidden),
/// 1/sqrt(hidden)), biases zero except for the optional forget-gate offset.
/// Weight matrices are drawn in declaration order so a fixed seed pins every
/// coefficient.
inline LstmParams make_lstm_params(const LstmConfig& cfg, Rng& rng)
{
    LstmParams p = make_lstm_zeros(cfg);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_size));
    fill_uniform(p.w_f, bound, rng);
    fill_uniform(p.w_i, bound, rng);
    fill_uniform(p.w_c, bound, rng);
    fill_uniform(p.w_o, bound, rng);
    fill_uniform(p.w_g, bound, rng);
    if (cfg.forget_bias != 0.0)
        for (std::size_t j = 0; j < p.b_f.cols; ++j)
            p.b_f(0, j) = cfg.forget_bias;
    return p;
}

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline void check_lstm_shapes(const LstmParams& p)
{
    const std::size_t zdim = p.input_size + p.hidden_size;
    require(p.w_f.rows == zdim && p.w_f.cols == p.hidden_size && p.w_i.same_shape(p.w_f) &&
                p.w_c.same_shape(p.w_f) && p.w_o.same_shape(p.w_f) && p.w_g.rows == p.hidden_size &&
                p.w_g.cols == p.output_size && p.b_f.cols == p.hidden_size &&
                p.b_g.cols == p.output_size,
            "lstm: parameter tensor shapes are inconsistent");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Single-sequence reference path
// ---------------------------------------------------------------------------

struct LstmState {
    std::vector<double> h; ///< hidden, length hidden_size
    std::vector<double> c; ///< cell, length hidden_size
};

inline LstmState make_lstm_state(const LstmParams& p)
{
    return {std::vector<double>(p.hidden_size, 0.0), std::vector<double>(p.hidden_size, 0.0)};
}

/// Advances the recurrence by one step for a single sample; x points at
/// input_size scalars.
inline void lstm_step(const LstmParams& p, const double* x, LstmState& s)
{
    const std::size_t m = p.hidden_size, in = p.input_size;
    std::vector<double> z(in + m);
    for (std::size_t k = 0; k < in; ++k)
        z[k] = x[k];
    for (std::size_t k = 0; k < m; ++k)
        z[in + k] = s.h[k];

    auto gate = [&](const Mat& w, const Mat& b, std::size_t j) {
        double acc = b(0, j);
        for (std::size_t k = 0; k < z.size(); ++k)
            acc += z[k] * w(k, j);
        return acc;
    };

    for (std::size_t j = 0; j < m; ++j)
    {
        const double f = detail::sigmoid(gate(p.w_f, p.b_f, j));
        const double i = detail::sigmoid(gate(p.w_i, p.b_i, j));
        const double g = std::tanh(gate(p.w_c, p.b_c, j));
        const double o = detail::sigmoid(gate(p.w_o, p.b_o, j));
        s.c[j] = f * s.c[j] + i * g;
        s.h[j] = o * std::tanh(s.c[j]);
    }
}

/// Dense readout of a hidden vector.
inline std::vector<double> dense_forward(const LstmParams& p, const std::vector<double>& h)
{
    detail::require(h.size() == p.hidden_size, "dense_forward: hidden size mismatch");
    std::vector<double> y(p.output_size);
    for (std::size_t j = 0; j < p.output_size; ++j)
    {
        double acc = p.b_g(0, j);
        for (std::size_t k = 0; k < p.hidden_size; ++k)
            acc += h[k] * p.w_g(k, j);
        y[j] = acc;
    }
    return y;
}

/// Runs the full recurrence over x_seq (n_steps x input_size) from a zero
/// state and returns the per-step readouts as an n_steps x output_size matrix.
inline Mat lstm_forward(const LstmParams& p, const Mat& x_seq)
{
    detail::check_lstm_shapes(p);
    detail::require(x_seq.cols == p.input_size && x_seq.rows > 0,
                    "lstm_forward: x_seq must be n_steps x input_size");
    LstmState s = make_lstm_state(p);
    Mat y(x_seq.rows, p.output_size);
    for (std::size_t t = 0; t < x_seq.rows; ++t)
    {
        lstm_step(p, x_seq.row(t), s);
        const std::vector<double> yt = dense_forward(p, s.h);
        for (std::size_t j = 0; j < p.output_size; ++j)
            y(t, j) = yt[j];
    }
    return y;
}

// ---------------------------------------------------------------------------
// Batched training path
// ---------------------------------------------------------------------------

/// Forward activations of a batch, kept for backpropagation. All per-step
/// entries are B x hidden except z (B x (input+hidden)) and y (B x output).
struct LstmCache {
    std::size_t batch = 0;
    std::size_t steps = 0;
    std::vector<Mat> z;  ///< gate inputs [X_t, H_{t-1}]
    std::vector<Mat> f;  ///< forget activations
    std::vector<Mat> i;  ///< input activations
    std::vector<Mat> g;  ///< candidate activations
    std::vector<Mat> o;  ///< output activations
    std::vector<Mat> c;  ///< cell states
    std::vector<Mat> tc; ///< tanh(cell)
    std::vector<Mat> h;  ///< hidden states
    std::vector<Mat> y;  ///< per-step readouts
};

/// Batched forward pass. xb is B x (n_steps * input_size), each row a window
/// laid out step-major. The number of steps is inferred from the width.
inline void lstm_batch_forward(const LstmParams& p, const Mat& xb, LstmCache& cache)
{
    detail::check_lstm_shapes(p);
    detail::require(xb.rows > 0 && xb.cols > 0 && xb.cols % p.input_size == 0,
                    "lstm_batch_forward: xb width must be a multiple of input_size");
    const std::size_t B = xb.rows;
    const std::size_t n = xb.cols / p.input_size;
    const std::size_t in = p.input_size, m = p.hidden_size;

    cache.batch = B;
    cache.steps = n;
    // Buffers are recycled across batches of the same shape; every entry is
    // fully overwritten below, so stale contents are harmless.
    auto resize_all = [&](std::vector<Mat>& v, std::size_t cols) {
        if (v.size() != n || v[0].rows != B || v[0].cols != cols)
            v.assign(n, Mat(B, cols));
    };
    resize_all(cache.z, in + m);
    resize_all(cache.f, m);
    resize_all(cache.i, m);
    resize_all(cache.g, m);
    resize_all(cache.o, m);
    resize_all(cache.c, m);
    resize_all(cache.tc, m);
    resize_all(cache.h, m);
    resize_all(cache.y, p.output_size);

    for (std::size_t t = 0; t < n; ++t)
    {
        Mat& z = cache.z[t];
        const Mat* h_prev = (t == 0) ? nullptr : &cache.h[t - 1];
        for (std::size_t b = 0; b < B; ++b)
        {
            double* zb = z.row(b);
            const double* xrow = xb.row(b) + t * in;
            for (std::size_t k = 0; k < in; ++k)
                zb[k] = xrow[k];
            if (h_prev)
            {
                const double* hp = h_prev->row(b);
                for (std::size_t k = 0; k < m; ++k)
                    zb[in + k] = hp[k];
            }
            else
            {
                for (std::size_t k = 0; k < m; ++k)
                    zb[in + k] = 0.0;
            }
        }

        auto activate = [&](Mat& out, const Mat& w, const Mat& bias, bool is_tanh) {
            out.zero();
            matmul_acc(out, z, w);
            add_row_broadcast(out, bias);
            if (is_tanh)
                for (double& v : out.a)
                    v = std::tanh(v);
            else
                for (double& v : out.a)
                    v = detail::sigmoid(v);
        };
        activate(cache.f[t], p.w_f, p.b_f, false);
        activate(cache.i[t], p.w_i, p.b_i, false);
        activate(cache.g[t], p.w_c, p.b_c, true);
        activate(cache.o[t], p.w_o, p.b_o, false);

        Mat& c = cache.c[t];
        const Mat* c_prev = (t == 0) ? nullptr : &cache.c[t - 1];
        for (std::size_t idx = 0; idx < c.size(); ++idx)
        {
            const double prev = c_prev ? c_prev->a[idx] : 0.0;
            c.a[idx] = cache.f[t].a[idx] * prev + cache.i[t].a[idx] * cache.g[t].a[idx];
        }
        Mat& tc = cache.tc[t];
        Mat& h = cache.h[t];
        for (std::size_t idx = 0; idx < c.size(); ++idx)
        {
            tc.a[idx] = std::tanh(c.a[idx]);
            h.a[idx] = cache.o[t].a[idx] * tc.a[idx];
        }

        Mat& y = cache.y[t];
        y.zero();
        matmul_acc(y, h, p.w_g);
        add_row_broadcast(y, p.b_g);
    }
}

/// Convenience: batched prediction (readout at the final step).
inline Mat lstm_predict(const LstmParams& p, const Mat& xb)
{
    LstmCache cache;
    lstm_batch_forward(p, xb, cache);
    return cache.y.back();
}

/// Forward-only batch loss.
inline double lstm_loss(const LstmParams& p, const Mat& xb, const Mat& targets)
{
    LstmCache cache;
    lstm_batch_forward(p, xb, cache);
    return prediction_loss(cache.y.back(), targets);
}

/// Full backpropagation through time starting from the loss gradient at the
/// final readout. `grads` is zeroed and then filled with d(loss)/d(tensor);
/// shapes must already match `p` (use make_lstm_zeros).
inline double lstm_loss_grad(const LstmParams& p, const Mat& xb, const Mat& targets,
                             LstmParams& grads, LstmCache& cache)
{
    lstm_batch_forward(p, xb, cache);
    const std::size_t B = cache.batch, n = cache.steps;
    const std::size_t in = p.input_size, m = p.hidden_size;
    detail::require(targets.rows == B && targets.cols == p.output_size,
                    "lstm_loss_grad: target shape mismatch");
    grads.zero();

    const double loss = prediction_loss(cache.y.back(), targets);

    Mat dy(B, p.output_size);
    prediction_loss_grad(cache.y.back(), targets, dy);

    // Readout layer (only the final step contributes to the loss).
    matmul_at_acc(grads.w_g, cache.h[n - 1], dy);
    colsum_acc(grads.b_g, dy);
    Mat dh(B, m);
    matmul_bt_acc(dh, dy, p.w_g);

    Mat dc(B, m), da_f(B, m), da_i(B, m), da_g(B, m), da_o(B, m);
    Mat dz(B, in + m);
    for (std::size_t t = n; t-- > 0;)
    {
        const Mat& f = cache.f[t];
        const Mat& i = cache.i[t];
        const Mat& g = cache.g[t];
        const Mat& o = cache.o[t];
        const Mat& tc = cache.tc[t];
        const Mat* c_prev = (t == 0) ? nullptr : &cache.c[t - 1];

        for (std::size_t idx = 0; idx < dh.size(); ++idx)
        {
            const double dh_v = dh.a[idx];
            const double do_v = dh_v * tc.a[idx];
            dc.a[idx] += dh_v * o.a[idx] * (1.0 - tc.a[idx] * tc.a[idx]);
            const double dc_v = dc.a[idx];
            const double cp = c_prev ? c_prev->a[idx] : 0.0;
            da_f.a[idx] = dc_v * cp * f.a[idx] * (1.0 - f.a[idx]);
            da_i.a[idx] = dc_v * g.a[idx] * i.a[idx] * (1.0 - i.a[idx]);
            da_g.a[idx] = dc_v * i.a[idx] * (1.0 - g.a[idx] * g.a[idx]);
            da_o.a[idx] = do_v * o.a[idx] * (1.0 - o.a[idx]);
        }

        matmul_at_acc(grads.w_f, cache.z[t], da_f);
        matmul_at_acc(grads.w_i, cache.z[t], da_i);
        matmul_at_acc(grads.w_c, cache.z[t], da_g);
        matmul_at_acc(grads.w_o, cache.z[t], da_o);
        colsum_acc(grads.b_f, da_f);
        colsum_acc(grads.b_i, da_i);
        colsum_acc(grads.b_c, da_g);
        colsum_acc(grads.b_o, da_o);

        dz.zero();
        matmul_bt_acc(dz, da_f, p.w_f);
        matmul_bt_acc(dz, da_i, p.w_i);
        matmul_bt_acc(dz, da_g, p.w_c);
        matmul_bt_acc(dz, da_o, p.w_o);

        // Recurrent carries: dH_{t-1} from the Z split, dC_{t-1} through the
        // forget gate.
        for (std::size_t b = 0; b < B; ++b)
        {
            const double* dzb = dz.row(b) + in;
            double* dhb = dh.row(b);
            for (std::size_t k = 0; k < m; ++k)
                dhb[k] = dzb[k];
        }
        for (std::size_t idx = 0; idx < dc.size(); ++idx)
            dc.a[idx] *= f.a[idx];
    }
    return loss;
}

inline double lstm_loss_grad(const LstmParams& p, const Mat& xb, const Mat& targets,
                             LstmParams& grads)
{
    LstmCache cache;
    return lstm_loss_grad(p, xb, targets, grads, cache);
}

} // namespace kdml
