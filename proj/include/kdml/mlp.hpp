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
// Fully connected baseline: a stack of affine layers with ReLU between them
// (no activation after the last). The default depth of six matches the
// reference comparison network; it consumes a whole flattened window at once
// instead of stepping through it.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <kdml/errors.hpp>
#include <kdml/loss.hpp>
#include <kdml/rng.hpp>
#include <kdml/tensor.hpp>

namespace kdml {

struct MlpConfig {
    std::size_t input_size = 16; ///< n_steps * 2 scalars of a flattened window
    std::size_t hidden_size = 128;
    std::size_t output_size = 2;
    std::size_t depth = 6; ///< number of affine layers

    void validate() const
    {
        if (input_size == 0 || hidden_size == 0 || output_size == 0)
            throw ConfigError("mlp: all dimensions must be positive");
        if (depth < 2)
            throw ConfigError("mlp: depth must be at least 2");
    }
};

struct MlpParams {
    std::size_t input_size = 0;
    std::size_t hidden_size = 0;
    std::size_t output_size = 0;
    std::vector<Mat> w; ///< w[0]: in x hidden, middle: hidden x hidden, last: hidden x out
    std::vector<Mat> b; ///< 1 x cols(w[k])

    std::vector<Mat*> tensors()
    {
        std::vector<Mat*> t;
        for (std::size_t k = 0; k < w.size(); ++k)
        {
            t.push_back(&w[k]);
            t.push_back(&b[k]);
        }
        return t;
    }
    std::vector<const Mat*> tensors() const
    {
        std::vector<const Mat*> t;
        for (std::size_t k = 0; k < w.size(); ++k)
        {
            t.push_back(&w[k]);
            t.push_back(&b[k]);
        }
        return t;
    }
    std::vector<std::string> tensor_names() const
    {
        std::vector<std::string> names;
        for (std::size_t k = 0; k < w.size(); ++k)
        {
            names.push_back("w" + std::to_string(k + 1));
            names.push_back("b" + std::to_string(k + 1));
        }
        return names;
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

inline MlpParams make_mlp_zeros(const MlpConfig& cfg)
{
    cfg.validate();
    MlpParams p;
    p.input_size = cfg.input_size;
    p.hidden_size = cfg.hidden_size;
    p.output_size = cfg.output_size;
    for (std::size_t k = 0; k < cfg.depth; ++k)
    {
        const std::size_t in = (k == 0) ? cfg.input_size : cfg.hidden_size;
        const std::size_t out = (k + 1 == cfg.depth) ? cfg.output_size : cfg.hidden_size;
        p.w.emplace_back(in, out);
        p.b.emplace_back(1, out);
    }
    return p;
}

/// Same initialization rule as the LSTM: weights uniform on
/// [-1/sqrt(hidden), 1/sqrt(hidden)), biases zero, drawn in layer order.
inline MlpParams make_mlp_params(const MlpConfig& cfg, Rng& rng)
{
    MlpParams p = make_mlp_zeros(cfg);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_size));
    for (Mat& w : p.w)
        fill_uniform(w, bound, rng);
    return p;
}

/// Layer activations kept for the backward pass; acts[0] is the input batch,
/// acts[k] for k >= 1 the post-ReLU output of layer k (the final entry is the
/// raw output, no ReLU).
struct MlpCache {
    std::vector<Mat> acts;
};

inline void mlp_batch_forward(const MlpParams& p, const Mat& xb, MlpCache& cache)
{
    detail::require(!p.w.empty() && xb.cols == p.w.front().rows && xb.rows > 0,
                    "mlp_batch_forward: input width mismatch");
    const std::size_t depth = p.w.size();
    cache.acts.resize(depth + 1);
    cache.acts[0] = xb;
    for (std::size_t k = 0; k < depth; ++k)
    {
        Mat& out = cache.acts[k + 1];
        if (out.rows != xb.rows || out.cols != p.w[k].cols)
            out = Mat(xb.rows, p.w[k].cols);
        else
            out.zero();
        matmul_acc(out, cache.acts[k], p.w[k]);
        add_row_broadcast(out, p.b[k]);
        if (k + 1 < depth)
            for (double& v : out.a)
                v = (v > 0.0) ? v : 0.0;
    }
}

inline Mat mlp_predict(const MlpParams& p, const Mat& xb)
{
    MlpCache cache;
    mlp_batch_forward(p, xb, cache);
    return cache.acts.back();
}

inline double mlp_loss(const MlpParams& p, const Mat& xb, const Mat& targets)
{
    MlpCache cache;
    mlp_batch_forward(p, xb, cache);
    return prediction_loss(cache.acts.back(), targets);
}

/// Forward + backward; `grads` is zeroed and filled (allocate with
/// make_mlp_zeros). Returns the batch loss.
inline double mlp_loss_grad(const MlpParams& p, const Mat& xb, const Mat& targets,
                            MlpParams& grads, MlpCache& cache)
{
    mlp_batch_forward(p, xb, cache);
    const std::size_t depth = p.w.size();
    detail::require(targets.rows == xb.rows && targets.cols == p.w.back().cols,
                    "mlp_loss_grad: target shape mismatch");
    grads.zero();

    const double loss = prediction_loss(cache.acts.back(), targets);

    Mat delta(xb.rows, p.w.back().cols);
    prediction_loss_grad(cache.acts.back(), targets, delta);
    for (std::size_t k = depth; k-- > 0;)
    {
        matmul_at_acc(grads.w[k], cache.acts[k], delta);
        colsum_acc(grads.b[k], delta);
        if (k == 0)
            break;
        Mat prev(xb.rows, p.w[k].rows);
        matmul_bt_acc(prev, delta, p.w[k]);
        // ReLU mask of the activation that fed layer k.
        const Mat& act = cache.acts[k];
        for (std::size_t idx = 0; idx < prev.size(); ++idx)
            prev.a[idx] = (act.a[idx] > 0.0) ? prev.a[idx] : 0.0;
        delta = std::move(prev);
    }
    return loss;
}

inline double mlp_loss_grad(const MlpParams& p, const Mat& xb, const Mat& targets, MlpParams& grads)
{
    MlpCache cache;
    return mlp_loss_grad(p, xb, targets, grads, cache);
}

} // namespace kdml
