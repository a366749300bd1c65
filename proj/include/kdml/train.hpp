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
#include <numeric>
#include <string>
#include <vector>

#include <kdml/adam.hpp>
#include <kdml/dataset.hpp>
#include <kdml/errors.hpp>
#include <kdml/rng.hpp>
#include <kdml/tensor.hpp>

namespace kdml {

struct TrainConfig {
    std::size_t epochs = 100;
    std::size_t batch_size = 500;
    AdamConfig adam{};

    void validate() const
    {
        if (batch_size == 0)
            throw ConfigError("train: batch_size must be positive");
    }
};

/// Mini-batch Adam over shuffled windows. Model-agnostic: `params`/`grads`
/// are parallel tensor views and `loss_grad(xb, yb)` must run the model's
/// forward/backward, fill the tensors behind `grads`, and return the batch
/// loss (e.g. a lambda around lstm_loss_grad or mlp_loss_grad).
///
/// Returns one sample-weighted mean loss per epoch. Epoch order, shuffling
/// and batching are fully determined by `rng`, so a fixed seed reproduces the
/// trained parameters bit for bit. Throws NumericalError if a batch loss is
/// ever non-finite.
template <class LossGradFn>
std::vector<double> train_minibatch(const std::vector<Mat*>& params,
                                    const std::vector<const Mat*>& grads, LossGradFn&& loss_grad,
                                    const Mat& x, const Mat& y, const TrainConfig& cfg, Rng& rng)
{
    cfg.validate();
    detail::require(x.rows == y.rows && x.rows > 0, "train_minibatch: x/y row mismatch");

    std::size_t total_params = 0;
    for (const Mat* t : params)
        total_params += t->size();
    AdamState opt = make_adam(cfg.adam, total_params);

    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<double> epoch_losses;
    epoch_losses.reserve(cfg.epochs);
    Mat xb, yb;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch)
    {
        shuffle(order, rng);
        double loss_sum = 0.0;
        for (std::size_t lo = 0; lo < order.size(); lo += cfg.batch_size)
        {
            const std::size_t hi = std::min(order.size(), lo + cfg.batch_size);
            gather_rows(x, order, lo, hi, xb);
            gather_rows(y, order, lo, hi, yb);
            const double loss = loss_grad(xb, yb);
            if (!std::isfinite(loss))
                throw NumericalError("training diverged: non-finite loss at epoch " +
                                     std::to_string(epoch + 1));
            adam_step(opt, params, grads);
            loss_sum += loss * static_cast<double>(hi - lo);
        }
        epoch_losses.push_back(loss_sum / static_cast<double>(order.size()));
    }
    return epoch_losses;
}

} // namespace kdml
