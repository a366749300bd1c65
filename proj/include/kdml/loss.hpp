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

#include <kdml/tensor.hpp>

namespace kdml {

/// Training loss for the channel refiners. Each output row holds the
/// re/im pairs of M predicted symbols (l = 2M scalars); the per-sample loss is
/// the squared complex prediction error averaged over the M symbols,
///   L_b = (1/M) * sum_j (pred_bj - target_bj)^2,
/// and the batch loss is the mean of L_b over rows.
inline double prediction_loss(const Mat& pred, const Mat& target)
{
    detail::require(pred.same_shape(target) && pred.size() > 0 && pred.cols % 2 == 0,
                    "prediction_loss: bad prediction/target shapes");
    const double horizon = static_cast<double>(pred.cols) / 2.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i)
    {
        const double d = pred.a[i] - target.a[i];
        acc += d * d;
    }
    return acc / (horizon * static_cast<double>(pred.rows));
}

/// Gradient of prediction_loss with respect to the predictions:
/// d(loss)/d(pred_bj) = 2 * (pred_bj - target_bj) / (M * B).
inline void prediction_loss_grad(const Mat& pred, const Mat& target, Mat& d_pred)
{
    detail::require(pred.same_shape(target) && pred.same_shape(d_pred) && pred.size() > 0 &&
                        pred.cols % 2 == 0,
                    "prediction_loss_grad: bad shapes");
    const double horizon = static_cast<double>(pred.cols) / 2.0;
    const double scale = 2.0 / (horizon * static_cast<double>(pred.rows));
    for (std::size_t i = 0; i < pred.size(); ++i)
        d_pred.a[i] = scale * (pred.a[i] - target.a[i]);
}

} // namespace kdml
