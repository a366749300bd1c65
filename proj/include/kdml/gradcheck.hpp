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
#include <vector>

#include <kdml/tensor.hpp>

namespace kdml {

/// Central-finite-difference gradient verification.
///
/// `params` are the live tensors of a model, `analytic` the backprop gradients
/// for the same loss, and `loss()` must re-evaluate that loss with the current
/// (temporarily perturbed) parameter values. Returns the worst relative error
///     |fd - analytic| / max(1, |fd| + |analytic|)
/// over every coordinate of every tensor. A correct backward pass scores well
/// below 1e-5 with the default step.
template <class LossFn>
double max_rel_grad_error(const std::vector<Mat*>& params,
                          const std::vector<const Mat*>& analytic, LossFn&& loss,
                          double h = 1e-5)
{
    detail::require(params.size() == analytic.size() && h > 0.0,
                    "max_rel_grad_error: bad arguments");
    double worst = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k)
    {
        detail::require(params[k]->same_shape(*analytic[k]),
                        "max_rel_grad_error: tensor shape mismatch");
        Mat& t = *params[k];
        for (std::size_t idx = 0; idx < t.size(); ++idx)
        {
            const double saved = t.a[idx];
            t.a[idx] = saved + h;
            const double up = loss();
            t.a[idx] = saved - h;
            const double down = loss();
            t.a[idx] = saved;

            const double fd = (up - down) / (2.0 * h);
            const double an = analytic[k]->a[idx];
            const double rel = std::abs(fd - an) / std::max(1.0, std::abs(fd) + std::abs(an));
            if (rel > worst)
                worst = rel;
        }
    }
    return worst;
}

} // namespace kdml
