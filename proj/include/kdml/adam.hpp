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
#include <cstdint>
#include <vector>

#include <kdml/tensor.hpp>

namespace kdml {

struct AdamConfig {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Adam optimizer state over a flat parameter vector. The moment buffers are
/// laid out as the concatenation of the parameter tensors in their canonical
/// order, so the state can be carried across steps without re-binding.
struct AdamState {
    AdamConfig cfg;
    std::uint64_t step_count = 0;
    std::vector<double> m; ///< first-moment estimate
    std::vector<double> v; ///< second-moment estimate
};

inline AdamState make_adam(const AdamConfig& cfg, std::size_t n_params)
{
    AdamState st;
    st.cfg = cfg;
    st.m.assign(n_params, 0.0);
    st.v.assign(n_params, 0.0);
    return st;
}

/// One bias-corrected Adam update. `params` and `grads` are parallel tensor
/// views (as returned by LstmParams::tensors / MlpParams::tensors); the total
/// element count must match the state.
inline void adam_step(AdamState& st, const std::vector<Mat*>& params,
                      const std::vector<const Mat*>& grads)
{
    detail::require(params.size() == grads.size(), "adam_step: tensor list mismatch");
    std::size_t total = 0;
    for (std::size_t k = 0; k < params.size(); ++k)
    {
        detail::require(params[k]->same_shape(*grads[k]), "adam_step: tensor shape mismatch");
        total += params[k]->size();
    }
    detail::require(total == st.m.size(), "adam_step: state size mismatch");

    ++st.step_count;
    const double b1 = st.cfg.beta1, b2 = st.cfg.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(st.step_count));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(st.step_count));

    std::size_t off = 0;
    for (std::size_t k = 0; k < params.size(); ++k)
    {
        double* p = params[k]->a.data();
        const double* g = grads[k]->a.data();
        const std::size_t n = params[k]->size();
        for (std::size_t idx = 0; idx < n; ++idx)
        {
            double& m = st.m[off + idx];
            double& v = st.v[off + idx];
            m = b1 * m + (1.0 - b1) * g[idx];
            v = b2 * v + (1.0 - b2) * g[idx] * g[idx];
            const double m_hat = m / c1;
            const double v_hat = v / c2;
            p[idx] -= st.cfg.lr * m_hat / (std::sqrt(v_hat) + st.cfg.eps);
        }
        off += n;
    }
}

} // namespace kdml
