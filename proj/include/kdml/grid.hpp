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

#include <complex>
#include <cstddef>
#include <vector>

namespace kdml {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Throughout the library rows index OFDM
/// symbols (time) and columns index subcarriers (frequency).
struct CGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    CGrid() = default;
    CGrid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool same_shape(const CGrid& o) const { return rows == o.rows && cols == o.cols; }
    std::size_t size() const { return data.size(); }
};

} // namespace kdml
