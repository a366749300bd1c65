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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <kdml/rng.hpp>

using kdml::Rng;

TEST_CASE("identical seeds give identical streams", "[rng]")
{
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.bits() == b.bits());
}

TEST_CASE("uniform stays in [0,1) and fills the range", "[rng]")
{
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i)
    {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("below is unbiased over small ranges and in-bounds", "[rng]")
{
    Rng rng(3);
    std::vector<int> counts(5, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
    {
        const std::uint64_t v = rng.below(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts)
        CHECK(std::abs(c - draws / 5) < draws / 50); // within 10% of uniform
    CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("normal draws have unit variance and zero mean", "[rng]")
{
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal();
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("cnormal calibrates E|w|^2 to the requested variance", "[rng]")
{
    Rng rng(13);
    const int n = 200000;
    double p = 0.0;
    for (int i = 0; i < n; ++i)
        p += std::norm(rng.cnormal(0.25));
    CHECK(std::abs(p / n - 0.25) < 0.01);
}

TEST_CASE("derive_seed separates purposes and masters", "[rng]")
{
    std::set<std::uint64_t> seeds;
    for (std::uint64_t master : {1ull, 2ull, 3ull})
        for (const char* purpose : {"chan/0", "chan/1", "noise/0", "init/kdml-ls"})
            seeds.insert(kdml::derive_seed(master, purpose));
    CHECK(seeds.size() == 12);
    CHECK(kdml::derive_seed(5, "a") == kdml::derive_seed(5, "a"));
}

TEST_CASE("shuffle is a deterministic permutation", "[rng]")
{
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    std::vector<int> w = v;

    Rng r1(99), r2(99);
    kdml::shuffle(v, r1);
    kdml::shuffle(w, r2);
    REQUIRE(v == w);

    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(100);
    std::iota(expect.begin(), expect.end(), 0);
    REQUIRE(sorted == expect);
    CHECK(v != expect); // astronomically unlikely to be identity
}
