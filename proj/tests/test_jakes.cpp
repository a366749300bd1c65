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

#include <cmath>
#include <numbers>

#include <kdml/jakes.hpp>

using kdml::JakesConfig;
using kdml::jakes_gain;

namespace {

/// Independent direct-summation oracle: long double arithmetic, oscillators
/// summed from m = M down to 1, trigonometry written out from the model
/// definition rather than shared with the implementation.
kdml::cplx jakes_oracle(double e0, int t_osc, double w_d, double theta, double t)
{
    const int m_cnt = (t_osc / 2 - 1) / 2;
    const long double pi = 3.14159265358979323846264338327950288L;

    long double gi = 0.0L, gq = 0.0L;
    for (int m = m_cnt; m >= 1; --m)
    {
        const long double phi = pi * m / (m_cnt + 1);
        const long double wm = static_cast<long double>(w_d) * cosl(2.0L * pi * m / t_osc);
        const long double osc = cosl(wm * static_cast<long double>(t) + static_cast<long double>(theta));
        gi += 2.0L * cosl(phi) * osc;
        gq += 2.0L * sinl(phi) * osc;
    }
    // phi_T = 0: cos -> 1 feeds g_I, sin -> 0 removes the g_Q contribution.
    gi += sqrtl(2.0L) * cosl(static_cast<long double>(w_d) * static_cast<long double>(t) +
                             static_cast<long double>(theta));

    const long double scale = static_cast<long double>(e0) / sqrtl(2.0L * m_cnt + 1.0L);
    return {static_cast<double>(scale * gi), static_cast<double>(scale * gq)};
}

} // namespace

TEST_CASE("oscillator count follows M = (T/2 - 1)/2", "[jakes]")
{
    JakesConfig c;
    c.t_oscillators = 6;
    CHECK(kdml::jakes_oscillator_count(c) == 1);
    c.t_oscillators = 34;
    CHECK(kdml::jakes_oscillator_count(c) == 8);
    c.t_oscillators = 42;
    CHECK(kdml::jakes_oscillator_count(c) == 10);
}

TEST_CASE("T = 6 at t = 0 equals the closed form (sqrt(2) + 2j)/sqrt(3)", "[jakes]")
{
    // Frozen from the model by hand: M = 1, phi_1 = pi/2, so at t = 0
    // g_I = sqrt(2), g_Q = 2, and the scale is 1/sqrt(2M + 1) = 1/sqrt(3).
    JakesConfig c;
    c.e0 = 1.0;
    c.t_oscillators = 6;
    c.doppler_max = 2.0 * std::numbers::pi * 50.0;

    const kdml::cplx g = jakes_gain(c, 0.0);
    CHECK(std::abs(g.real() - std::sqrt(2.0) / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(g.imag() - 2.0 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("T = 34 gain matches the independent summation oracle", "[jakes]")
{
    JakesConfig c;
    c.e0 = 1.0;
    c.t_oscillators = 34;
    c.doppler_max = 2.0 * std::numbers::pi * 100.0;

    for (double t : {0.0, 0.01, 0.1234, 1.75})
    {
        const kdml::cplx got = jakes_gain(c, t);
        const kdml::cplx want = jakes_oracle(1.0, 34, c.doppler_max, 0.0, t);
        INFO("t = " << t);
        CHECK(std::abs(got - want) < 1e-12);
    }

    c.phase_offset = 1.234;
    c.e0 = 0.7;
    const kdml::cplx got = jakes_gain(c, 0.01);
    const kdml::cplx want = jakes_oracle(0.7, 34, c.doppler_max, 1.234, 0.01);
    CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("time-averaged envelope power is unity", "[jakes]")
{
    JakesConfig c;
    c.e0 = 1.0;
    c.t_oscillators = 34;
    c.doppler_max = 2.0 * std::numbers::pi * 100.0;

    const int n = 100000;
    const double dt = 1e-3; // 100 s total, far beyond the slowest oscillator period
    double p = 0.0;
    for (int i = 0; i < n; ++i)
        p += std::norm(jakes_gain(c, i * dt));
    p /= n;
    CHECK(p > 0.9);
    CHECK(p < 1.1);
}

TEST_CASE("configuration errors are rejected", "[jakes]")
{
    JakesConfig c;

    c.e0 = 0.0;
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);
    c.e0 = -1.0;
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);

    c = JakesConfig{};
    c.t_oscillators = 8; // 8 mod 4 == 0
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);
    c.t_oscillators = 7;
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);
    c.t_oscillators = 2; // below the minimum usable size
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);

    c = JakesConfig{};
    c.doppler_max = -1.0;
    CHECK_THROWS_AS(jakes_gain(c, 0.0), kdml::ConfigError);
}
