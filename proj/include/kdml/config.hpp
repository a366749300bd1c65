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
// Plain-text experiment configuration: `key=value` lines covering every
// ExperimentConfig field. The serialized form is sorted and canonical, so its
// FNV-1a hash identifies a configuration across output files.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include <kdml/errors.hpp>
#include <kdml/pipeline.hpp>

namespace kdml {

namespace detail {

inline std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_size(std::size_t v)
{
    return std::to_string(v);
}

inline double parse_double(const std::string& key, const std::string& text)
{
    const char* s = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ConfigError("config: bad number for '" + key + "': " + text);
    return v;
}

inline std::size_t parse_size(const std::string& key, const std::string& text)
{
    const char* s = text.c_str();
    if (*s == '-')
        throw ConfigError("config: '" + key + "' must be non-negative: " + text);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw ConfigError("config: bad integer for '" + key + "': " + text);
    return static_cast<std::size_t>(v);
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& text)
{
    return static_cast<std::uint64_t>(parse_size(key, text));
}

inline bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "1" || text == "true")
        return true;
    if (text == "0" || text == "false")
        return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + text);
}

inline std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return s.substr(b, e - b);
}

} // namespace detail

/// Flattens a configuration into sorted `key -> printed value` pairs.
inline std::map<std::string, std::string> config_key_values(const ExperimentConfig& c)
{
    using detail::fmt_double;
    using detail::fmt_size;
    std::map<std::string, std::string> kv;
    kv["fft_size"] = fmt_size(c.ofdm.fft_size);
    kv["subcarrier_spacing"] = fmt_double(c.ofdm.subcarrier_spacing);
    kv["sample_rate"] = fmt_double(c.ofdm.sample_rate);
    kv["cp_len"] = fmt_size(c.ofdm.cp_len);
    kv["nps"] = fmt_size(c.ofdm.nps);
    kv["n_paths"] = fmt_size(c.draw.n_paths);
    kv["t_oscillators"] = fmt_size(static_cast<std::size_t>(c.draw.t_oscillators));
    kv["fd_min_hz"] = fmt_double(c.draw.fd_min_hz);
    kv["fd_max_hz"] = fmt_double(c.draw.fd_max_hz);
    kv["power_decay"] = fmt_double(c.draw.power_decay);
    kv["max_delay_taps"] = fmt_size(c.draw.max_delay_taps);
    kv["phase_diversity"] = c.draw.phase_diversity ? "1" : "0";
    kv["symbols_per_frame"] = fmt_size(c.symbols_per_frame);
    kv["frames_train"] = fmt_size(c.frames_train);
    kv["frames_test"] = fmt_size(c.frames_test);
    kv["windows_train"] = fmt_size(c.windows_train);
    kv["windows_test"] = fmt_size(c.windows_test);
    kv["n_steps"] = fmt_size(c.n_steps);
    kv["horizon"] = fmt_size(c.horizon);
    kv["hidden"] = fmt_size(c.hidden);
    kv["mlp_depth"] = fmt_size(c.mlp_depth);
    kv["mmse_window"] = fmt_size(c.mmse_window);
    kv["epochs"] = fmt_size(c.epochs);
    kv["batch_size"] = fmt_size(c.batch_size);
    kv["learning_rate"] = fmt_double(c.learning_rate);
    kv["forget_bias"] = fmt_double(c.forget_bias);
    kv["snr_db"] = fmt_double(c.snr_db);
    kv["seed"] = std::to_string(c.seed);
    return kv;
}

/// Canonical text form: one `key=value` per line, keys sorted.
inline std::string serialize_config(const ExperimentConfig& c)
{
    std::string out;
    for (const auto& [k, v] : config_key_values(c))
    {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

/// Applies one `key=value` assignment; throws ConfigError on unknown keys or
/// malformed values.
inline void apply_config_entry(ExperimentConfig& c, const std::string& key,
                               const std::string& value)
{
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_size;
    if (key == "fft_size") c.ofdm.fft_size = parse_size(key, value);
    else if (key == "subcarrier_spacing") c.ofdm.subcarrier_spacing = parse_double(key, value);
    else if (key == "sample_rate") c.ofdm.sample_rate = parse_double(key, value);
    else if (key == "cp_len") c.ofdm.cp_len = parse_size(key, value);
    else if (key == "nps") c.ofdm.nps = parse_size(key, value);
    else if (key == "n_paths") c.draw.n_paths = parse_size(key, value);
    else if (key == "t_oscillators") c.draw.t_oscillators = static_cast<int>(parse_size(key, value));
    else if (key == "fd_min_hz") c.draw.fd_min_hz = parse_double(key, value);
    else if (key == "fd_max_hz") c.draw.fd_max_hz = parse_double(key, value);
    else if (key == "power_decay") c.draw.power_decay = parse_double(key, value);
    else if (key == "max_delay_taps") c.draw.max_delay_taps = parse_size(key, value);
    else if (key == "phase_diversity") c.draw.phase_diversity = parse_bool(key, value);
    else if (key == "symbols_per_frame") c.symbols_per_frame = parse_size(key, value);
    else if (key == "frames_train") c.frames_train = parse_size(key, value);
    else if (key == "frames_test") c.frames_test = parse_size(key, value);
    else if (key == "windows_train") c.windows_train = parse_size(key, value);
    else if (key == "windows_test") c.windows_test = parse_size(key, value);
    else if (key == "n_steps") c.n_steps = parse_size(key, value);
    else if (key == "horizon") c.horizon = parse_size(key, value);
    else if (key == "hidden") c.hidden = parse_size(key, value);
    else if (key == "mlp_depth") c.mlp_depth = parse_size(key, value);
    else if (key == "mmse_window") c.mmse_window = parse_size(key, value);
    else if (key == "epochs") c.epochs = parse_size(key, value);
    else if (key == "batch_size") c.batch_size = parse_size(key, value);
    else if (key == "learning_rate") c.learning_rate = parse_double(key, value);
    else if (key == "forget_bias") c.forget_bias = parse_double(key, value);
    else if (key == "snr_db") c.snr_db = parse_double(key, value);
    else if (key == "seed") c.seed = detail::parse_u64(key, value);
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

/// Parses `key=value` text (blank lines and '#' comments allowed) on top of
/// the given defaults. Does not call validate(); callers do that once all
/// overrides (CLI flags, scaling) are applied.
inline void apply_config_text(ExperimentConfig& c, const std::string& text)
{
    std::size_t start = 0;
    while (start <= text.size())
    {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos)
            nl = text.size();
        const std::string line = detail::trim(text.substr(start, nl - start));
        start = nl + 1;
        if (line.empty() || line[0] == '#')
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key=value, got '" + line + "'");
        apply_config_entry(c, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
}

/// FNV-1a over the canonical serialized form; identifies a configuration in
/// every output file header.
inline std::uint64_t config_hash(const ExperimentConfig& c)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (const char ch : serialize_config(c))
    {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Scales the dataset example counts: round(count * scale), clamped to at
/// least one window so a tiny factor cannot flip the count to zero (zero
/// means "keep every window" in the dataset builder).
inline void apply_scale(ExperimentConfig& c, double scale)
{
    if (!std::isfinite(scale) || !(scale > 0.0))
        throw ConfigError("config: scale must be a positive finite number");
    auto scaled = [&](std::size_t n) -> std::size_t {
        if (n == 0)
            return 0;
        const long long r = std::llround(static_cast<double>(n) * scale);
        return r < 1 ? std::size_t{1} : static_cast<std::size_t>(r);
    };
    c.windows_train = scaled(c.windows_train);
    c.windows_test = scaled(c.windows_test);
}

} // namespace kdml
