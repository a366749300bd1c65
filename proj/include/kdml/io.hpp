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
// Persistence layer: versioned little-endian binary containers for datasets
// and checkpoints, CSV results/loss tables, and whole-file atomic writes
// (temp file + rename). Every container embeds the config hash and seed so
// downstream stages can refuse mismatched inputs.

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <kdml/config.hpp>
#include <kdml/errors.hpp>
#include <kdml/pipeline.hpp>
#include <kdml/tensor.hpp>

namespace kdml {

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open file: " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (f.bad())
        throw IoError("read failed: " + path);
    return buf;
}

/// Whole-file atomic write: the payload lands under a temporary name first
/// and is renamed into place, so a crash never leaves a partial file behind
/// under the final name.
inline void atomic_write_file(const std::string& path, const std::string& payload)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open for writing: " + tmp);
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        f.flush();
        if (!f)
        {
            f.close();
            std::remove(tmp.c_str());
            throw IoError("write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
    {
        std::remove(tmp.c_str());
        throw IoError("cannot move into place: " + path);
    }
}

// ---------------------------------------------------------------------------
// Little-endian encoding
// ---------------------------------------------------------------------------

namespace detail {

struct ByteWriter {
    std::string buf;

    void raw(const void* p, std::size_t n)
    {
        buf.append(static_cast<const char*>(p), n);
    }
    void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
    }
    void u64(std::uint64_t v)
    {
        for (int i = 0; i < 8; ++i)
            buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s)
    {
        u64(s.size());
        raw(s.data(), s.size());
    }
    void mat(const Mat& m)
    {
        u64(m.rows);
        u64(m.cols);
        for (const double v : m.a)
            f64(v);
    }
};

struct ByteReader {
    const std::string& buf;
    std::size_t off = 0;

    explicit ByteReader(const std::string& b) : buf(b) {}

    void need(std::size_t n) const
    {
        if (n > buf.size() - off)
            throw IoError("truncated input");
    }
    std::uint8_t u8()
    {
        need(1);
        return static_cast<std::uint8_t>(buf[off++]);
    }
    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[off++])) << (8 * i);
        return v;
    }
    std::uint64_t u64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[off++])) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str()
    {
        const std::uint64_t n = u64();
        if (n > (1u << 20))
            throw IoError("unreasonable string length");
        need(static_cast<std::size_t>(n));
        std::string s = buf.substr(off, static_cast<std::size_t>(n));
        off += static_cast<std::size_t>(n);
        return s;
    }
    Mat mat()
    {
        const std::uint64_t rows = u64();
        const std::uint64_t cols = u64();
        if (rows > (1u << 28) || cols > (1u << 28))
            throw IoError("unreasonable matrix shape");
        need(static_cast<std::size_t>(rows * cols) * 8);
        Mat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
        for (double& v : m.a)
            v = f64();
        return m;
    }
    void expect_magic(const char (&magic)[9])
    {
        need(8);
        if (buf.compare(off, 8, magic, 8) != 0)
            throw IoError("bad magic (not a " + std::string(magic) + " file)");
        off += 8;
    }
    void expect_end() const
    {
        if (off != buf.size())
            throw IoError("trailing bytes after payload");
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Cell dataset container ("KDMLDSET" version 1)
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kDatasetVersion = 1;
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Serializes a cell dataset. The binary file gets a plain-text sidecar
/// `<path>.cfg` holding the full key=value configuration dump.
inline void save_dataset(const std::string& path, const CellDataset& ds,
                         const ExperimentConfig& cfg)
{
    detail::ByteWriter w;
    w.raw("KDMLDSET", 8);
    w.u32(kDatasetVersion);
    w.u64(config_hash(cfg));
    w.u64(ds.seed);
    w.f64(ds.snr_db);
    w.u64(ds.nps);
    w.u64(ds.n_steps);
    w.u64(ds.horizon);
    w.u64(ds.pos_train.size());
    w.u64(ds.pos_test.size());
    w.u64(ds.source.size());
    auto put_pos = [&](const std::vector<WindowPosition>& pos) {
        for (const WindowPosition& p : pos)
        {
            w.u32(p.frame);
            w.u32(p.subcarrier);
            w.u32(p.symbol);
        }
    };
    put_pos(ds.pos_train);
    put_pos(ds.pos_test);
    w.mat(ds.truth_test);
    for (const CellDataset::PerSource& s : ds.source)
    {
        w.mat(s.x_train);
        w.mat(s.y_train);
        w.mat(s.x_test);
        w.mat(s.y_test);
    }
    atomic_write_file(path, w.buf);
    atomic_write_file(path + ".cfg", serialize_config(cfg));
}

inline CellDataset load_dataset(const std::string& path)
{
    const std::string raw = read_file(path);
    try
    {
        detail::ByteReader r(raw);
        r.expect_magic("KDMLDSET");
        const std::uint32_t version = r.u32();
        if (version != kDatasetVersion)
            throw IoError("unsupported dataset version " + std::to_string(version));
        CellDataset ds;
        ds.config_hash = r.u64();
        ds.seed = r.u64();
        ds.snr_db = r.f64();
        ds.nps = r.u64();
        ds.n_steps = r.u64();
        ds.horizon = r.u64();
        const std::uint64_t n_train = r.u64();
        const std::uint64_t n_test = r.u64();
        const std::uint64_t n_sources = r.u64();
        if (n_sources != ds.source.size())
            throw IoError("unexpected source count " + std::to_string(n_sources));
        if (ds.n_steps == 0 || ds.horizon == 0)
            throw IoError("corrupt dataset dimensions");
        auto get_pos = [&](std::uint64_t n) {
            std::vector<WindowPosition> pos(static_cast<std::size_t>(n));
            for (WindowPosition& p : pos)
            {
                p.frame = r.u32();
                p.subcarrier = r.u32();
                p.symbol = r.u32();
            }
            return pos;
        };
        ds.pos_train = get_pos(n_train);
        ds.pos_test = get_pos(n_test);
        ds.truth_test = r.mat();
        for (CellDataset::PerSource& s : ds.source)
        {
            s.x_train = r.mat();
            s.y_train = r.mat();
            s.x_test = r.mat();
            s.y_test = r.mat();
            if (s.x_train.rows != n_train || s.y_train.rows != n_train ||
                s.x_test.rows != n_test || s.y_test.rows != n_test ||
                s.x_train.cols != ds.n_steps * 2 || s.x_test.cols != ds.n_steps * 2 ||
                s.y_train.cols != ds.horizon * 2 || s.y_test.cols != ds.horizon * 2)
                throw IoError("dataset matrices disagree with header counts");
        }
        if (ds.truth_test.rows != n_test || ds.truth_test.cols != ds.horizon * 2)
            throw IoError("dataset truth targets disagree with header counts");
        r.expect_end();
        return ds;
    }
    catch (const IoError& e)
    {
        throw IoError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Checkpoint container ("KDMLCKPT" version 1)
// ---------------------------------------------------------------------------

struct CheckpointMeta {
    std::string variant;
    double snr_db = 0.0;
    std::uint64_t nps = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

struct Checkpoint {
    TrainedNet net;
    CheckpointMeta meta;
};

namespace detail {

inline std::vector<std::string> tensor_name_list(const TrainedNet& net)
{
    if (net.is_mlp)
        return net.mlp.tensor_names();
    std::vector<std::string> names;
    for (const char* n : LstmParams::tensor_names())
        names.emplace_back(n);
    return names;
}

inline void net_dims(const TrainedNet& net, std::uint64_t& input, std::uint64_t& hidden,
                     std::uint64_t& output, std::uint64_t& depth)
{
    if (net.is_mlp)
    {
        require(!net.mlp.w.empty(), "checkpoint: empty MLP");
        input = net.mlp.w.front().rows;
        hidden = net.mlp.w.front().cols;
        output = net.mlp.w.back().cols;
        depth = net.mlp.w.size();
    }
    else
    {
        require(net.lstm.w_f.cols > 0 && net.lstm.w_f.rows > net.lstm.w_f.cols,
                "checkpoint: empty LSTM");
        hidden = net.lstm.w_f.cols;
        input = net.lstm.w_f.rows - hidden;
        output = net.lstm.w_g.cols;
        depth = 0;
    }
}

} // namespace detail

inline void save_checkpoint(const std::string& path, const TrainedNet& net,
                            const CheckpointMeta& meta)
{
    detail::ByteWriter w;
    w.raw("KDMLCKPT", 8);
    w.u32(kCheckpointVersion);
    w.u8(net.is_mlp ? 1 : 0);
    w.str(meta.variant);
    w.f64(meta.snr_db);
    w.u64(meta.nps);
    w.u64(meta.seed);
    w.u64(meta.config_hash);
    w.f64(net.norm.mu_re);
    w.f64(net.norm.mu_im);
    w.f64(net.norm.scale);
    std::uint64_t input = 0, hidden = 0, output = 0, depth = 0;
    detail::net_dims(net, input, hidden, output, depth);
    w.u64(input);
    w.u64(hidden);
    w.u64(output);
    w.u64(depth);

    const std::vector<std::string> names = detail::tensor_name_list(net);
    const auto tensors = net.is_mlp ? net.mlp.tensors() : net.lstm.tensors();
    w.u64(tensors.size());
    for (std::size_t i = 0; i < tensors.size(); ++i)
    {
        w.str(names[i]);
        w.mat(*tensors[i]);
    }
    atomic_write_file(path, w.buf);
}

inline Checkpoint load_checkpoint(const std::string& path)
{
    const std::string raw = read_file(path);
    try
    {
        detail::ByteReader r(raw);
        r.expect_magic("KDMLCKPT");
        const std::uint32_t version = r.u32();
        if (version != kCheckpointVersion)
            throw IoError("unsupported checkpoint version " + std::to_string(version));
        Checkpoint ck;
        ck.net.is_mlp = r.u8() != 0;
        ck.meta.variant = r.str();
        ck.meta.snr_db = r.f64();
        ck.meta.nps = r.u64();
        ck.meta.seed = r.u64();
        ck.meta.config_hash = r.u64();
        ck.net.norm.mu_re = r.f64();
        ck.net.norm.mu_im = r.f64();
        ck.net.norm.scale = r.f64();
        const std::uint64_t input = r.u64();
        const std::uint64_t hidden = r.u64();
        const std::uint64_t output = r.u64();
        const std::uint64_t depth = r.u64();

        if (ck.net.is_mlp)
            ck.net.mlp = make_mlp_zeros(MlpConfig{.input_size = static_cast<std::size_t>(input),
                                                  .hidden_size = static_cast<std::size_t>(hidden),
                                                  .output_size = static_cast<std::size_t>(output),
                                                  .depth = static_cast<std::size_t>(depth)});
        else
            ck.net.lstm =
                make_lstm_zeros(LstmConfig{.input_size = static_cast<std::size_t>(input),
                                           .hidden_size = static_cast<std::size_t>(hidden),
                                           .output_size = static_cast<std::size_t>(output)});

        const std::vector<std::string> names = detail::tensor_name_list(ck.net);
        const auto tensors = ck.net.is_mlp ? ck.net.mlp.tensors() : ck.net.lstm.tensors();
        const std::uint64_t n_tensors = r.u64();
        if (n_tensors != tensors.size())
            throw IoError("unexpected tensor count " + std::to_string(n_tensors));
        for (std::size_t i = 0; i < tensors.size(); ++i)
        {
            const std::string name = r.str();
            if (name != names[i])
                throw IoError("unexpected tensor '" + name + "', wanted '" + names[i] + "'");
            Mat m = r.mat();
            if (m.rows != tensors[i]->rows || m.cols != tensors[i]->cols)
                throw IoError("tensor '" + name + "' has the wrong shape");
            *tensors[i] = std::move(m);
        }
        r.expect_end();
        return ck;
    }
    catch (const ConfigError& e)
    {
        throw IoError(path + ": corrupt dimensions: " + e.what());
    }
    catch (const IoError& e)
    {
        throw IoError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

inline constexpr const char kResultsCsvHeader[] = "estimator,snr_db,nps,mse,seed,wall_ms";

/// One results row; mse and snr carry 17 significant digits so parsing the
/// file back reproduces the doubles exactly.
inline std::string format_result_row(const ExperimentResult& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%llu,%.17g,%llu,%.3f", r.estimator.c_str(), r.snr_db,
                  static_cast<unsigned long long>(r.nps), r.mse,
                  static_cast<unsigned long long>(r.seed), r.wall_ms);
    return buf;
}

inline std::string format_results_csv(const std::vector<ExperimentResult>& rows)
{
    std::string out = kResultsCsvHeader;
    out += '\n';
    for (const ExperimentResult& r : rows)
    {
        out += format_result_row(r);
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos)
        {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline double csv_double(const std::string& s)
{
    const char* p = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p || *end != '\0')
        throw IoError("results csv: bad number '" + s + "'");
    return v;
}

inline std::uint64_t csv_u64(const std::string& s)
{
    const char* p = s.c_str();
    if (*p == '-')
        throw IoError("results csv: negative count '" + s + "'");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(p, &end, 10);
    if (end == p || *end != '\0')
        throw IoError("results csv: bad integer '" + s + "'");
    return v;
}

} // namespace detail

inline std::vector<ExperimentResult> parse_results_csv(const std::string& text)
{
    std::vector<ExperimentResult> rows;
    std::size_t start = 0;
    bool saw_header = false;
    while (start < text.size())
    {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos)
            nl = text.size();
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        start = nl + 1;
        if (line.empty())
            continue;
        if (!saw_header)
        {
            if (line != kResultsCsvHeader)
                throw IoError("results csv: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        const auto f = detail::split_csv_line(line);
        if (f.size() != 6)
            throw IoError("results csv: expected 6 fields, got " + std::to_string(f.size()));
        ExperimentResult r;
        r.estimator = f[0];
        r.snr_db = detail::csv_double(f[1]);
        r.nps = static_cast<std::size_t>(detail::csv_u64(f[2]));
        r.mse = detail::csv_double(f[3]);
        r.seed = detail::csv_u64(f[4]);
        r.wall_ms = detail::csv_double(f[5]);
        rows.push_back(std::move(r));
    }
    if (!saw_header)
        throw IoError("results csv: missing header");
    return rows;
}

/// Per-epoch training losses, 1-based epochs.
inline std::string format_loss_csv(const std::vector<double>& losses)
{
    std::string out = "epoch,loss\n";
    char buf[64];
    for (std::size_t i = 0; i < losses.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i + 1, losses[i]);
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Output file naming
// ---------------------------------------------------------------------------

inline std::string snr_token(double snr)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", snr);
    return buf;
}

inline std::string cell_suffix(double snr, std::size_t nps, std::uint64_t seed)
{
    return "snr" + snr_token(snr) + "_nps" + std::to_string(nps) + "_seed" +
           std::to_string(seed);
}

inline std::string dataset_filename(double snr, std::size_t nps, std::uint64_t seed)
{
    return "ds_" + cell_suffix(snr, nps, seed) + ".bin";
}

inline std::string checkpoint_filename(const std::string& variant, double snr, std::size_t nps,
                                       std::uint64_t seed)
{
    return "ckpt_" + variant + "_" + cell_suffix(snr, nps, seed) + ".bin";
}

inline std::string loss_filename(const std::string& variant, double snr, std::size_t nps,
                                 std::uint64_t seed)
{
    return "loss_" + variant + "_" + cell_suffix(snr, nps, seed) + ".csv";
}

} // namespace kdml
