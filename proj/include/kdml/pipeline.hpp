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
// End-to-end experiment cells. One cell = one (SNR, pilot spacing, seed)
// triple; within a cell every estimator sees exactly the same frames, channel
// realizations and noise (common random numbers), so estimator differences
// are paired. Refiner networks are trained on rough estimates only — ground
// truth enters nothing but the final scoring.
//
// Seed discipline: every random stream is derived from the master seed and a
// purpose string (derive_seed). Channel/bits/noise streams depend only on the
// split and frame index — not on the estimator — while initialization and
// shuffling streams are per-variant.

#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <kdml/channel.hpp>
#include <kdml/dataset.hpp>
#include <kdml/errors.hpp>
#include <kdml/estimators.hpp>
#include <kdml/lstm.hpp>
#include <kdml/mlp.hpp>
#include <kdml/ofdm.hpp>
#include <kdml/rng.hpp>
#include <kdml/train.hpp>

namespace kdml {

/// Everything that varies between experiment cells, with full-scale defaults.
struct ExperimentConfig {
    OfdmConfig ofdm{};          ///< 1024-point grid, comb pilots every nps bins
    ChannelDrawOptions draw{};  ///< 3-path profile, taps within the prefix
    // Many short frames beat few long ones: each frame is an independent
    // channel draw, and refiner generalization is limited by the number of
    // draws seen in training, not by windows per draw.
    std::size_t symbols_per_frame = 32;
    std::size_t frames_train = 16;
    std::size_t frames_test = 4;
    std::size_t windows_train = 27000; ///< 0 keeps every available window
    std::size_t windows_test = 3000;
    std::size_t n_steps = 8;  ///< window length fed to the refiners
    std::size_t horizon = 1;  ///< symbols predicted ahead
    std::size_t hidden = 128;
    std::size_t mlp_depth = 6;
    std::size_t mmse_window = 32; ///< trailing symbols for the autocorrelation
    std::size_t epochs = 100;
    std::size_t batch_size = 500;
    double learning_rate = 0.01;
    double forget_bias = 0.0; ///< optional LSTM forget-gate bias offset at init
    double snr_db = 10.0;
    std::uint64_t seed = 1;

    void validate() const
    {
        kdml::validate(ofdm);
        kdml::validate(draw, ofdm);
        if (symbols_per_frame < n_steps + horizon)
            throw ConfigError("experiment: frames are shorter than one window");
        if (frames_train == 0 || frames_test == 0)
            throw ConfigError("experiment: need at least one train and one test frame");
        if (n_steps == 0 || horizon == 0 || hidden == 0)
            throw ConfigError("experiment: n_steps, horizon and hidden must be positive");
        if (mmse_window == 0)
            throw ConfigError("experiment: mmse_window must be positive");
        if (epochs > 0 && batch_size == 0)
            throw ConfigError("experiment: batch_size must be positive");
        if (!(learning_rate > 0.0))
            throw ConfigError("experiment: learning_rate must be positive");
        if (!std::isfinite(forget_bias))
            throw ConfigError("experiment: forget_bias must be finite");
        if (std::isnan(snr_db))
            throw ConfigError("experiment: snr_db must not be NaN");
    }
};

/// The estimators a cell can score.
enum class Variant { ls, mmse_sim, kdml_ls, kdml_mmse, kdml_h, mlp };

inline const char* to_string(Variant v)
{
    switch (v)
    {
    case Variant::ls: return "ls";
    case Variant::mmse_sim: return "mmse-sim";
    case Variant::kdml_ls: return "kdml-ls";
    case Variant::kdml_mmse: return "kdml-mmse";
    case Variant::kdml_h: return "kdml-h";
    case Variant::mlp: return "mlp";
    }
    throw std::invalid_argument("unknown variant");
}

inline Variant variant_from_string(const std::string& s)
{
    if (s == "mmse") // common shorthand on the command line
        return Variant::mmse_sim;
    for (Variant v : {Variant::ls, Variant::mmse_sim, Variant::kdml_ls, Variant::kdml_mmse,
                      Variant::kdml_h, Variant::mlp})
        if (s == to_string(v))
            return v;
    throw ConfigError("unknown variant '" + s + "'");
}

inline std::vector<Variant> all_variants()
{
    return {Variant::ls, Variant::mmse_sim, Variant::kdml_ls, Variant::kdml_mmse, Variant::kdml_h,
            Variant::mlp};
}

/// One CSV row of the results table.
struct ExperimentResult {
    std::string estimator;
    double snr_db = 0.0;
    std::size_t nps = 0;
    double mse = 0.0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

// ---------------------------------------------------------------------------
// Frame simulation
// ---------------------------------------------------------------------------

struct SimulatedFrame {
    FrameGrid frame;
    ChannelRealization chan;
};

/// Simulates one frame of a split ("train"/"test"). The channel, payload bits
/// and noise each use their own purpose-derived stream keyed by split and
/// frame index only, so every estimator variant sees identical data.
inline SimulatedFrame simulate_frame(const ExperimentConfig& cfg, const std::string& split,
                                     std::size_t index)
{
    const std::string tag = split + "/" + std::to_string(index);
    Rng chan_rng(derive_seed(cfg.seed, "chan/" + tag));
    Rng bits_rng(derive_seed(cfg.seed, "bits/" + tag));
    Rng noise_rng(derive_seed(cfg.seed, "noise/" + tag));

    SimulatedFrame sf;
    const MultipathProfile profile = draw_multipath_profile(cfg.draw, cfg.ofdm, chan_rng);
    sf.chan = realize_channel(profile, cfg.ofdm, symbol_times(cfg.ofdm, cfg.symbols_per_frame));
    sf.frame = make_frame(cfg.ofdm, cfg.symbols_per_frame, bits_rng);
    sf.frame.snr_db = cfg.snr_db;
    sf.frame.rx = apply_channel(sf.frame.tx, sf.chan.freq_response, cfg.snr_db, noise_rng,
                                &sf.frame.noise_var);
    return sf;
}

/// Full-grid rough estimate for a knowledge source. The MMSE path degrades to
/// plain LS when the sampled autocorrelation is numerically singular; the
/// knowledge module must always produce something for the refiner to consume.
inline CGrid rough_grid(const SimulatedFrame& sf, const OfdmConfig& ofdm, EstimatorSource source,
                        std::size_t mmse_window)
{
    switch (source)
    {
    case EstimatorSource::true_csi:
        return sf.chan.freq_response;
    case EstimatorSource::ls:
        return interpolate_linear(ls_estimate(sf.frame), ofdm).estimates;
    case EstimatorSource::mmse:
    {
        const EstimateSeries ls = ls_estimate(sf.frame);
        // Unit-energy constellations: sigma_x^2 = 1, so the filter ratio is
        // the recorded per-frame noise variance.
        try
        {
            const MmseContext ctx = make_mmse_context(ls, ofdm, mmse_window, sf.frame.noise_var);
            return interpolate_linear(mmse_estimate(ls, ofdm, ctx), ofdm).estimates;
        }
        catch (const NumericalError&)
        {
            return interpolate_linear(ls, ofdm).estimates;
        }
    }
    default:
        throw std::invalid_argument("rough_grid: source must be ls, mmse or true_csi");
    }
}

// ---------------------------------------------------------------------------
// Refiner training and evaluation
// ---------------------------------------------------------------------------

/// A trained refiner plus the input normalization it was fitted with.
struct TrainedNet {
    bool is_mlp = false;
    LstmParams lstm;
    MlpParams mlp;
    Normalization norm;
    std::vector<double> epoch_loss;
};

namespace detail {

inline EstimatorSource source_for(Variant v)
{
    switch (v)
    {
    case Variant::ls:
    case Variant::kdml_ls:
    case Variant::mlp: return EstimatorSource::ls;
    case Variant::mmse_sim:
    case Variant::kdml_mmse: return EstimatorSource::mmse;
    case Variant::kdml_h: return EstimatorSource::true_csi;
    }
    throw std::invalid_argument("unknown variant");
}

inline bool is_net_variant(Variant v)
{
    return v == Variant::kdml_ls || v == Variant::kdml_mmse || v == Variant::kdml_h ||
           v == Variant::mlp;
}

} // namespace detail

/// Trains the refiner for a net variant on an already-windowed training set
/// (taken by value: normalization rewrites it in place). Targets are the
/// rough estimates themselves, never ground truth. Fully deterministic in
/// cfg.seed and the variant name.
inline TrainedNet train_refiner_on(const ExperimentConfig& cfg, Variant v, WindowedDataset ds)
{
    detail::require(detail::is_net_variant(v), "train_refiner: not a trainable variant");
    const std::string name = to_string(v);

    TrainedNet net;
    net.norm = fit_normalization(ds.x);
    normalize_pairs(ds.x, net.norm);
    normalize_pairs(ds.y, net.norm);

    Rng init_rng(derive_seed(cfg.seed, "init/" + name));
    Rng shuffle_rng(derive_seed(cfg.seed, "shuffle/" + name));

    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.batch_size = cfg.batch_size;
    tc.adam.lr = cfg.learning_rate;

    if (v == Variant::mlp)
    {
        net.is_mlp = true;
        MlpConfig mc{.input_size = cfg.n_steps * 2,
                     .hidden_size = cfg.hidden,
                     .output_size = cfg.horizon * 2,
                     .depth = cfg.mlp_depth};
        net.mlp = make_mlp_params(mc, init_rng);
        MlpParams grads = make_mlp_zeros(mc);
        MlpCache cache;
        net.epoch_loss = train_minibatch(
            net.mlp.tensors(), std::as_const(grads).tensors(),
            [&](const Mat& xb, const Mat& yb) { return mlp_loss_grad(net.mlp, xb, yb, grads, cache); },
            ds.x, ds.y, tc, shuffle_rng);
    }
    else
    {
        LstmConfig lc{.input_size = 2,
                      .hidden_size = cfg.hidden,
                      .output_size = cfg.horizon * 2,
                      .forget_bias = cfg.forget_bias};
        net.lstm = make_lstm_params(lc, init_rng);
        LstmParams grads = make_lstm_zeros(lc);
        LstmCache cache;
        net.epoch_loss = train_minibatch(
            net.lstm.tensors(), std::as_const(grads).tensors(),
            [&](const Mat& xb, const Mat& yb) { return lstm_loss_grad(net.lstm, xb, yb, grads, cache); },
            ds.x, ds.y, tc, shuffle_rng);
    }
    return net;
}

/// Convenience overload: windows the training grids first.
inline TrainedNet train_refiner(const ExperimentConfig& cfg, Variant v,
                                const std::vector<const CGrid*>& train_grids)
{
    return train_refiner_on(cfg, v,
                            build_dataset(train_grids, cfg.n_steps, cfg.horizon, cfg.windows_train));
}

/// Batched refiner inference on raw (unnormalized) window inputs; returns
/// denormalized complex predictions, one row of `horizon` re/im pairs per
/// window. Chunked so evaluation memory stays bounded.
inline Mat predict_refiner(const TrainedNet& net, const Mat& x_raw, std::size_t chunk = 512)
{
    detail::require(chunk > 0, "predict_refiner: chunk must be positive");
    Mat out;
    LstmCache cache;
    for (std::size_t lo = 0; lo < x_raw.rows; lo += chunk)
    {
        const std::size_t hi = std::min(x_raw.rows, lo + chunk);
        Mat xb(hi - lo, x_raw.cols);
        for (std::size_t r = lo; r < hi; ++r)
            for (std::size_t j = 0; j < x_raw.cols; ++j)
                xb(r - lo, j) = x_raw(r, j);
        normalize_pairs(xb, net.norm);

        Mat yb;
        if (net.is_mlp)
            yb = mlp_predict(net.mlp, xb);
        else
        {
            lstm_batch_forward(net.lstm, xb, cache);
            yb = cache.y.back();
        }
        denormalize_pairs(yb, net.norm);
        if (out.rows == 0)
            out = Mat(x_raw.rows, yb.cols);
        for (std::size_t r = lo; r < hi; ++r)
            for (std::size_t j = 0; j < yb.cols; ++j)
                out(r, j) = yb(r - lo, j);
    }
    return out;
}

/// Mean squared error of predictions against ground truth at the dataset's
/// predicted positions (all `horizon` symbols of every window).
inline double mse_predictions(const Mat& pred, const WindowedDataset& ds,
                              const std::vector<const CGrid*>& truth)
{
    detail::require(pred.rows == ds.size() && pred.cols == ds.horizon * 2,
                    "mse_predictions: prediction shape mismatch");
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < pred.rows; ++r)
    {
        const WindowPosition& p = ds.pos[r];
        for (std::size_t s = 0; s < ds.horizon; ++s)
        {
            const cplx got{pred(r, 2 * s), pred(r, 2 * s + 1)};
            const cplx want = (*truth[p.frame])(p.symbol + s, p.subcarrier);
            acc += std::norm(got - want);
            ++count;
        }
    }
    return acc / static_cast<double>(count);
}

/// MSE between row-aligned matrices of re/im pairs. Accumulates in the same
/// order and with the same expression as mse_predictions, so scoring stored
/// targets reproduces in-process grid scoring bitwise.
inline double mse_rows(const Mat& pred, const Mat& want)
{
    detail::require(pred.rows == want.rows && pred.cols == want.cols, "mse_rows: shape mismatch");
    detail::require(pred.rows > 0 && pred.cols > 0 && pred.cols % 2 == 0,
                    "mse_rows: need nonempty re/im pair rows");
    const std::size_t pairs = pred.cols / 2;
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < pred.rows; ++r)
        for (std::size_t s = 0; s < pairs; ++s)
        {
            const cplx got{pred(r, 2 * s), pred(r, 2 * s + 1)};
            const cplx ref{want(r, 2 * s), want(r, 2 * s + 1)};
            acc += std::norm(got - ref);
            ++count;
        }
    return acc / static_cast<double>(count);
}

/// Baseline score: the rough grid itself, read at the same predicted
/// positions the refiners are scored on.
inline double mse_grid_at_positions(const std::vector<const CGrid*>& est,
                                    const std::vector<const CGrid*>& truth,
                                    const std::vector<WindowPosition>& pos, std::size_t horizon)
{
    detail::require(!pos.empty() && horizon > 0, "mse_grid_at_positions: empty scoring set");
    double acc = 0.0;
    std::size_t count = 0;
    for (const WindowPosition& p : pos)
        for (std::size_t s = 0; s < horizon; ++s)
        {
            acc += std::norm((*est[p.frame])(p.symbol + s, p.subcarrier) -
                             (*truth[p.frame])(p.symbol + s, p.subcarrier));
            ++count;
        }
    return acc / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Materialized cells
// ---------------------------------------------------------------------------

/// The knowledge sources a dataset is generated for, in storage order.
inline constexpr std::array<EstimatorSource, 3> knowledge_sources{
    EstimatorSource::ls, EstimatorSource::mmse, EstimatorSource::true_csi};

inline std::size_t source_index(EstimatorSource s)
{
    switch (s)
    {
    case EstimatorSource::ls: return 0;
    case EstimatorSource::mmse: return 1;
    case EstimatorSource::true_csi: return 2;
    default: throw std::invalid_argument("source_index: not a knowledge source");
    }
}

/// Everything the file-based train/evaluate flow needs for one experiment
/// cell: windowed inputs and targets for every knowledge source plus ground
/// truth at the test predicted positions. Construction follows the same code
/// paths as run_cell, so file-based results reproduce in-process ones.
struct CellDataset {
    std::uint64_t config_hash = 0; ///< filled when the dataset is saved/loaded
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    std::uint64_t nps = 0;
    std::uint64_t n_steps = 0;
    std::uint64_t horizon = 0;
    std::vector<WindowPosition> pos_train, pos_test; ///< shared by all sources
    Mat truth_test; ///< true channel at the test predicted positions

    struct PerSource {
        Mat x_train, y_train, x_test, y_test;
    };
    std::array<PerSource, 3> source; ///< indexed by source_index()

    WindowedDataset train_set(EstimatorSource s) const
    {
        const PerSource& p = source[source_index(s)];
        return WindowedDataset{n_steps, horizon, p.x_train, p.y_train, pos_train};
    }
    WindowedDataset test_set(EstimatorSource s) const
    {
        const PerSource& p = source[source_index(s)];
        return WindowedDataset{n_steps, horizon, p.x_test, p.y_test, pos_test};
    }
};

namespace detail {

inline std::vector<const CGrid*> grid_ptrs_of(const std::vector<CGrid>& grids)
{
    std::vector<const CGrid*> p;
    p.reserve(grids.size());
    for (const CGrid& g : grids)
        p.push_back(&g);
    return p;
}

} // namespace detail

/// Simulates a full cell and windows it for every knowledge source. The
/// config hash is left for the persistence layer to fill.
inline CellDataset make_cell_dataset(const ExperimentConfig& cfg)
{
    cfg.validate();
    CellDataset out;
    out.seed = cfg.seed;
    out.snr_db = cfg.snr_db;
    out.nps = cfg.ofdm.nps;
    out.n_steps = cfg.n_steps;
    out.horizon = cfg.horizon;

    std::vector<SimulatedFrame> train_frames, test_frames;
    for (std::size_t i = 0; i < cfg.frames_train; ++i)
        train_frames.push_back(simulate_frame(cfg, "train", i));
    for (std::size_t i = 0; i < cfg.frames_test; ++i)
        test_frames.push_back(simulate_frame(cfg, "test", i));

    for (std::size_t si = 0; si < knowledge_sources.size(); ++si)
    {
        const EstimatorSource s = knowledge_sources[si];
        std::vector<CGrid> tr, te;
        for (const SimulatedFrame& sf : train_frames)
            tr.push_back(rough_grid(sf, cfg.ofdm, s, cfg.mmse_window));
        for (const SimulatedFrame& sf : test_frames)
            te.push_back(rough_grid(sf, cfg.ofdm, s, cfg.mmse_window));
        WindowedDataset dtr = build_dataset(detail::grid_ptrs_of(tr), cfg.n_steps, cfg.horizon,
                                            cfg.windows_train);
        WindowedDataset dte = build_dataset(detail::grid_ptrs_of(te), cfg.n_steps, cfg.horizon,
                                            cfg.windows_test);
        if (si == 0)
        {
            out.pos_train = std::move(dtr.pos);
            out.pos_test = std::move(dte.pos);
        }
        // Window positions depend only on grid shape, which is identical
        // across sources, so they are stored once.
        out.source[si] = CellDataset::PerSource{std::move(dtr.x), std::move(dtr.y),
                                                std::move(dte.x), std::move(dte.y)};
    }

    out.truth_test = Mat(out.pos_test.size(), cfg.horizon * 2);
    for (std::size_t r = 0; r < out.pos_test.size(); ++r)
    {
        const WindowPosition& p = out.pos_test[r];
        const CGrid& truth = test_frames[p.frame].chan.freq_response;
        for (std::size_t s = 0; s < cfg.horizon; ++s)
        {
            const cplx v = truth(p.symbol + s, p.subcarrier);
            out.truth_test(r, 2 * s) = v.real();
            out.truth_test(r, 2 * s + 1) = v.imag();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Whole cells
// ---------------------------------------------------------------------------

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace detail

/// Runs the requested estimators for one cell and returns one result row per
/// estimator, in canonical variant order. Simulation is shared: per-variant
/// wall_ms covers the variant-specific work (rough estimation of its source on
/// the test split is attributed to baselines; dataset building, training and
/// inference to the nets), not the common frame synthesis.
inline std::vector<ExperimentResult> run_cell(const ExperimentConfig& cfg,
                                              const std::vector<Variant>& variants)
{
    cfg.validate();
    detail::require(!variants.empty(), "run_cell: no variants requested");

    auto wants = [&](Variant v) {
        for (Variant w : variants)
            if (w == v)
                return true;
        return false;
    };

    std::vector<SimulatedFrame> train_frames, test_frames;
    for (std::size_t i = 0; i < cfg.frames_train; ++i)
        train_frames.push_back(simulate_frame(cfg, "train", i));
    for (std::size_t i = 0; i < cfg.frames_test; ++i)
        test_frames.push_back(simulate_frame(cfg, "test", i));

    std::vector<const CGrid*> truth_test;
    for (const SimulatedFrame& sf : test_frames)
        truth_test.push_back(&sf.chan.freq_response);

    // Rough grids per knowledge source, computed at most once per split.
    struct SourceGrids {
        bool train_ready = false, test_ready = false;
        std::vector<CGrid> train, test;
        double test_ms = 0.0; ///< wall time of the test-split estimation
    };
    SourceGrids by_source[3]; // indexed by EstimatorSource ls/mmse/true_csi

    auto slot = [&](EstimatorSource s) -> SourceGrids& {
        switch (s)
        {
        case EstimatorSource::ls: return by_source[0];
        case EstimatorSource::mmse: return by_source[1];
        default: return by_source[2];
        }
    };
    auto ensure_train = [&](EstimatorSource s) -> std::vector<CGrid>& {
        SourceGrids& g = slot(s);
        if (!g.train_ready)
        {
            for (const SimulatedFrame& sf : train_frames)
                g.train.push_back(rough_grid(sf, cfg.ofdm, s, cfg.mmse_window));
            g.train_ready = true;
        }
        return g.train;
    };
    auto ensure_test = [&](EstimatorSource s) -> std::vector<CGrid>& {
        SourceGrids& g = slot(s);
        if (!g.test_ready)
        {
            const auto t0 = std::chrono::steady_clock::now();
            for (const SimulatedFrame& sf : test_frames)
                g.test.push_back(rough_grid(sf, cfg.ofdm, s, cfg.mmse_window));
            g.test_ms = detail::ms_since(t0);
            g.test_ready = true;
        }
        return g.test;
    };

    std::vector<ExperimentResult> results;
    for (Variant v : all_variants())
    {
        if (!wants(v))
            continue;
        ExperimentResult row;
        row.estimator = to_string(v);
        row.snr_db = cfg.snr_db;
        row.nps = cfg.ofdm.nps;
        row.seed = cfg.seed;

        const EstimatorSource src = detail::source_for(v);
        if (!detail::is_net_variant(v))
        {
            const std::vector<CGrid>& test_grids = ensure_test(src);
            const auto t0 = std::chrono::steady_clock::now();
            // Score at exactly the positions the refiners predict.
            const WindowedDataset ds = build_dataset(detail::grid_ptrs_of(test_grids), cfg.n_steps,
                                                     cfg.horizon, cfg.windows_test);
            row.mse = mse_grid_at_positions(detail::grid_ptrs_of(test_grids), truth_test, ds.pos,
                                            cfg.horizon);
            row.wall_ms = slot(src).test_ms + detail::ms_since(t0);
        }
        else
        {
            const std::vector<CGrid>& train_grids = ensure_train(src);
            const std::vector<CGrid>& test_grids = ensure_test(src);
            const auto t0 = std::chrono::steady_clock::now();
            const TrainedNet net = train_refiner(cfg, v, detail::grid_ptrs_of(train_grids));
            const WindowedDataset ds = build_dataset(detail::grid_ptrs_of(test_grids), cfg.n_steps,
                                                     cfg.horizon, cfg.windows_test);
            const Mat pred = predict_refiner(net, ds.x);
            row.mse = mse_predictions(pred, ds, truth_test);
            row.wall_ms = detail::ms_since(t0);
        }
        results.push_back(std::move(row));
    }
    return results;
}

inline std::vector<ExperimentResult> run_cell(const ExperimentConfig& cfg)
{
    return run_cell(cfg, all_variants());
}

} // namespace kdml
