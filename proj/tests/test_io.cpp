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

#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include <kdml/bench.hpp>
#include <kdml/config.hpp>
#include <kdml/io.hpp>
#include <kdml/pipeline.hpp>

using namespace kdml;

namespace {

namespace fs = std::filesystem;

/// Unique scratch path in the test working directory, removed on destruction.
struct ScratchFile {
    std::string path;
    explicit ScratchFile(const std::string& name) : path("io_test_" + name) { fs::remove(path); }
    ~ScratchFile()
    {
        fs::remove(path);
        fs::remove(path + ".tmp");
        fs::remove(path + ".cfg");
        fs::remove(path + ".cfg.tmp");
    }
};

ExperimentConfig tiny_cfg()
{
    ExperimentConfig cfg;
    cfg.ofdm.fft_size = 64;
    cfg.ofdm.subcarrier_spacing = 15e3;
    cfg.ofdm.sample_rate = 64 * 15e3;
    cfg.ofdm.cp_len = 8;
    cfg.ofdm.nps = 2;
    cfg.draw.max_delay_taps = 6;
    cfg.symbols_per_frame = 12;
    cfg.frames_train = 2;
    cfg.frames_test = 1;
    cfg.windows_train = 40;
    cfg.windows_test = 16;
    cfg.n_steps = 4;
    cfg.horizon = 1;
    cfg.hidden = 6;
    cfg.mmse_window = 8;
    cfg.epochs = 2;
    cfg.batch_size = 16;
    cfg.snr_db = 10.0;
    cfg.seed = 7;
    return cfg;
}

bool same_mat(const Mat& a, const Mat& b)
{
    return a.rows == b.rows && a.cols == b.cols && a.a == b.a;
}

} // namespace

// ---------------------------------------------------------------------------
// Atomic files
// ---------------------------------------------------------------------------

TEST_CASE("atomic_write_file round-trips bytes and leaves no temp file", "[io]")
{
    ScratchFile f("atomic.bin");
    std::string payload = "binary\0payload\xff\x01";
    payload += '\0'; // embedded NULs must survive
    atomic_write_file(f.path, payload);
    CHECK(read_file(f.path) == payload);
    CHECK_FALSE(fs::exists(f.path + ".tmp"));

    // Overwrite in place.
    atomic_write_file(f.path, "second");
    CHECK(read_file(f.path) == "second");
}

TEST_CASE("read_file reports missing files", "[io]")
{
    CHECK_THROWS_AS(read_file("io_test_definitely_missing.bin"), IoError);
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

TEST_CASE("LSTM checkpoints survive a save/load round trip bitwise", "[io]")
{
    Rng rng(derive_seed(99, "ckpt/lstm"));
    TrainedNet net;
    net.is_mlp = false;
    net.lstm = make_lstm_params(LstmConfig{.input_size = 2, .hidden_size = 5, .output_size = 2},
                                rng);
    net.norm = Normalization{0.125, -0.5, 1.75};

    CheckpointMeta meta;
    meta.variant = "kdml-ls";
    meta.snr_db = 12.5;
    meta.nps = 2;
    meta.seed = 42;
    meta.config_hash = 0x1234abcd5678ef00ull;

    ScratchFile f("ckpt_lstm.bin");
    save_checkpoint(f.path, net, meta);
    CHECK_FALSE(fs::exists(f.path + ".tmp"));

    const Checkpoint ck = load_checkpoint(f.path);
    CHECK_FALSE(ck.net.is_mlp);
    CHECK(ck.meta.variant == meta.variant);
    CHECK(ck.meta.snr_db == meta.snr_db);
    CHECK(ck.meta.nps == meta.nps);
    CHECK(ck.meta.seed == meta.seed);
    CHECK(ck.meta.config_hash == meta.config_hash);
    CHECK(ck.net.norm.mu_re == net.norm.mu_re);
    CHECK(ck.net.norm.mu_im == net.norm.mu_im);
    CHECK(ck.net.norm.scale == net.norm.scale);

    const auto got = ck.net.lstm.tensors();
    const auto want = net.lstm.tensors();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(same_mat(*got[i], *want[i]));
}

TEST_CASE("MLP checkpoints survive a save/load round trip bitwise", "[io]")
{
    Rng rng(derive_seed(99, "ckpt/mlp"));
    TrainedNet net;
    net.is_mlp = true;
    net.mlp = make_mlp_params(
        MlpConfig{.input_size = 8, .hidden_size = 4, .output_size = 2, .depth = 3}, rng);
    net.norm = Normalization{-1.0, 2.0, 0.5};

    CheckpointMeta meta;
    meta.variant = "mlp";
    meta.snr_db = std::numeric_limits<double>::infinity();
    meta.nps = 16;
    meta.seed = 3;
    meta.config_hash = 77;

    ScratchFile f("ckpt_mlp.bin");
    save_checkpoint(f.path, net, meta);
    const Checkpoint ck = load_checkpoint(f.path);

    CHECK(ck.net.is_mlp);
    CHECK(ck.meta.snr_db == meta.snr_db); // infinity must survive
    const auto got = ck.net.mlp.tensors();
    const auto want = net.mlp.tensors();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(same_mat(*got[i], *want[i]));

    // Predictions from the restored net match exactly.
    Mat x(3, 8);
    Rng xr(derive_seed(99, "ckpt/x"));
    fill_uniform(x, 1.0, xr);
    CHECK(same_mat(predict_refiner(ck.net, x), predict_refiner(net, x)));
}

TEST_CASE("corrupt checkpoints are rejected", "[io]")
{
    Rng rng(derive_seed(99, "ckpt/corrupt"));
    TrainedNet net;
    net.lstm = make_lstm_params(LstmConfig{.input_size = 2, .hidden_size = 3, .output_size = 2},
                                rng);
    ScratchFile f("ckpt_corrupt.bin");
    save_checkpoint(f.path, net, CheckpointMeta{});
    const std::string good = read_file(f.path);

    SECTION("bad magic")
    {
        std::string bad = good;
        bad[0] = 'X';
        atomic_write_file(f.path, bad);
        CHECK_THROWS_AS(load_checkpoint(f.path), IoError);
    }
    SECTION("unsupported version")
    {
        std::string bad = good;
        bad[8] = 99;
        atomic_write_file(f.path, bad);
        CHECK_THROWS_AS(load_checkpoint(f.path), IoError);
    }
    SECTION("truncation anywhere")
    {
        atomic_write_file(f.path, good.substr(0, good.size() / 2));
        CHECK_THROWS_AS(load_checkpoint(f.path), IoError);
        atomic_write_file(f.path, good.substr(0, 11));
        CHECK_THROWS_AS(load_checkpoint(f.path), IoError);
    }
    SECTION("trailing bytes")
    {
        atomic_write_file(f.path, good + "x");
        CHECK_THROWS_AS(load_checkpoint(f.path), IoError);
    }
}

// ---------------------------------------------------------------------------
// Cell datasets
// ---------------------------------------------------------------------------

TEST_CASE("cell datasets survive a save/load round trip bitwise", "[io]")
{
    const ExperimentConfig cfg = tiny_cfg();
    const CellDataset ds = make_cell_dataset(cfg);
    REQUIRE(ds.pos_train.size() == 40);
    REQUIRE(ds.pos_test.size() == 16);

    ScratchFile f("dataset.bin");
    save_dataset(f.path, ds, cfg);
    CHECK_FALSE(fs::exists(f.path + ".tmp"));

    const CellDataset got = load_dataset(f.path);
    CHECK(got.config_hash == config_hash(cfg));
    CHECK(got.seed == cfg.seed);
    CHECK(got.snr_db == cfg.snr_db);
    CHECK(got.nps == cfg.ofdm.nps);
    CHECK(got.n_steps == cfg.n_steps);
    CHECK(got.horizon == cfg.horizon);

    REQUIRE(got.pos_train.size() == ds.pos_train.size());
    for (std::size_t i = 0; i < ds.pos_train.size(); ++i)
    {
        CHECK(got.pos_train[i].frame == ds.pos_train[i].frame);
        CHECK(got.pos_train[i].subcarrier == ds.pos_train[i].subcarrier);
        CHECK(got.pos_train[i].symbol == ds.pos_train[i].symbol);
    }
    CHECK(same_mat(got.truth_test, ds.truth_test));
    for (std::size_t s = 0; s < ds.source.size(); ++s)
    {
        CHECK(same_mat(got.source[s].x_train, ds.source[s].x_train));
        CHECK(same_mat(got.source[s].y_train, ds.source[s].y_train));
        CHECK(same_mat(got.source[s].x_test, ds.source[s].x_test));
        CHECK(same_mat(got.source[s].y_test, ds.source[s].y_test));
    }

    // The sidecar reproduces the generating configuration verbatim.
    const std::string sidecar = read_file(f.path + ".cfg");
    CHECK(sidecar == serialize_config(cfg));
    ExperimentConfig parsed;
    apply_config_text(parsed, sidecar);
    CHECK(serialize_config(parsed) == serialize_config(cfg));
}

TEST_CASE("same seed twice produces byte-identical dataset files", "[io]")
{
    const ExperimentConfig cfg = tiny_cfg();
    ScratchFile a("dataset_a.bin"), b("dataset_b.bin");
    save_dataset(a.path, make_cell_dataset(cfg), cfg);
    save_dataset(b.path, make_cell_dataset(cfg), cfg);
    CHECK(read_file(a.path) == read_file(b.path));
}

TEST_CASE("corrupt datasets are rejected", "[io]")
{
    const ExperimentConfig cfg = tiny_cfg();
    ScratchFile f("dataset_corrupt.bin");
    save_dataset(f.path, make_cell_dataset(cfg), cfg);
    const std::string good = read_file(f.path);

    SECTION("bad magic")
    {
        std::string bad = good;
        bad[3] = '?';
        atomic_write_file(f.path, bad);
        CHECK_THROWS_AS(load_dataset(f.path), IoError);
    }
    SECTION("truncation")
    {
        atomic_write_file(f.path, good.substr(0, good.size() - 7));
        CHECK_THROWS_AS(load_dataset(f.path), IoError);
    }
    SECTION("trailing bytes")
    {
        atomic_write_file(f.path, good + "zz");
        CHECK_THROWS_AS(load_dataset(f.path), IoError);
    }
    SECTION("missing file")
    {
        CHECK_THROWS_AS(load_dataset("io_test_no_such_dataset.bin"), IoError);
    }
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

TEST_CASE("results CSV round-trips every numeric field exactly", "[io]")
{
    std::vector<ExperimentResult> rows(2);
    rows[0].estimator = "kdml-ls";
    rows[0].snr_db = 12.5;
    rows[0].nps = 2;
    rows[0].mse = 0.12345678901234567;
    rows[0].seed = 18446744073709551615ull;
    rows[0].wall_ms = 1234.5678;
    rows[1].estimator = "mmse-sim";
    rows[1].snr_db = std::numeric_limits<double>::infinity();
    rows[1].nps = 16;
    rows[1].mse = 3.0e-17;
    rows[1].seed = 1;
    rows[1].wall_ms = 0.0;

    const std::string text = format_results_csv(rows);
    CHECK(text.substr(0, text.find('\n')) == std::string(kResultsCsvHeader));

    const auto back = parse_results_csv(text);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
    {
        CHECK(back[i].estimator == rows[i].estimator);
        CHECK(back[i].snr_db == rows[i].snr_db); // 17 significant digits: exact
        CHECK(back[i].nps == rows[i].nps);
        CHECK(back[i].mse == rows[i].mse);
        CHECK(back[i].seed == rows[i].seed);
    }
}

TEST_CASE("malformed results CSV is rejected", "[io]")
{
    CHECK_THROWS_AS(parse_results_csv(""), IoError);
    CHECK_THROWS_AS(parse_results_csv("wrong,header\n"), IoError);
    const std::string h = std::string(kResultsCsvHeader) + "\n";
    CHECK_THROWS_AS(parse_results_csv(h + "ls,10,2,0.5,1\n"), IoError);        // 5 fields
    CHECK_THROWS_AS(parse_results_csv(h + "ls,abc,2,0.5,1,0.0\n"), IoError);   // bad snr
    CHECK_THROWS_AS(parse_results_csv(h + "ls,10,2,0.5,-1,0.0\n"), IoError);   // negative seed
    CHECK(parse_results_csv(h).empty());                                       // header only: fine
}

TEST_CASE("loss CSV lists epochs starting at one", "[io]")
{
    CHECK(format_loss_csv({0.5, 0.25}) == "epoch,loss\n1,0.5\n2,0.25\n");
    CHECK(format_loss_csv({}) == "epoch,loss\n");
}

TEST_CASE("output filenames encode the cell", "[io]")
{
    CHECK(dataset_filename(5.0, 2, 1) == "ds_snr5_nps2_seed1.bin");
    CHECK(dataset_filename(2.5, 16, 3) == "ds_snr2.5_nps16_seed3.bin");
    CHECK(dataset_filename(std::numeric_limits<double>::infinity(), 2, 1) ==
          "ds_snrinf_nps2_seed1.bin");
    CHECK(checkpoint_filename("kdml-ls", 10.0, 2, 2) == "ckpt_kdml-ls_snr10_nps2_seed2.bin");
    CHECK(loss_filename("mlp", -5.0, 2, 1) == "loss_mlp_snr-5_nps2_seed1.csv");
}

// ---------------------------------------------------------------------------
// Config text
// ---------------------------------------------------------------------------

TEST_CASE("config text round-trips and hashes consistently", "[config]")
{
    ExperimentConfig cfg = tiny_cfg();
    cfg.learning_rate = 0.017345678901234567;
    cfg.snr_db = std::numeric_limits<double>::infinity();
    cfg.seed = 18446744073709551615ull;

    const std::string text = serialize_config(cfg);
    ExperimentConfig back; // defaults, overwritten by every serialized key
    apply_config_text(back, text);
    CHECK(serialize_config(back) == text);
    CHECK(config_hash(back) == config_hash(cfg));

    // Hash is sensitive to any field change.
    ExperimentConfig other = cfg;
    other.hidden += 1;
    CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("config text tolerates comments and whitespace", "[config]")
{
    ExperimentConfig cfg;
    apply_config_text(cfg, "# comment\n\n  hidden = 32 \r\n\tsnr_db=2.5\n");
    CHECK(cfg.hidden == 32);
    CHECK(cfg.snr_db == 2.5);
}

TEST_CASE("config text rejects malformed input", "[config]")
{
    ExperimentConfig cfg;
    CHECK_THROWS_AS(apply_config_text(cfg, "no_such_key=1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "hidden=abc\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "hidden=-3\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "phase_diversity=maybe\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "just a line\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "snr_db=1.5x\n"), ConfigError);
}

TEST_CASE("apply_scale rounds window counts and clamps to one", "[config]")
{
    ExperimentConfig cfg;
    cfg.windows_train = 27000;
    cfg.windows_test = 3000;

    apply_scale(cfg, 0.1);
    CHECK(cfg.windows_train == 2700);
    CHECK(cfg.windows_test == 300);

    apply_scale(cfg, 1e-9); // would round to zero, which means "keep all"
    CHECK(cfg.windows_train == 1);
    CHECK(cfg.windows_test == 1);

    cfg.windows_train = 0; // explicit keep-all stays keep-all
    apply_scale(cfg, 0.5);
    CHECK(cfg.windows_train == 0);

    CHECK_THROWS_AS(apply_scale(cfg, 0.0), ConfigError);
    CHECK_THROWS_AS(apply_scale(cfg, -1.0), ConfigError);
    CHECK_THROWS_AS(apply_scale(cfg, std::numeric_limits<double>::infinity()), ConfigError);
}

// ---------------------------------------------------------------------------
// Bench helpers
// ---------------------------------------------------------------------------

TEST_CASE("loglog_slope recovers power-law exponents", "[bench]")
{
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<double> quad, lin;
    for (const double v : x)
    {
        quad.push_back(3.0 * v * v);
        lin.push_back(0.25 * v);
    }
    CHECK(loglog_slope(x, quad) == Catch::Approx(2.0).margin(1e-12));
    CHECK(loglog_slope(x, lin) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("loglog_slope validates its input", "[bench]")
{
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({2.0, 2.0}, {1.0, 3.0}), std::invalid_argument);
}

TEST_CASE("median_time_ms measures nonnegative medians", "[bench]")
{
    volatile double sink = 0.0;
    const double ms = median_time_ms(
        [&] {
            for (int i = 0; i < 1000; ++i)
                sink = sink + 1.0;
        },
        5);
    CHECK(ms >= 0.0);
    CHECK_THROWS_AS(median_time_ms([] {}, 0), std::invalid_argument);
}
