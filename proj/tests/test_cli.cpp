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
// End-to-end tests of the kdml_bench executable (path injected at build time
// through KDML_BENCH_BIN). Each case works in its own scratch directory.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include <kdml/config.hpp>
#include <kdml/io.hpp>
#include <kdml/pipeline.hpp>

using namespace kdml;

namespace {

namespace fs = std::filesystem;

/// Fresh scratch directory under the test working directory.
struct Scratch {
    std::string dir;
    explicit Scratch(const std::string& name) : dir("cli_" + name)
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
};

/// Runs the benchmark binary with the given arguments; returns the exit code
/// and captures combined stdout/stderr.
int run_bench(const Scratch& s, const std::string& args, std::string* output = nullptr)
{
    const std::string out_file = s.dir + "/last_output.txt";
    const std::string cmd = std::string("\"") + KDML_BENCH_BIN + "\" " + args + " > " + out_file +
                            " 2>&1";
    const int st = std::system(cmd.c_str());
    if (output != nullptr)
        *output = read_file(out_file);
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

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

std::string write_tiny_config(const Scratch& s, const ExperimentConfig& cfg)
{
    const std::string path = s.dir + "/tiny.cfg";
    atomic_write_file(path, serialize_config(cfg));
    return path;
}

} // namespace

TEST_CASE("help exits cleanly", "[cli]")
{
    Scratch s("help");
    std::string out;
    CHECK(run_bench(s, "--help", &out) == 0);
    CHECK(out.find("Subcommands") != std::string::npos);
    CHECK(run_bench(s, "generate --help") == 0);
    CHECK(run_bench(s, "sweep --help") == 0);
}

TEST_CASE("usage errors exit with code 2", "[cli]")
{
    Scratch s("usage");
    CHECK(run_bench(s, "") == 2);                            // missing subcommand
    CHECK(run_bench(s, "frobnicate") == 2);                  // unknown subcommand
    CHECK(run_bench(s, "generate --no-such-flag") == 2);     // unknown flag
    CHECK(run_bench(s, "sweep --variant nonsense --out " + s.dir) == 2);
    CHECK(run_bench(s, "sweep --snr abc --out " + s.dir) == 2);
    CHECK(run_bench(s, "generate --scale 0 --out " + s.dir) == 2);
}

TEST_CASE("invalid configuration exits with code 2", "[cli]")
{
    Scratch s("badcfg");
    ExperimentConfig cfg = tiny_cfg();
    cfg.ofdm.cp_len = 0; // rejected by validation
    const std::string cfg_path = write_tiny_config(s, cfg);
    std::string out;
    CHECK(run_bench(s, "generate --config " + cfg_path + " --out " + s.dir, &out) == 2);
    CHECK(out.find("cp_len") != std::string::npos);

    CHECK(run_bench(s, "generate --config " + s.dir + "/missing.cfg --out " + s.dir) == 3);
}

TEST_CASE("evaluate without datasets exits with code 3", "[cli]")
{
    Scratch s("nodata");
    const std::string cfg_path = write_tiny_config(s, tiny_cfg());
    std::string out;
    CHECK(run_bench(s, "evaluate --config " + cfg_path + " --out " + s.dir, &out) == 3);
    CHECK(out.find("i/o error") != std::string::npos);
}

TEST_CASE("flops report echoes the closed-form values", "[cli]")
{
    Scratch s("flops");
    const std::string cfg_path = write_tiny_config(s, tiny_cfg());
    std::string out;
    CHECK(run_bench(s, "flops --config " + cfg_path, &out) == 0);
    CHECK(out.find("flops(1,2,128,2) = 67328") != std::string::npos);
    CHECK(out.find("flops(1,1,1,1) = 13") != std::string::npos);
    CHECK(out.find("log-log slope") != std::string::npos);
}

TEST_CASE("generate is deterministic and self-describing", "[cli]")
{
    Scratch s("gen");
    const ExperimentConfig cfg = tiny_cfg();
    const std::string cfg_path = write_tiny_config(s, cfg);

    const std::string run1 = s.dir + "/a", run2 = s.dir + "/b";
    REQUIRE(run_bench(s, "generate --config " + cfg_path + " --out " + run1) == 0);
    REQUIRE(run_bench(s, "generate --config " + cfg_path + " --out " + run2) == 0);

    const std::string name = dataset_filename(cfg.snr_db, cfg.ofdm.nps, cfg.seed);
    CHECK(read_file(run1 + "/" + name) == read_file(run2 + "/" + name));

    // Reread: header metadata matches the generated example counts.
    const CellDataset ds = load_dataset(run1 + "/" + name);
    CHECK(ds.pos_train.size() == cfg.windows_train);
    CHECK(ds.pos_test.size() == cfg.windows_test);
    CHECK(ds.config_hash == config_hash(cfg));
    CHECK(ds.seed == cfg.seed);

    // The sidecar reproduces the config.
    ExperimentConfig parsed;
    apply_config_text(parsed, read_file(run1 + "/" + name + ".cfg"));
    CHECK(serialize_config(parsed) == serialize_config(cfg));
}

TEST_CASE("train refuses untrainable variants and missing datasets", "[cli]")
{
    Scratch s("trainerr");
    const std::string cfg_path = write_tiny_config(s, tiny_cfg());
    std::string out;
    CHECK(run_bench(s, "train --variant ls --config " + cfg_path + " --out " + s.dir, &out) == 2);
    CHECK(out.find("trainable") != std::string::npos);
    CHECK(run_bench(s, "train --variant mlp --config " + cfg_path + " --out " + s.dir) == 3);
}

TEST_CASE("staged generate/train/evaluate matches one-shot sweep", "[cli][slow]")
{
    Scratch s("staged");
    const std::string cfg_path = write_tiny_config(s, tiny_cfg());
    const std::string lists = " --snr 5,15 --nps 2 --config " + cfg_path;
    const std::string variants = " --variant ls,mmse,kdml-ls,mlp";

    const std::string staged = s.dir + "/staged", swept = s.dir + "/swept";
    REQUIRE(run_bench(s, "generate" + lists + " --out " + staged) == 0);
    REQUIRE(run_bench(s, "train" + lists + " --variant kdml-ls,mlp --out " + staged) == 0);
    REQUIRE(run_bench(s, "evaluate" + lists + variants + " --out " + staged) == 0);
    REQUIRE(run_bench(s, "sweep" + lists + variants + " --out " + swept) == 0);

    const auto a = parse_results_csv(read_file(staged + "/results.csv"));
    const auto b = parse_results_csv(read_file(swept + "/results.csv"));
    REQUIRE(a.size() == 8); // |snr| x |nps| x |estimators| = 2 x 1 x 4
    REQUIRE(b.size() == 8);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].estimator == b[i].estimator);
        CHECK(a[i].snr_db == b[i].snr_db);
        CHECK(a[i].nps == b[i].nps);
        CHECK(a[i].seed == b[i].seed);
        // File-based and in-memory paths agree to full double precision.
        CHECK(a[i].mse == Catch::Approx(b[i].mse).epsilon(1e-15));
    }

    // Training also left loss curves behind.
    CHECK(fs::exists(staged + "/" + loss_filename("kdml-ls", 5.0, 2, 7)));
    CHECK(fs::exists(staged + "/" + checkpoint_filename("mlp", 15.0, 2, 7)));
}

TEST_CASE("sweep re-runs are bit-identical in the mse column", "[cli][slow]")
{
    Scratch s("rerun");
    const std::string cfg_path = write_tiny_config(s, tiny_cfg());
    const std::string args = "sweep --snr 10 --variant ls,kdml-ls --config " + cfg_path;

    const std::string run1 = s.dir + "/r1", run2 = s.dir + "/r2";
    REQUIRE(run_bench(s, args + " --out " + run1) == 0);
    REQUIRE(run_bench(s, args + " --out " + run2) == 0);

    const auto a = parse_results_csv(read_file(run1 + "/results.csv"));
    const auto b = parse_results_csv(read_file(run2 + "/results.csv"));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].estimator == b[i].estimator);
        CHECK(a[i].mse == b[i].mse); // bitwise, not approximate
    }
}

TEST_CASE("training divergence exits with code 4 and leaves no checkpoint", "[cli]")
{
    Scratch s("diverge");
    ExperimentConfig cfg = tiny_cfg();
    cfg.learning_rate = 1e200; // guarantees a non-finite loss immediately
    const std::string cfg_path = write_tiny_config(s, cfg);

    REQUIRE(run_bench(s, "generate --config " + cfg_path + " --out " + s.dir) == 0);
    std::string out;
    CHECK(run_bench(s, "train --variant mlp --config " + cfg_path + " --out " + s.dir, &out) ==
          4);
    CHECK(out.find("diverged") != std::string::npos);
    CHECK_FALSE(fs::exists(s.dir + "/" + checkpoint_filename("mlp", cfg.snr_db, cfg.ofdm.nps,
                                                             cfg.seed)));
}
