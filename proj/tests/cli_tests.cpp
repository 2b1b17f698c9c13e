// SPDX-License-Identifier: Apache-2.0
//
// mimosim: Monte Carlo simulator for co-located, semi-distributed, and
// fully-distributed multi-user MIMO antenna topologies
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "mimosim/measured.hpp"
#include "test_support.hpp"

namespace {

int run_cli(const std::string &args) {
    const std::string command = std::string(MIMOSIM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    out << text;
}

const char *k_small_campaign = R"({
    "campaign": [
        {"name": "smoke", "source": "synthetic", "precoders": ["mrt", "zf"],
         "realizations": 50, "seed": 21, "topologies": [[8, 1, 4], [8, 8, 4]]}
    ]
})";

} // namespace

TEST_CASE("run executes a campaign and reports success") {
    const auto dir = mimosim::test::scratch_dir("cli_run");
    write_text(dir / "config.json", k_small_campaign);

    const int code = run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                             (dir / "out").string());
    CHECK(code == 0);
    CHECK(std::filesystem::exists(dir / "out" / "smoke_m8_l1_k4_mrt_samples.csv"));
    CHECK(std::filesystem::exists(dir / "out" / "smoke_m8_l8_k4_zf_summary.json"));
}

TEST_CASE("validation errors exit nonzero without output") {
    const auto dir = mimosim::test::scratch_dir("cli_invalid");
    write_text(dir / "bad.json", R"({
        "campaign": [
            {"topology": [8, 3, 4], "precoder": "zf", "seed": 7, "source": "synthetic"}
        ]
    })");
    CHECK(run_cli("run --config " + (dir / "bad.json").string() + " --output-dir " +
                  (dir / "out").string()) != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "scenario0_m8_l3_k4_zf_samples.csv"));

    CHECK(run_cli("run --config " + (dir / "missing.json").string()) != 0);
    CHECK(run_cli("frobnicate") != 0);
    CHECK(run_cli("run") != 0); // --config is required
}

TEST_CASE("evaluator failures exit nonzero and leave the marker") {
    const auto dir = mimosim::test::scratch_dir("cli_failure");
    mimosim::TensorDims dims;
    dims.freq_points = 2;
    dims.bs_ports = 8;
    dims.ue_ports = 8;
    dims.bs_ports_per_location = 1;
    dims.ue_ports_per_location = 1;
    const mimosim::MeasuredTensor constant(dims,
                                           std::vector<mimosim::Complex>(2 * 8 * 8, mimosim::Complex{1.0, 0.0}));
    write_measured_tensor(constant, dir / "constant.mcht");
    write_text(dir / "c.json", R"({
        "campaign": [
            {"name": "boom", "source": "measured", "tensor_path": "constant.mcht",
             "precoder": "zf", "realizations": 4, "seed": 2, "topology": [8, 8, 2]}
        ]
    })");
    CHECK(run_cli("run --config " + (dir / "c.json").string() + " --output-dir " + (dir / "out").string()) !=
          0);
    CHECK(std::filesystem::exists(dir / "out" / "FAILED.json"));
}

TEST_CASE("thread count never changes the output bytes") {
    const auto dir = mimosim::test::scratch_dir("cli_threads");
    write_text(dir / "config.json", k_small_campaign);

    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "t1").string() + " --threads 1") == 0);
    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "t4").string() + " --threads 4") == 0);

    int compared = 0;
    for (const auto &entry : std::filesystem::directory_iterator(dir / "t1")) {
        const auto name = entry.path().filename();
        CHECK(mimosim::test::slurp(dir / "t1" / name) == mimosim::test::slurp(dir / "t4" / name));
        ++compared;
    }
    CHECK(compared == 4 * 3); // 4 runs x (samples, cdf, summary)
}

TEST_CASE("the seed flag overrides the config seeds") {
    const auto dir = mimosim::test::scratch_dir("cli_seed");
    write_text(dir / "config.json", k_small_campaign);

    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "a").string()) == 0);
    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "b").string() + " --seed 99") == 0);
    const std::filesystem::path name = "smoke_m8_l8_k4_zf_samples.csv";
    CHECK(mimosim::test::slurp(dir / "a" / name) != mimosim::test::slurp(dir / "b" / name));
}

TEST_CASE("the json format flag switches the tabular files") {
    const auto dir = mimosim::test::scratch_dir("cli_json");
    write_text(dir / "config.json", k_small_campaign);
    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "out").string() + " --format json") == 0);
    CHECK(std::filesystem::exists(dir / "out" / "smoke_m8_l1_k4_mrt_samples.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "smoke_m8_l1_k4_mrt_samples.csv"));

    CHECK(run_cli("run --config " + (dir / "config.json").string() + " --format yaml") != 0);
}

TEST_CASE("emit-fixture writes deterministic loadable tensors") {
    const auto dir = mimosim::test::scratch_dir("cli_fixture");
    const std::string dims = "--freq-points 3 --bs-ports 16 --ue-ports 16 ";

    REQUIRE(run_cli("emit-fixture " + dims + "--seed 5 --output " + (dir / "a.mcht").string()) == 0);
    REQUIRE(run_cli("emit-fixture " + dims + "--seed 5 --output " + (dir / "b.mcht").string()) == 0);
    REQUIRE(run_cli("emit-fixture " + dims + "--seed 6 --output " + (dir / "c.mcht").string()) == 0);

    CHECK(mimosim::test::slurp(dir / "a.mcht") == mimosim::test::slurp(dir / "b.mcht"));
    CHECK(mimosim::test::slurp(dir / "a.mcht") != mimosim::test::slurp(dir / "c.mcht"));

    const mimosim::MeasuredTensor loaded = mimosim::load_measured_tensor(dir / "a.mcht");
    CHECK(loaded.dims().freq_points == 3);
    CHECK(loaded.dims().bs_ports == 16);
    CHECK(loaded == mimosim::make_fixture_tensor(loaded.dims(), 5));

    // bad grouping is rejected before writing
    CHECK(run_cli("emit-fixture --freq-points 2 --bs-ports 12 --ue-ports 16 --seed 1 --output " +
                  (dir / "d.mcht").string()) != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "d.mcht"));
}

TEST_CASE("a measured campaign runs end to end from the CLI") {
    const auto dir = mimosim::test::scratch_dir("cli_measured");
    REQUIRE(run_cli("emit-fixture --freq-points 4 --bs-ports 64 --ue-ports 64 --seed 12 --output " +
                    (dir / "tensor.mcht").string()) == 0);
    write_text(dir / "config.json", R"({
        "campaign": [
            {"name": "meas", "source": "measured", "tensor_path": "tensor.mcht",
             "precoders": ["zf"], "realizations": 40, "seed": 3,
             "topologies": [[8, 1, 4], [8, 8, 4], [64, 8, 4]]}
        ]
    })");
    REQUIRE(run_cli("run --config " + (dir / "config.json").string() + " --output-dir " +
                    (dir / "out").string()) == 0);
    CHECK(std::filesystem::exists(dir / "out" / "meas_m64_l8_k4_zf_summary.json"));
}
