// SPDX-License-Identifier: Apache-2.0
//
// dfrc-ci: constructive-interference waveform design for dual-functional
// radar-communication transmitters
// Copyright (C) 2026 The dfrc-ci authors
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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <dfrc/cli.hpp>

using namespace dfrc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("dfrc_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto p = dir / "config.json";
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "dfrc");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string config_error(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

const char* kSmall = R"({
  "version": 1,
  "scenario": {"n_tx": 4, "n_users": 2},
  "experiment": {"gamma_sweep_db": [12, 15], "n_channel_draws": 2, "n_symbol_draws": 1,
                 "noise_trials": 1000, "threads": 1, "seed": 5},
  "methods": ["SCA"]
})";

}  // namespace

TEST_CASE("minimal configuration takes the reference defaults", "[config]") {
    const auto spec = parse_config_text(R"({"version": 1})");
    CHECK(spec.scenario.n_tx == 8);
    CHECK(spec.scenario.n_users() == 5);
    CHECK(spec.scenario.clutter_angles.size() == 4);
    CHECK(spec.scenario.power_budget == Catch::Approx(1000.0));
    CHECK(spec.scenario.mu() == Catch::Approx(10.0));
    REQUIRE(spec.methods.size() == 3);
    CHECK(spec.methods[2].config.method == Method::SDR);
    CHECK(spec.gamma_sweep_db.size() == 6);
}

TEST_CASE("the schema is strict", "[config]") {
    CHECK(config_error(R"({})").find("missing 'version'") != std::string::npos);
    CHECK(config_error(R"({"version": 2})").find("unsupported version") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "extra": 0})").find("unknown key '<root>.extra'") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "scenario": {"n_tx": -3}})").find("non-negative integer") !=
          std::string::npos);
    CHECK(config_error(R"({"version": 1, "experiment": {"gamma_db": "15"}})").find("wrong type") !=
          std::string::npos);
    CHECK(config_error(R"({"version": 1, "experiment": {"svg": 1}})").find("wrong type") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "methods": ["ZF"]})").find("unknown method") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "methods": []})").find("at least one method") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "solver": {"linesearch": "exact"}})").find("linesearch") !=
          std::string::npos);
    CHECK(config_error(R"({"version": 1, "scenario": {"n_tx": 0}})") != "");
    CHECK(config_error(R"({"version": 1,)").find("parse error") != std::string::npos);
}

TEST_CASE("quantities without a unit suffix are rejected by name", "[config]") {
    const auto e = config_error(R"({"version": 1, "experiment": {"gamma_sweep": [10, 15]}})");
    CHECK(e.find("lacks a unit suffix") != std::string::npos);
    CHECK(e.find("gamma_sweep_db") != std::string::npos);
    CHECK(config_error(R"({"version": 1, "scenario": {"power_budget": 1000}})").find("power_budget_dbm") !=
          std::string::npos);
    CHECK(config_error(R"({"version": 1, "scenario": {"target_angle": 0}})").find("target_angle_deg") !=
          std::string::npos);
}

TEST_CASE("canonical form round-trips and hashes stably", "[config]") {
    const auto a = parse_config_text(kSmall);
    const auto j = to_json(a);
    const auto b = parse_config(j);
    CHECK(to_json(b) == j);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    auto c = a;
    c.seed = 6;
    CHECK(config_hash(c) != config_hash(a));
    c = a;
    c.output_dir = "elsewhere";
    c.threads = 7;
    CHECK(config_hash(c) == config_hash(a));
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("validate subcommand", "[cli]") {
    const auto dir = scratch_dir("validate");
    CHECK(run({"validate", "-c", write_config(dir, kSmall).string()}) == kExitOk);
    CHECK(run({"validate", "-c", write_config(dir, R"({"version": 1, "experiment": {"gamma": 15}})").string()}) ==
          kExitConfig);
    CHECK(run({"validate", "-c", (dir / "missing.json").string()}) == kExitConfig);
    CHECK(run({"validate", "--method", "ZF"}) == kExitConfig);
    CHECK(run({}) == kExitConfig);
    CHECK(run({"--version"}) == kExitOk);
}

TEST_CASE("solve subcommand writes the waveform and a manifest", "[cli]") {
    const auto dir = scratch_dir("solve");
    const auto cfg = write_config(dir, kSmall).string();
    const auto out = (dir / "out").string();
    REQUIRE(run({"solve", "-c", cfg, "-o", out}) == kExitOk);
    for (const char* f : {"solve.csv", "margins.csv", "trace.csv", "solve.json", "manifest.json"})
        CHECK(fs::exists(fs::path(out) / f));
    const auto j = nlohmann::json::parse(slurp(fs::path(out) / "solve.json"));
    CHECK(j["method"] == "SCA");
    for (double m : j["margins"].get<std::vector<double>>())
        CHECK(m >= -1e-9);
    for (double s : j["snr_db"].get<std::vector<double>>())
        CHECK(s >= 15.0 - 1e-6);
    const auto man = nlohmann::json::parse(slurp(fs::path(out) / "manifest.json"));
    CHECK(man["config_hash"] == config_hash(load_config(cfg)));
    CHECK(man["subcommand"] == "solve");
    CHECK(man["seed"] == 5);
}

TEST_CASE("solve reports infeasible instances with exit code 3", "[cli]") {
    const auto dir = scratch_dir("infeasible");
    const auto cfg = write_config(dir, R"({"version": 1, "scenario": {"n_tx": 1, "n_users": 5},
                                          "experiment": {"gamma_db": 15}, "methods": ["SCA"]})");
    const auto out = dir / "out";
    CHECK(run({"solve", "-c", cfg.string(), "-o", out.string()}) == kExitInfeasible);
    const auto j = nlohmann::json::parse(slurp(out / "solve.json"));
    CHECK(j["status"] == "infeasible");
    CHECK(j["best_margin"].get<double>() < 0.0);
}

TEST_CASE("tradeoff and security subcommands", "[cli]") {
    const auto dir = scratch_dir("tradeoff");
    const auto cfg = write_config(dir, kSmall).string();
    REQUIRE(run({"tradeoff", "-c", cfg, "-o", (dir / "t").string()}) == kExitOk);
    const auto csv = slurp(dir / "t" / "tradeoff.csv");
    CHECK(csv.find("SCA,12,") != std::string::npos);
    CHECK(csv.find("SCA,15,") != std::string::npos);
    CHECK(fs::exists(dir / "t" / "tradeoff.svg"));
    const auto man = nlohmann::json::parse(slurp(dir / "t" / "manifest.json"));
    CHECK(man["solver_runs"] == 4);

    REQUIRE(run({"security", "-c", cfg, "-o", (dir / "s").string(), "--seed", "9"}) == kExitOk);
    CHECK(slurp(dir / "s" / "security.csv").rfind("gamma_db,cu_ser,eve_ser\n", 0) == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "s" / "manifest.json"))["seed"] == 9);
}

TEST_CASE("beampattern narrows with more antennas", "[cli]") {
    const auto dir = scratch_dir("beam");
    const auto cfg = write_config(dir, R"({"version": 1,
        "experiment": {"gamma_db": 15, "n_channel_draws": 3, "n_symbol_draws": 1, "threads": 1, "svg": false},
        "methods": ["SCA"]})")
                         .string();
    double width[2] = {0.0, 0.0};
    const char* sizes[2] = {"8", "16"};
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / sizes[i];
        REQUIRE(run({"beampattern", "-c", cfg, "--n-tx", sizes[i], "-o", out.string()}) == kExitOk);
        CHECK(fs::exists(out / "beampattern.csv"));
        CHECK_FALSE(fs::exists(out / "beampattern.svg"));
        const auto m = nlohmann::json::parse(slurp(out / "beampattern_metrics.json"));
        width[i] = m[0]["width_3db_deg"].get<double>();
        CHECK(std::abs(m[0]["peak_angle_deg"].get<double>()) <= 1.0);
    }
    CHECK(width[1] < width[0]);
}
