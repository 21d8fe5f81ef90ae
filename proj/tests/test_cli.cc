// Copyright 2026 The isingbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isingbell/cli.h"
#include "isingbell/entanglement.h"
#include "isingbell/ising.h"
#include "oracles.h"

using namespace isingbell;
using std::numbers::sqrt2;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "isingbell");
    std::vector<const char *> argv;
    for (auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double cell(const ResultTable &t, std::size_t row, const std::string &column) {
    for (std::size_t i = 0; i < t.columns.size(); i++) {
        if (t.columns[i] == column) {
            return std::get<double>(t.rows[row][i]);
        }
    }
    throw std::runtime_error("no column " + column);
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("isingbell_test_" + name);
}

}  // namespace

TEST(config, json_round_trip) {
    RunConfig c;
    c.steps = 17;
    c.noise = false;
    c.seed = 123456789012345ULL;
    c.format = OutputFormat::Json;
    c.table_values = {4.0, 3.0};
    c.table_errors = {0.1, 0.2};
    auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_EQ(back.steps, 17);
    EXPECT_FALSE(back.noise);
    EXPECT_EQ(back.seed, 123456789012345ULL);
}

TEST(config, rejects_bad_input) {
    EXPECT_THROW(config_from_json("{\"stepz\": 3}"), ConfigError);
    EXPECT_THROW(config_from_json("[1, 2]"), ConfigError);
    EXPECT_THROW(config_from_json("{\"steps\": \"many\"}"), ConfigError);
    EXPECT_THROW(config_from_json("{\"format\": \"xml\"}"), ConfigError);
    EXPECT_THROW(config_from_json("not json"), ConfigError);
}

TEST(config, validation) {
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    c.steps = 2;
    EXPECT_THROW(c.validate(), ConfigError);
    c = RunConfig{};
    c.beta_max = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = RunConfig{};
    c.beta_min = -3;
    EXPECT_THROW(c.validate(), ConfigError);
    c = RunConfig{};
    c.beta_min = -0.5;
    c.beta_max = -0.6;
    EXPECT_THROW(c.validate(), ConfigError);
    c = RunConfig{};
    c.table_errors.pop_back();
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(config, grid) {
    RunConfig c;
    auto g = c.grid();
    ASSERT_EQ(g.size(), 200u);
    EXPECT_EQ(g.front(), -2);
    EXPECT_EQ(g.back(), -1e-6);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
}

TEST(sweep, default_config) {
    RunConfig c;
    auto records = run_sweep(c);
    ASSERT_EQ(records.size(), 200u);
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < records.size(); i++) {
        if (std::abs(records[i].beta + 1) < std::abs(records[nearest].beta + 1)) {
            nearest = i;
        }
        const auto &r = records[i];
        EXPECT_NEAR(r.a0, a0_of_beta(r.beta), 1e-10);
        EXPECT_NEAR(r.s3_noisy, r.p * r.s3_pure, 1e-10);
        EXPECT_NEAR(r.s3_pure, oracle::oracle_s3(oracle::oracle_a0(r.beta)), 1e-12);
        EXPECT_NEAR(r.w2, oracle::oracle_witness(oracle::oracle_a0(r.beta)), 1e-12);
        EXPECT_NEAR(r.n3_pure, oracle::oracle_negativity(oracle::oracle_a0(r.beta)), 1e-10);
        EXPECT_FALSE(r.s3_hat.has_value());
    }
    // Grid spacing ~0.01; the witness is stationary at beta = -1.
    EXPECT_NEAR(records[nearest].w2, -1.0 / 6, 1e-4);
}

TEST(sweep, noise_off) {
    RunConfig c;
    c.noise = false;
    auto records = run_sweep(c);
    EXPECT_NEAR(records.back().s3_pure, 4 * sqrt2, 1e-5);
    for (const auto &r : records) {
        EXPECT_EQ(r.p, 1);
        EXPECT_EQ(r.s3_noisy, r.s3_pure);
        EXPECT_EQ(r.ds3_dbeta, r.ds3_pure_dbeta);
    }
}

TEST(sweep, counts_columns) {
    RunConfig c;
    c.steps = 5;
    c.counts = 1e4;
    auto records = run_sweep(c);
    for (const auto &r : records) {
        ASSERT_TRUE(r.s3_hat.has_value());
        EXPECT_LE(std::abs(*r.s3_hat - r.s3_noisy), 5 * *r.sigma);
    }
    auto table = to_table(records);
    EXPECT_EQ(table.columns.back(), "sigma");
}

TEST(sweep, steps_two_is_config_error) {
    auto r = run({"sweep", "--steps", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("steps"), std::string::npos);
}

TEST(table, examples) {
    RunConfig c;
    c.table_values = {4.83, 2.98, 10.0, 5.3, 1.0};
    c.table_errors = {0.15, 0.09, 0.1, 0.1, 0.1};
    auto rows = run_table(c);
    // Werner-state value at the inferred field (0.830 for 4.83).
    EXPECT_EQ(rows[0].status, TableStatus::Ok);
    EXPECT_NEAR(rows[0].n3, 0.830, 1e-3);
    EXPECT_NEAR(rows[0].beta, -0.354, 1e-3);
    EXPECT_LE(rows[0].n3_low, rows[0].n3);
    EXPECT_GE(rows[0].n3_high, rows[0].n3);
    EXPECT_GE(rows[1].n3, 0.36);
    EXPECT_LE(rows[1].n3, 0.46);
    EXPECT_EQ(rows[2].status, TableStatus::Unsolvable);
    EXPECT_TRUE(std::isnan(rows[2].n3));
    EXPECT_TRUE(std::isnan(rows[2].n3_eq7_direct));
    EXPECT_EQ(rows[3].status, TableStatus::Clamped);
    EXPECT_EQ(rows[3].beta, kBetaMaxSweep);
    EXPECT_FALSE(std::isnan(rows[3].n3));
    EXPECT_EQ(rows[4].status, TableStatus::Unsolvable);
}

TEST(table, default_rows) {
    auto rows = run_table(RunConfig{});
    ASSERT_EQ(rows.size(), 7u);
    const double expected[] = {0.830, 0.841, 0.764, 0.735, 0.599, 0.454, 0.265};
    for (std::size_t i = 0; i < rows.size(); i++) {
        EXPECT_NEAR(rows[i].n3, expected[i], 1e-3) << rows[i].s3_exp;
        EXPECT_EQ(rows[i].status, TableStatus::Ok);
        EXPECT_NEAR(rows[i].n3_eq7_direct, n3_from_s3(rows[i].s3_exp), 1e-12);
    }
}

TEST(optimize, examples) {
    RunConfig c;
    c.beta = -1e-6;
    auto top = run_optimize(c);
    EXPECT_NEAR(top.pure.value, 4 * sqrt2, 1e-6);
    c.beta = -1;
    auto mid = run_optimize(c);
    EXPECT_GE(mid.pure.value, 3 * sqrt2 - 1e-8);
    EXPECT_NEAR(mid.value_noisy, mid.p * mid.pure.value, 1e-15);
    c.beta = -2;
    auto low = run_optimize(c);
    EXPECT_GE(low.pure.value, low.pure.default_value - 1e-8);
    c.beta = 0.5;
    EXPECT_THROW(run_optimize(c), ConfigError);
}

TEST(optimize, cli_report) {
    auto r = run({"optimize", "--beta", "-1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("|S3| optimized"), std::string::npos);
    EXPECT_NE(r.out.find("|S3| default angles"), std::string::npos);
}

TEST(montecarlo, deterministic_output) {
    auto a = run({"montecarlo", "--steps", "4", "--trials", "1", "--seed", "9"});
    auto b = run({"montecarlo", "--steps", "4", "--trials", "1", "--seed", "9"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = run({"montecarlo", "--steps", "4", "--trials", "1", "--seed", "10"});
    EXPECT_NE(a.out, c.out);
}

TEST(montecarlo, large_counts_unbiased) {
    RunConfig c;
    c.beta_min = -0.36;
    c.beta_max = -0.34;
    c.steps = 3;
    c.counts = 1e6;
    c.trials = 20;
    auto records = run_montecarlo(c);
    const auto &mid = records[1];
    EXPECT_NEAR(mid.beta, -0.35, 1e-12);
    double truth = p_of_beta(NoiseModel{}, -0.35) * oracle::oracle_s3(oracle::oracle_a0(-0.35));
    EXPECT_NEAR(mid.s3_true, truth, 1e-12);
    EXPECT_LE(std::abs(mid.s3_hat_mean - truth), 3 * mid.sigma_mean);
}

TEST(montecarlo, spread_matches_propagated_sigma) {
    RunConfig c;
    c.steps = 5;
    c.trials = 200;
    for (const auto &r : run_montecarlo(c)) {
        EXPECT_EQ(r.counts, 1e4);
        EXPECT_NEAR(r.s3_hat_std, r.sigma_mean, 0.2 * r.sigma_mean) << r.beta;
    }
}

TEST(montecarlo, tiny_counts_is_numeric_error) {
    auto r = run({"montecarlo", "--steps", "3", "--trials", "1", "--counts", "0.0001"});
    EXPECT_EQ(r.code, 3);
}

TEST(output, csv_and_json_agree) {
    RunConfig c;
    c.steps = 7;
    c.counts = 1e3;
    auto table = to_table(run_sweep(c));
    std::ostringstream csv, js;
    write_csv(csv, "sweep", c, table);
    write_json(js, "sweep", c, table);
    std::istringstream csv_in(csv.str()), js_in(js.str());
    auto a = read_csv(csv_in);
    auto b = read_json(js_in);
    ASSERT_EQ(a.columns, table.columns);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); r++) {
        for (const auto &col : a.columns) {
            EXPECT_NEAR(cell(a, r, col), cell(b, r, col), 1e-12);
            EXPECT_EQ(cell(a, r, col), cell(table, r, col));
        }
    }
}

TEST(output, table_strings_and_nan_round_trip) {
    RunConfig c;
    c.table_values = {4.0, 10.0};
    c.table_errors = {0.1, 0.1};
    auto table = to_table(run_table(c));
    std::ostringstream csv, js;
    write_csv(csv, "table", c, table);
    write_json(js, "table", c, table);
    std::istringstream csv_in(csv.str()), js_in(js.str());
    auto a = read_csv(csv_in);
    auto b = read_json(js_in);
    EXPECT_EQ(std::get<std::string>(a.rows[1][2]), "unsolvable");
    EXPECT_EQ(std::get<std::string>(b.rows[1][2]), "unsolvable");
    EXPECT_TRUE(std::isnan(cell(a, 1, "n3")));
    EXPECT_TRUE(std::isnan(cell(b, 1, "n3")));
    EXPECT_NEAR(cell(a, 0, "n3"), cell(b, 0, "n3"), 1e-12);
}

TEST(output, header_embeds_version_and_config) {
    auto r = run({"sweep", "--steps", "3", "--noise", "false"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind(std::string("# isingbell ") + version(), 0), 0u);
    EXPECT_NE(r.out.find("\"steps\":3"), std::string::npos);
    EXPECT_NE(r.out.find("\"noise\":false"), std::string::npos);
    auto j = run({"sweep", "--steps", "3", "--format", "json"});
    EXPECT_NE(j.out.find("\"version\""), std::string::npos);
    EXPECT_NE(j.out.find("\"records\""), std::string::npos);
    EXPECT_NE(j.out.find("\"config\""), std::string::npos);
}

TEST(cli, file_output_and_config_file) {
    auto cfg = temp_path("config.json");
    auto out = temp_path("out.csv");
    {
        std::ofstream f(cfg);
        f << R"({"steps": 4, "noise": false})";
    }
    auto r = run({"sweep", "--config", cfg.string(), "--out", out.string(), "--beta-min", "-1.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(out);
    auto t = read_csv(f);
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(cell(t, 0, "beta"), -1.5);
    EXPECT_EQ(cell(t, 0, "p"), 1);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run({"sweep", "--steps", "3", "--out", "/nonexistent-dir/x.csv"}).code, 2);
    EXPECT_EQ(run({"sweep", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"sweep", "--config", "/nonexistent-dir/c.json"}).code, 2);
    EXPECT_EQ(run({"sweep", "--bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"table", "--values", "4.5", "10"}).code, 0);
    EXPECT_EQ(run({"--version"}).code, 0);
}
