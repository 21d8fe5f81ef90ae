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

#ifndef ISINGBELL_CLI_H
#define ISINGBELL_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "isingbell/correlations.h"
#include "isingbell/photonics.h"

namespace isingbell {

const char *version();

/// Invalid configuration, bad flags or unwritable output (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

inline constexpr double kDefaultCountsPerSetting = 1e4;

struct RunConfig {
    double beta_min = -2.0;
    double beta_max = -1e-6;
    int steps = 200;
    bool noise = true;
    /// Mean coincidences per measurement setting. 0 disables count simulation
    /// in `sweep`; `montecarlo` then falls back to kDefaultCountsPerSetting.
    double counts = 0;
    int trials = 100;
    std::uint64_t seed = 1;
    SourceParams source = SourceParams::measured();
    NoiseModel noise_model{};
    std::string out;  // empty: stdout
    OutputFormat format = OutputFormat::Csv;
    /// Field used by `optimize`.
    double beta = -1e-6;
    /// Measured |<S3>| values and their errors used by `table`.
    std::vector<double> table_values{4.83, 4.89, 4.47, 4.32, 3.64, 2.98, 2.18};
    std::vector<double> table_errors{0.15, 0.31, 0.12, 0.13, 0.10, 0.09, 0.07};

    /// Throws ConfigError for a sweep range outside [-2, -1e-6], fewer than 3
    /// steps, or inconsistent table inputs.
    void validate() const;
    /// Grid of `steps` uniform points on [beta_min, beta_max].
    std::vector<double> grid() const;
    NoiseModel effective_noise() const {
        return noise ? noise_model : NoiseModel::none();
    }
};

RunConfig config_from_json(const std::string &text);
std::string config_to_json(const RunConfig &config);

struct SweepRecord {
    double beta;
    double a0;
    double p;
    /// Witness on spins 2 and 3 of the pure and the noisy state.
    double w2;
    double w2_noisy;
    double s3_pure;
    double s3_noisy;
    /// d s3_noisy / d beta along the grid (equals the pure derivative when
    /// noise is off).
    double ds3_dbeta;
    double ds3_pure_dbeta;
    double tau3;
    double n3_pure;
    double n3_noisy;
    std::optional<double> s3_hat;
    std::optional<double> sigma;
};

std::vector<SweepRecord> run_sweep(const RunConfig &config);

enum class TableStatus { Ok, Clamped, Unsolvable };
const char *to_string(TableStatus status);

struct TableRow {
    double s3_exp;
    double s3_err;
    TableStatus status;
    double beta;
    double p;
    double n3;
    double n3_low;
    double n3_high;
    /// Pure-state inversion applied directly to s3_exp, for comparison.
    double n3_eq7_direct;
};

std::vector<TableRow> run_table(const RunConfig &config);

struct OptimizeReport {
    double beta;
    AngleOptimum pure;
    double p;
    double value_noisy;
    double default_value_noisy;
};

OptimizeReport run_optimize(const RunConfig &config);

struct MonteCarloRecord {
    double beta;
    double p;
    double s3_true;
    double s3_hat_mean;
    double s3_hat_std;
    double sigma_mean;
    double counts;
    int trials;
};

std::vector<MonteCarloRecord> run_montecarlo(const RunConfig &config);

/// Column-oriented result used by the CSV and JSON writers.
struct ResultTable {
    using Cell = std::variant<double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

ResultTable to_table(const std::vector<SweepRecord> &records);
ResultTable to_table(const std::vector<TableRow> &rows);
ResultTable to_table(const OptimizeReport &report);
ResultTable to_table(const std::vector<MonteCarloRecord> &records);

/// Comment lines with version and resolved config, one header row, then
/// comma-separated values with 17 significant digits.
void write_csv(std::ostream &out, const std::string &command, const RunConfig &config, const ResultTable &table);
/// {"version", "command", "config", "records": [{column: value, ...}, ...]}.
void write_json(std::ostream &out, const std::string &command, const RunConfig &config, const ResultTable &table);

/// Parses CSV written by write_csv back into a table (strings stay strings
/// when they are not numbers).
ResultTable read_csv(std::istream &in);
ResultTable read_json(std::istream &in);

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 success, 2 configuration error, 3 numeric-domain error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace isingbell

#endif
