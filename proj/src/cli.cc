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

#include "isingbell/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>

#include "isingbell/entanglement.h"
#include "isingbell/ising.h"

#ifndef ISINGBELL_VERSION
#define ISINGBELL_VERSION "unknown"
#endif

namespace isingbell {

using nlohmann::json;

const char *version() {
    return ISINGBELL_VERSION;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char *format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat parse_format(const std::string &s) {
    if (s == "csv") {
        return OutputFormat::Csv;
    }
    if (s == "json") {
        return OutputFormat::Json;
    }
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

json config_json(const RunConfig &c) {
    return json{
        {"beta_min", c.beta_min},
        {"beta_max", c.beta_max},
        {"steps", c.steps},
        {"noise", c.noise},
        {"noise_slope", c.noise_model.slope},
        {"noise_intercept", c.noise_model.intercept},
        {"counts", c.counts},
        {"trials", c.trials},
        {"seed", c.seed},
        {"source",
         {{"eta_hh", c.source.eta_hh}, {"eta_vv", c.source.eta_vv}, {"eta_t", c.source.eta_t}, {"eta_r", c.source.eta_r}}},
        {"out", c.out},
        {"format", format_name(c.format)},
        {"beta", c.beta},
        {"table_values", c.table_values},
        {"table_errors", c.table_errors},
    };
}

}  // namespace

void RunConfig::validate() const {
    if (!(beta_min >= kBetaMin && beta_max <= kBetaMaxSweep && beta_min <= kBetaMaxSweep && beta_max >= kBetaMin)) {
        throw ConfigError("beta range must lie within [-2, -1e-6]");
    }
    if (!(beta_min < beta_max)) {
        throw ConfigError("beta_min must be below beta_max");
    }
    if (steps < 3) {
        throw ConfigError("steps must be at least 3 (the derivative needs three points)");
    }
    if (!(counts >= 0) || !std::isfinite(counts)) {
        throw ConfigError("counts must be finite and non-negative");
    }
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (table_values.size() != table_errors.size()) {
        throw ConfigError("table_values and table_errors differ in length");
    }
    try {
        source.validate();
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> RunConfig::grid() const {
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; i++) {
        g[i] = beta_min + (beta_max - beta_min) * i / (steps - 1);
    }
    g.back() = beta_max;
    return g;
}

RunConfig config_from_json(const std::string &text) {
    RunConfig c;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known{"beta_min",     "beta_max", "steps", "noise",        "noise_slope",
                                             "noise_intercept", "counts", "trials", "seed",       "source",
                                             "out",          "format",   "beta",  "table_values", "table_errors"};
    try {
        for (auto &[key, value] : j.items()) {
            if (!known.count(key)) {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
        c.beta_min = j.value("beta_min", c.beta_min);
        c.beta_max = j.value("beta_max", c.beta_max);
        c.steps = j.value("steps", c.steps);
        c.noise = j.value("noise", c.noise);
        c.noise_model.slope = j.value("noise_slope", c.noise_model.slope);
        c.noise_model.intercept = j.value("noise_intercept", c.noise_model.intercept);
        c.counts = j.value("counts", c.counts);
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", c.out);
        c.format = parse_format(j.value("format", std::string(format_name(c.format))));
        c.beta = j.value("beta", c.beta);
        c.table_values = j.value("table_values", c.table_values);
        c.table_errors = j.value("table_errors", c.table_errors);
        if (j.contains("source")) {
            const json &s = j.at("source");
            c.source.eta_hh = s.value("eta_hh", c.source.eta_hh);
            c.source.eta_vv = s.value("eta_vv", c.source.eta_vv);
            c.source.eta_t = s.value("eta_t", c.source.eta_t);
            c.source.eta_r = s.value("eta_r", c.source.eta_r);
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

std::string config_to_json(const RunConfig &config) {
    return config_json(config).dump();
}

std::vector<SweepRecord> run_sweep(const RunConfig &config) {
    config.validate();
    const NoiseModel noise = config.effective_noise();
    const auto grid = config.grid();
    std::vector<SweepRecord> records;
    records.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); i++) {
        const double beta = grid[i];
        const ComplexVector psi = analytic_ground_state_n3(beta);
        const ComplexMatrix rho = ComplexMatrix::projector(psi);
        const double p = p_of_beta(noise, beta);
        const ComplexMatrix rho_noisy = werner(psi, p);

        SweepRecord r{};
        r.beta = beta;
        r.a0 = a0_of_beta(beta);
        r.p = p;
        r.w2 = witness_w2(partial_trace(rho, {2, 2, 2}, {1, 2})).value;
        r.w2_noisy = witness_w2(partial_trace(rho_noisy, {2, 2, 2}, {1, 2})).value;
        r.s3_pure = std::abs(svetlichny_s3(rho));
        r.s3_noisy = std::abs(svetlichny_s3(rho_noisy));
        r.tau3 = three_tangle_pure(psi);
        r.n3_pure = tripartite_negativity(rho);
        r.n3_noisy = tripartite_negativity(rho_noisy);
        if (config.counts > 0) {
            auto est = simulate_s3_measurement(rho_noisy, config.counts, derive_seed(config.seed, i, 0));
            r.s3_hat = est.s3_hat;
            r.sigma = est.sigma;
        }
        records.push_back(r);
    }
    std::vector<double> noisy(grid.size()), pure(grid.size());
    for (std::size_t i = 0; i < grid.size(); i++) {
        noisy[i] = records[i].s3_noisy;
        pure[i] = records[i].s3_pure;
    }
    auto d_noisy = grid_derivative(grid, noisy);
    auto d_pure = grid_derivative(grid, pure);
    for (std::size_t i = 0; i < grid.size(); i++) {
        records[i].ds3_dbeta = d_noisy[i];
        records[i].ds3_pure_dbeta = d_pure[i];
    }
    return records;
}

const char *to_string(TableStatus status) {
    switch (status) {
        case TableStatus::Ok:
            return "ok";
        case TableStatus::Clamped:
            return "clamped";
        case TableStatus::Unsolvable:
            return "unsolvable";
    }
    return "?";
}

namespace {

struct TablePoint {
    double beta;
    double p;
    double n3;
};

TablePoint werner_point(double s3, const NoiseModel &noise, const std::pair<double, double> &range) {
    double beta;
    if (s3 >= range.second) {
        beta = kBetaMaxSweep;
    } else if (s3 <= range.first) {
        beta = kBetaMin;
    } else {
        beta = infer_beta_from_measured_s3(s3, noise).beta;
    }
    const double p = p_of_beta(noise, beta);
    return {beta, p, tripartite_negativity(werner(analytic_ground_state_n3(beta), p))};
}

}  // namespace

std::vector<TableRow> run_table(const RunConfig &config) {
    config.validate();
    const NoiseModel noise = config.effective_noise();
    const auto range = noisy_s3_range(noise);
    std::vector<TableRow> rows;
    for (std::size_t i = 0; i < config.table_values.size(); i++) {
        const double s = config.table_values[i];
        const double err = config.table_errors[i];
        TableRow row{s, err, TableStatus::Ok, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
        if (s > kSqrt2 && s <= kSvetlichnyQuantumMax) {
            row.n3_eq7_direct = n3_from_s3(s);
        }
        if (!(s >= range.first) || s > kSvetlichnyQuantumMax) {
            row.status = TableStatus::Unsolvable;
            rows.push_back(row);
            continue;
        }
        if (s > range.second) {
            row.status = TableStatus::Clamped;
        }
        auto centre = werner_point(s, noise, range);
        auto lo = werner_point(std::max(s - err, range.first), noise, range);
        auto hi = werner_point(std::min(s + err, range.second), noise, range);
        row.beta = centre.beta;
        row.p = centre.p;
        row.n3 = centre.n3;
        row.n3_low = std::min(lo.n3, hi.n3);
        row.n3_high = std::max(lo.n3, hi.n3);
        rows.push_back(row);
    }
    return rows;
}

OptimizeReport run_optimize(const RunConfig &config) {
    if (!(config.beta >= kBetaMin && config.beta < 0)) {
        throw ConfigError("optimize needs beta in [-2, 0)");
    }
    const ComplexMatrix rho = ComplexMatrix::projector(analytic_ground_state_n3(config.beta));
    OptimizeReport report{config.beta, optimize_svetlichny_angles(rho), 1.0, 0, 0};
    report.p = p_of_beta(config.effective_noise(), config.beta);
    report.value_noisy = report.p * report.pure.value;
    report.default_value_noisy = report.p * report.pure.default_value;
    return report;
}

std::vector<MonteCarloRecord> run_montecarlo(const RunConfig &config) {
    config.validate();
    const NoiseModel noise = config.effective_noise();
    const double counts = config.counts > 0 ? config.counts : kDefaultCountsPerSetting;
    const auto grid = config.grid();
    const auto terms = svetlichny_settings();
    std::vector<MonteCarloRecord> records;
    for (std::size_t i = 0; i < grid.size(); i++) {
        const double beta = grid[i];
        const double p = p_of_beta(noise, beta);
        const ComplexMatrix rho = werner(analytic_ground_state_n3(beta), p);
        std::array<std::array<double, 8>, 4> probs;
        for (std::size_t k = 0; k < terms.size(); k++) {
            probs[k] = outcome_probabilities(rho, terms[k].setting);
        }
        double sum = 0, sum_sq = 0, sigma_sum = 0;
        for (int t = 0; t < config.trials; t++) {
            const std::uint64_t trial_seed = derive_seed(config.seed, i, static_cast<std::uint64_t>(t));
            std::array<CountRecord, 4> recs;
            for (std::size_t k = 0; k < terms.size(); k++) {
                recs[k] = sample_counts(probs[k], terms[k].setting, counts, derive_seed(trial_seed, k, 0));
            }
            auto est = estimate_with_errors(recs);
            sum += est.s3_hat;
            sum_sq += est.s3_hat * est.s3_hat;
            sigma_sum += est.sigma;
        }
        const double n = config.trials;
        const double mean = sum / n;
        const double var = config.trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
        records.push_back({beta, p, std::abs(svetlichny_s3(rho)), mean, std::sqrt(var), sigma_sum / n, counts,
                           config.trials});
    }
    return records;
}

ResultTable to_table(const std::vector<SweepRecord> &records) {
    ResultTable t;
    t.columns = {"beta", "a0",    "p",     "w2",      "w2_noisy", "s3_pure", "s3_noisy", "ds3_dbeta", "ds3_pure_dbeta",
                 "tau3", "n3_pure", "n3_noisy"};
    bool with_counts = std::any_of(records.begin(), records.end(), [](const SweepRecord &r) { return r.s3_hat.has_value(); });
    if (with_counts) {
        t.columns.push_back("s3_hat");
        t.columns.push_back("sigma");
    }
    for (const auto &r : records) {
        std::vector<ResultTable::Cell> row{r.beta,      r.a0,       r.p,        r.w2,           r.w2_noisy,
                                           r.s3_pure,   r.s3_noisy, r.ds3_dbeta, r.ds3_pure_dbeta, r.tau3,
                                           r.n3_pure,   r.n3_noisy};
        if (with_counts) {
            row.emplace_back(r.s3_hat.value_or(kNaN));
            row.emplace_back(r.sigma.value_or(kNaN));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ResultTable to_table(const std::vector<TableRow> &rows) {
    ResultTable t;
    t.columns = {"s3_exp", "s3_err", "status", "beta", "p", "n3", "n3_low", "n3_high", "n3_eq7_direct"};
    for (const auto &r : rows) {
        t.rows.push_back({r.s3_exp, r.s3_err, std::string(to_string(r.status)), r.beta, r.p, r.n3, r.n3_low, r.n3_high,
                          r.n3_eq7_direct});
    }
    return t;
}

ResultTable to_table(const OptimizeReport &r) {
    ResultTable t;
    t.columns = {"beta", "a1", "a2", "b1", "b2", "c1", "c2", "value", "default_value", "p", "value_noisy",
                 "default_value_noisy"};
    const auto &g = r.pure.angles;
    t.rows.push_back({r.beta, g.a1, g.a2, g.b1, g.b2, g.c1, g.c2, r.pure.value, r.pure.default_value, r.p, r.value_noisy,
                      r.default_value_noisy});
    return t;
}

ResultTable to_table(const std::vector<MonteCarloRecord> &records) {
    ResultTable t;
    t.columns = {"beta", "p", "s3_true", "s3_hat_mean", "s3_hat_std", "sigma_mean", "counts", "trials"};
    for (const auto &r : records) {
        t.rows.push_back({r.beta, r.p, r.s3_true, r.s3_hat_mean, r.s3_hat_std, r.sigma_mean, r.counts,
                          static_cast<double>(r.trials)});
    }
    return t;
}

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const ResultTable::Cell &cell) {
    if (const double *d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    return std::get<std::string>(cell);
}

std::vector<std::string> split_commas(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(item);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

ResultTable::Cell parse_cell(const std::string &s) {
    if (!s.empty()) {
        char *end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() + s.size()) {
            return v;
        }
    }
    return s;
}

}  // namespace

void write_csv(std::ostream &out, const std::string &command, const RunConfig &config, const ResultTable &table) {
    out << "# isingbell " << version() << "\n";
    out << "# command: " << command << "\n";
    out << "# config: " << config_to_json(config) << "\n";
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << format_cell(row[i]);
        }
        out << "\n";
    }
}

void write_json(std::ostream &out, const std::string &command, const RunConfig &config, const ResultTable &table) {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); i++) {
            std::visit([&](const auto &v) { rec[table.columns[i]] = v; }, row[i]);
        }
        records.push_back(std::move(rec));
    }
    nlohmann::ordered_json doc{
        {"version", version()}, {"command", command}, {"config", config_json(config)}, {"records", records}};
    out << doc.dump(2) << "\n";
}

ResultTable read_csv(std::istream &in) {
    ResultTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!have_header) {
            t.columns = split_commas(line);
            have_header = true;
            continue;
        }
        std::vector<ResultTable::Cell> row;
        for (const auto &cell : split_commas(line)) {
            row.push_back(parse_cell(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ResultTable read_json(std::istream &in) {
    auto doc = nlohmann::ordered_json::parse(in);
    ResultTable t;
    const auto &records = doc.at("records");
    if (records.empty()) {
        return t;
    }
    for (auto &[key, value] : records.front().items()) {
        t.columns.push_back(key);
    }
    for (const auto &rec : records) {
        std::vector<ResultTable::Cell> row;
        for (const auto &col : t.columns) {
            const auto &v = rec.at(col);
            if (v.is_number()) {
                row.emplace_back(v.get<double>());
            } else if (v.is_null()) {
                row.emplace_back(kNaN);
            } else {
                row.emplace_back(v.get<std::string>());
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> beta_min, beta_max, beta, counts;
    std::optional<int> steps, trials;
    std::optional<bool> noise;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, format;
    std::vector<double> values, errors;
};

void add_common_options(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON file mirroring the run configuration");
    cmd->add_option("--beta-min", o.beta_min, "Lower end of the beta grid");
    cmd->add_option("--beta-max", o.beta_max, "Upper end of the beta grid");
    cmd->add_option("--steps", o.steps, "Number of grid points (>= 3)");
    cmd->add_option("--noise", o.noise, "Apply the white-noise model (true/false)");
    cmd->add_option("--counts", o.counts, "Mean coincidences per measurement setting");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point");
    cmd->add_option("--seed", o.seed, "Base RNG seed");
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json");
}

RunConfig resolve(const Overrides &o) {
    RunConfig c;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) {
            throw ConfigError("cannot read config file '" + o.config_path + "'");
        }
        std::stringstream ss;
        ss << f.rdbuf();
        c = config_from_json(ss.str());
    }
    if (o.beta_min) c.beta_min = *o.beta_min;
    if (o.beta_max) c.beta_max = *o.beta_max;
    if (o.beta) c.beta = *o.beta;
    if (o.counts) c.counts = *o.counts;
    if (o.steps) c.steps = *o.steps;
    if (o.trials) c.trials = *o.trials;
    if (o.noise) c.noise = *o.noise;
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.format) c.format = parse_format(*o.format);
    if (!o.values.empty()) {
        c.table_values = o.values;
        c.table_errors = o.errors.empty() ? std::vector<double>(o.values.size(), 0.0) : o.errors;
    }
    return c;
}

void emit(const std::string &command, const RunConfig &config, const ResultTable &table, std::ostream &stdout_stream) {
    auto write = [&](std::ostream &os) {
        if (config.format == OutputFormat::Csv) {
            write_csv(os, command, config, table);
        } else {
            write_json(os, command, config, table);
        }
    };
    if (config.out.empty()) {
        write(stdout_stream);
        return;
    }
    std::ofstream f(config.out);
    if (!f) {
        throw ConfigError("cannot write output file '" + config.out + "'");
    }
    write(f);
    if (!f) {
        throw ConfigError("failed writing output file '" + config.out + "'");
    }
}

void print_optimize_summary(const OptimizeReport &r, std::ostream &out) {
    const auto &g = r.pure.angles;
    out << "beta                " << format_number(r.beta) << "\n";
    out << "angles (a1 a2 b1 b2 c1 c2) " << format_number(g.a1) << " " << format_number(g.a2) << " "
        << format_number(g.b1) << " " << format_number(g.b2) << " " << format_number(g.c1) << " "
        << format_number(g.c2) << "\n";
    out << "|S3| optimized      " << format_number(r.pure.value) << "\n";
    out << "|S3| default angles " << format_number(r.pure.default_value) << "\n";
    out << "p(beta)             " << format_number(r.p) << "\n";
    out << "noisy optimized     " << format_number(r.value_noisy) << "\n";
    out << "noisy default       " << format_number(r.default_value_noisy) << "\n";
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Transverse-field Ising ring nonlocality and entanglement toolkit"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    Overrides o;

    auto *sweep = app.add_subcommand("sweep", "Beta sweep of witness, Svetlichny function and entanglement");
    add_common_options(sweep, o);
    auto *table = app.add_subcommand("table", "Tripartite negativity from measured Svetlichny values");
    add_common_options(table, o);
    table->add_option("--values", o.values, "Measured |S3| values");
    table->add_option("--errors", o.errors, "Errors of the measured values");
    auto *optimize = app.add_subcommand("optimize", "Optimize the six Svetlichny measurement angles");
    add_common_options(optimize, o);
    optimize->add_option("--beta", o.beta, "Reduced field of the ground state");
    auto *montecarlo = app.add_subcommand("montecarlo", "Poisson count simulation of the Svetlichny estimator");
    add_common_options(montecarlo, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion &e) {
        out << version() << "\n";
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig config = resolve(o);
        if (sweep->parsed()) {
            emit("sweep", config, to_table(run_sweep(config)), out);
        } else if (table->parsed()) {
            emit("table", config, to_table(run_table(config)), out);
        } else if (optimize->parsed()) {
            auto report = run_optimize(config);
            if (config.out.empty()) {
                print_optimize_summary(report, out);
            } else {
                print_optimize_summary(report, out);
                emit("optimize", config, to_table(report), out);
            }
        } else if (montecarlo->parsed()) {
            emit("montecarlo", config, to_table(run_montecarlo(config)), out);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError &e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError &e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace isingbell
