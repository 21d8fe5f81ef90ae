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

#include "isingbell/photonics.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "isingbell/ising.h"

namespace isingbell {

void SourceParams::validate() const {
    for (double v : {eta_hh, eta_vv, eta_t, eta_r}) {
        if (!(v > 0 && v < 1)) {
            throw DomainError("source probabilities must lie in (0, 1)");
        }
    }
    if (std::abs(eta_hh + eta_vv - 1) > 1e-12 || std::abs(eta_t + eta_r - 1) > 1e-12) {
        throw DomainError("source probabilities must sum to 1 per pair");
    }
}

ComplexVector experimental_state(const SourceParams &src, double a0) {
    src.validate();
    if (!std::isfinite(a0) || a0 < 1) {
        throw DomainError("experimental_state requires a0 >= 1");
    }
    ComplexVector v(8);
    v[0b000] = std::sqrt(src.eta_hh * src.eta_r) * a0;
    v[0b011] = std::sqrt(src.eta_vv * src.eta_t);
    v[0b101] = std::sqrt(src.eta_hh * src.eta_t);
    v[0b110] = std::sqrt(src.eta_vv * src.eta_r);
    return v.normalized();
}

namespace {

double alpha_numerator_ratio(const SourceParams &src) {
    src.validate();
    return (src.eta_vv * src.eta_t + src.eta_hh * src.eta_t + src.eta_vv * src.eta_r) / (src.eta_hh * src.eta_r);
}

}  // namespace

double alpha_of_a0(const SourceParams &src, double a0) {
    if (!std::isfinite(a0) || a0 < 1) {
        throw DomainError("alpha_of_a0 requires a0 >= 1");
    }
    return alpha_numerator_ratio(src) / (a0 * a0);
}

double a0_of_alpha(const SourceParams &src, double alpha) {
    const double k = alpha_numerator_ratio(src);
    if (!std::isfinite(alpha) || alpha <= 0) {
        throw DomainError("a0_of_alpha requires alpha > 0");
    }
    if (alpha > k) {
        throw DomainError("alpha " + std::to_string(alpha) + " exceeds " + std::to_string(k) +
                          ", which would need a0 < 1");
    }
    return std::sqrt(k / alpha);
}

ComplexMatrix werner(const ComplexVector &psi, double p, const Tolerances &tol) {
    validate_state(psi, tol);
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("Werner weight p must lie in [0, 1]");
    }
    ComplexMatrix rho = ComplexMatrix::projector(psi);
    rho *= p;
    const double white = (1 - p) / static_cast<double>(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); i++) {
        rho(i, i) += white;
    }
    return rho;
}

double p_of_beta(const NoiseModel &noise, double beta) {
    if (!(beta >= kBetaMin && beta <= 0)) {
        throw DomainError("p_of_beta requires beta in [-2, 0]");
    }
    return std::clamp(noise.slope * beta + noise.intercept, 0.0, 1.0);
}

double rsnr_of_p(double p) {
    if (!(p >= 0 && p < 1)) {
        throw DomainError("rsnr_of_p requires p in [0, 1)");
    }
    return 2 * p / (1 - p);
}

double p_of_rsnr(double rsnr) {
    if (!(rsnr >= 0) || !std::isfinite(rsnr)) {
        throw DomainError("signal-to-noise ratio must be finite and non-negative");
    }
    return rsnr / (2 + rsnr);
}

std::array<double, 8> outcome_probabilities(const ComplexMatrix &rho, const SettingAngles &setting) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw DimensionError("outcome_probabilities needs an 8x8 state");
    }
    std::array<std::array<ComplexMatrix, 2>, 3> proj;
    for (int site = 0; site < 3; site++) {
        ComplexMatrix o = MeasurementSetting{setting[site]}.observable();
        ComplexMatrix id = ComplexMatrix::identity(2);
        proj[site][0] = 0.5 * (id + o);
        proj[site][1] = 0.5 * (id - o);
    }
    std::array<double, 8> probs{};
    for (int k = 0; k < 8; k++) {
        ComplexMatrix pk = tensor({proj[0][(k >> 2) & 1], proj[1][(k >> 1) & 1], proj[2][k & 1]});
        Complex s = 0;
        for (std::size_t i = 0; i < 8; i++) {
            for (std::size_t j = 0; j < 8; j++) {
                s += rho(i, j) * pk(j, i);
            }
        }
        probs[k] = std::max(0.0, s.real());
    }
    return probs;
}

CountRecord sample_counts(const std::array<double, 8> &probs, const SettingAngles &setting, double mean_total,
                          std::uint64_t seed) {
    if (!(mean_total > 0) || !std::isfinite(mean_total)) {
        throw DomainError("mean_total must be positive");
    }
    std::mt19937_64 rng(seed);
    CountRecord record{setting, {}, 0};
    for (int k = 0; k < 8; k++) {
        double mean = mean_total * probs[k];
        if (mean > 0) {
            std::poisson_distribution<std::uint64_t> poisson(mean);
            record.counts[k] = poisson(rng);
        }
        record.total += record.counts[k];
    }
    return record;
}

CountRecord simulate_counts(const ComplexMatrix &rho, const SettingAngles &setting, double mean_total,
                            std::uint64_t seed) {
    return sample_counts(outcome_probabilities(rho, setting), setting, mean_total, seed);
}

std::array<SvetlichnyTerm, 4> svetlichny_settings() {
    const double y = MeasurementSetting::sigma_y().theta;
    const double z = MeasurementSetting::sigma_z().theta;
    return {{
        {{y, z, y}, 1.0},
        {{z, y, y}, 1.0},
        {{y, y, z}, 1.0},
        {{z, z, z}, -1.0},
    }};
}

CorrelatorEstimate estimate_correlator(const CountRecord &record) {
    if (record.total == 0) {
        throw DomainError("correlator undefined: setting recorded no counts");
    }
    double signed_sum = 0;
    for (int k = 0; k < 8; k++) {
        double sign = (std::popcount(static_cast<unsigned>(k)) & 1) ? -1.0 : 1.0;
        signed_sum += sign * static_cast<double>(record.counts[k]);
    }
    const double n = static_cast<double>(record.total);
    const double e = signed_sum / n;
    return {e, std::sqrt(std::max(0.0, 1 - e * e) / n)};
}

S3Estimate estimate_with_errors(std::span<const CountRecord> records) {
    const auto terms = svetlichny_settings();
    if (records.size() != terms.size()) {
        throw DimensionError("estimate_with_errors needs exactly the four Svetlichny settings");
    }
    double sum = 0;
    double var = 0;
    for (std::size_t k = 0; k < terms.size(); k++) {
        for (int site = 0; site < 3; site++) {
            if (std::abs(std::remainder(records[k].setting[site] - terms[k].setting[site], 2 * std::numbers::pi)) >
                1e-12) {
                throw DomainError("record " + std::to_string(k) + " does not match Svetlichny setting order");
            }
        }
        auto est = estimate_correlator(records[k]);
        sum += terms[k].sign * est.value;
        var += est.sigma * est.sigma;
    }
    return {std::abs(std::numbers::sqrt2 * sum), std::numbers::sqrt2 * std::sqrt(var)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(seed) ^ point) ^ trial);
}

S3Estimate simulate_s3_measurement(const ComplexMatrix &rho, double mean_total, std::uint64_t seed) {
    std::array<CountRecord, 4> records;
    const auto terms = svetlichny_settings();
    for (std::size_t k = 0; k < terms.size(); k++) {
        records[k] = simulate_counts(rho, terms[k].setting, mean_total, derive_seed(seed, k, 0));
    }
    return estimate_with_errors(records);
}

}  // namespace isingbell
