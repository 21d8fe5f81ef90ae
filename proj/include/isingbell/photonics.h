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

#ifndef ISINGBELL_PHOTONICS_H
#define ISINGBELL_PHOTONICS_H

#include <array>
#include <cstdint>
#include <span>

#include "isingbell/correlations.h"
#include "isingbell/linalg.h"

namespace isingbell {

/// Emission and beam-splitter path probabilities of the photon-pair source.
/// Only ratios enter the prepared state, so the quoted per-cone and per-path
/// percentages are stored directly.
struct SourceParams {
    double eta_hh;
    double eta_vv;
    double eta_t;
    double eta_r;

    /// HH/VV cones 0.58/0.42, double transmission/reflection 0.66/0.34.
    static SourceParams measured() {
        return {0.58, 0.42, 0.66, 0.34};
    }
    static SourceParams balanced() {
        return {0.5, 0.5, 0.5, 0.5};
    }
    /// Throws DomainError unless every value is in (0, 1) and each pair sums
    /// to 1 within 1e-12.
    void validate() const;
};

/// White-noise weight p(beta) = slope * beta + intercept, clamped to [0, 1].
struct NoiseModel {
    double slope = 0.128;
    double intercept = 0.927;

    /// Noise-free model, p = 1 everywhere.
    static NoiseModel none() {
        return {0.0, 1.0};
    }
};

/// Source state with cone and path imbalance,
///   N (sqrt(hh r) a0 |000> + sqrt(vv t) |011> + sqrt(hh t) |101> + sqrt(vv r) |110>).
ComplexVector experimental_state(const SourceParams &src, double a0);

/// Attenuation ratio alpha = (P011 + P101 + P110) / P000.
double alpha_of_a0(const SourceParams &src, double a0);
/// Inverse of alpha_of_a0: a0 = sqrt(K / alpha).
double a0_of_alpha(const SourceParams &src, double alpha);

/// p |psi><psi| + (1 - p) I / dim.
ComplexMatrix werner(const ComplexVector &psi, double p, const Tolerances &tol = kDefaultTolerances);

/// Throws DomainError for beta outside [-2, 0].
double p_of_beta(const NoiseModel &noise, double beta);
/// R_SNR = 2p / (1 - p) for p in [0, 1).
double rsnr_of_p(double p);
/// p = R / (2 + R).
double p_of_rsnr(double rsnr);

/// Per-site measurement angles of one three-spin setting.
using SettingAngles = std::array<double, 3>;

struct CountRecord {
    SettingAngles setting;
    /// Outcome index bits (s1 s2 s3), most significant first; bit 0 is the +1
    /// eigenvalue of O(theta), bit 1 the -1 eigenvalue.
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t total = 0;
};

/// Outcome probabilities of projecting rho on the O(theta) eigenbases.
std::array<double, 8> outcome_probabilities(const ComplexMatrix &rho, const SettingAngles &setting);

/// Independent Poisson counts with means mean_total * probs[k].
CountRecord sample_counts(const std::array<double, 8> &probs, const SettingAngles &setting, double mean_total,
                          std::uint64_t seed);

/// Independent Poisson counts with means mean_total * P(outcome).
/// Deterministic for a fixed seed.
CountRecord simulate_counts(const ComplexMatrix &rho, const SettingAngles &setting, double mean_total,
                            std::uint64_t seed);

/// The four settings of the Svetlichny four-correlator form with their signs:
/// (yzy, +), (zyy, +), (yyz, +), (zzz, -).
struct SvetlichnyTerm {
    SettingAngles setting;
    double sign;
};
std::array<SvetlichnyTerm, 4> svetlichny_settings();

struct CorrelatorEstimate {
    double value;
    double sigma;
};

/// E = sum sign_i n_i / N with Poisson-propagated sigma^2 = (1 - E^2) / N.
/// Throws DomainError when the record has no counts.
CorrelatorEstimate estimate_correlator(const CountRecord &record);

struct S3Estimate {
    double s3_hat;
    double sigma;
};

/// |sqrt2 sum_k sign_k E_k| with first-order error propagation. Records must
/// follow svetlichny_settings() order.
S3Estimate estimate_with_errors(std::span<const CountRecord> records);

/// Seed for (seed, point, trial); distinct inputs give independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t trial);

/// Simulates the four Svetlichny settings and estimates |<S3>|.
S3Estimate simulate_s3_measurement(const ComplexMatrix &rho, double mean_total, std::uint64_t seed);

}  // namespace isingbell

#endif
