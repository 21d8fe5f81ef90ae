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
#include <numbers>
#include <random>
#include <set>

#include "isingbell/correlations.h"
#include "isingbell/entanglement.h"
#include "isingbell/ising.h"
#include "isingbell/photonics.h"
#include "oracles.h"

using namespace isingbell;
using std::numbers::sqrt2;

namespace {

ComplexMatrix noisy_ground(double beta) {
    return werner(analytic_ground_state_n3(beta), p_of_beta(NoiseModel{}, beta));
}

// sigma of the plug-in estimator from the exact correlators of the four
// settings, evaluated on Pauli strings directly.
double propagated_sigma(const ComplexMatrix &rho, double counts) {
    double var = 0;
    for (const char *s : {"yzy", "zyy", "yyz", "zzz"}) {
        double e = expectation(rho, pauli_string(s));
        var += (1 - e * e) / counts;
    }
    return sqrt2 * std::sqrt(var);
}

std::array<CountRecord, 4> sample_all(const ComplexMatrix &rho, double counts, std::uint64_t seed) {
    std::array<CountRecord, 4> recs;
    auto terms = svetlichny_settings();
    for (std::size_t k = 0; k < 4; k++) {
        recs[k] = simulate_counts(rho, terms[k].setting, counts, derive_seed(seed, k, 0));
    }
    return recs;
}

}  // namespace

TEST(source, validation) {
    EXPECT_NO_THROW(SourceParams::measured().validate());
    EXPECT_NO_THROW(SourceParams::balanced().validate());
    EXPECT_THROW((SourceParams{0.6, 0.5, 0.5, 0.5}.validate()), DomainError);
    EXPECT_THROW((SourceParams{1.0, 0.0, 0.5, 0.5}.validate()), DomainError);
}

TEST(experimental_state, examples) {
    auto balanced = experimental_state(SourceParams::balanced(), 1);
    EXPECT_GE(fidelity(balanced, analytic_ground_state_n3(-1e-15)), 1 - 1e-12);

    auto measured = experimental_state(SourceParams::measured(), 1);
    ComplexVector expected(8);
    expected[0b000] = std::sqrt(0.1972);
    expected[0b011] = std::sqrt(0.2772);
    expected[0b101] = std::sqrt(0.3828);
    expected[0b110] = std::sqrt(0.1428);
    expected = expected.normalized();
    for (std::size_t i = 0; i < 8; i++) {
        EXPECT_NEAR(std::abs(measured[i] - expected[i]), 0, 1e-12);
    }
    EXPECT_GT(std::norm(experimental_state(SourceParams::measured(), 1e6)[0]), 1 - 1e-11);
    EXPECT_THROW(experimental_state(SourceParams::measured(), 0.5), DomainError);
}

TEST(experimental_state, balanced_matches_ground_state_family) {
    for (double a0 = 1; a0 < 6.45; a0 += 0.25) {
        auto a = experimental_state(SourceParams::balanced(), a0);
        auto b = analytic_ground_state_n3(std::min(beta_of_a0(a0), -1e-300));
        for (std::size_t i = 0; i < 8; i++) {
            EXPECT_NEAR(std::abs(a[i] - b[i]), 0, 1e-12);
        }
    }
}

TEST(attenuation, examples) {
    EXPECT_NEAR(alpha_of_a0(SourceParams::balanced(), 1), 3, 1e-15);
    EXPECT_NEAR(alpha_of_a0(SourceParams::measured(), 1), 0.8028 / 0.1972, 1e-12);
    EXPECT_THROW(a0_of_alpha(SourceParams::measured(), 5), DomainError);
    EXPECT_THROW(a0_of_alpha(SourceParams::measured(), 0), DomainError);
}

TEST(attenuation, round_trip) {
    for (auto src : {SourceParams::measured(), SourceParams::balanced()}) {
        for (double a0 = 1; a0 < 20; a0 *= 1.3) {
            EXPECT_NEAR(a0_of_alpha(src, alpha_of_a0(src, a0)), a0, 1e-12 * a0);
            double alpha = alpha_of_a0(src, a0);
            EXPECT_NEAR(alpha_of_a0(src, a0_of_alpha(src, alpha)), alpha, 1e-12);
        }
    }
}

TEST(attenuation, range_maps_to_field_interval) {
    auto src = SourceParams::measured();
    double beta_low = beta_of_a0(a0_of_alpha(src, 0.1));
    double beta_high = beta_of_a0(a0_of_alpha(src, 4.0));
    EXPECT_NEAR(beta_low, -2, 0.05);
    EXPECT_NEAR(beta_high, 0, 0.05);
}

TEST(werner, examples) {
    auto psi = analytic_ground_state_n3(-0.7);
    EXPECT_LT(max_abs_diff(werner(psi, 1), ComplexMatrix::projector(psi)), 1e-15);
    EXPECT_LT(max_abs_diff(werner(psi, 0), 0.125 * ComplexMatrix::identity(8)), 1e-15);
    EXPECT_NEAR(std::abs(svetlichny_s3(werner(analytic_ground_state_n3(-1e-9), 0.927))), 0.927 * 4 * sqrt2, 1e-8);
    EXPECT_THROW(werner(psi, 1.5), DomainError);
}

TEST(werner, valid_and_factorizes) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 100; i++) {
        auto psi = oracle::random_state(8, rng);
        double p = u(rng);
        auto rho = werner(psi, p);
        EXPECT_NO_THROW(validate_density_matrix(rho));
        EXPECT_NEAR(std::abs(svetlichny_s3(rho)), p * std::abs(svetlichny_s3(ComplexMatrix::projector(psi))), 1e-12);
    }
}

TEST(noise_model, examples) {
    NoiseModel noise;
    EXPECT_EQ(p_of_beta(noise, 0), 0.927);
    EXPECT_NEAR(p_of_beta(noise, -2), 0.671, 1e-15);
    EXPECT_EQ(rsnr_of_p(0.5), 2);
    EXPECT_THROW(rsnr_of_p(1), DomainError);
    EXPECT_THROW(p_of_beta(noise, 0.5), DomainError);
    EXPECT_EQ(p_of_beta(NoiseModel{1.0, 2.0}, -0.1), 1);
    EXPECT_EQ(p_of_beta(NoiseModel::none(), -1.3), 1);
}

TEST(noise_model, affine_and_round_trip) {
    NoiseModel noise;
    for (int i = 0; i <= 20; i++) {
        double beta = -0.1 * i;
        double p = p_of_beta(noise, beta);
        EXPECT_GE(p, 0);
        EXPECT_LE(p, 1);
        EXPECT_NEAR(p, 0.128 * beta + 0.927, 1e-15);
        EXPECT_NEAR(p_of_rsnr(rsnr_of_p(p)), p, 1e-12);
    }
}

TEST(counts, product_state_single_outcome) {
    auto rho = ComplexMatrix::projector(ComplexVector::basis(8, 0));
    double z = MeasurementSetting::sigma_z().theta;
    auto probs = outcome_probabilities(rho, {z, z, z});
    EXPECT_NEAR(probs[0], 1, 1e-15);
    auto rec = simulate_counts(rho, {z, z, z}, 1000, 42);
    for (int k = 1; k < 8; k++) {
        EXPECT_EQ(rec.counts[k], 0u);
    }
    EXPECT_GT(rec.counts[0], 0u);
    EXPECT_EQ(rec.total, rec.counts[0]);
}

TEST(counts, deterministic_and_consistent) {
    auto rho = noisy_ground(-0.4);
    auto setting = svetlichny_settings()[1].setting;
    auto a = simulate_counts(rho, setting, 1e4, 7);
    auto b = simulate_counts(rho, setting, 1e4, 7);
    auto c = simulate_counts(rho, setting, 1e4, 8);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, c.counts);
    std::uint64_t sum = 0;
    for (auto n : a.counts) {
        sum += n;
    }
    EXPECT_EQ(sum, a.total);
}

TEST(counts, large_sample_estimator_within_five_sigma) {
    std::mt19937_64 rng(32);
    auto terms = svetlichny_settings();
    for (int i = 0; i < 20; i++) {
        auto rho = oracle::random_density(8, 2, rng);
        for (std::size_t k = 0; k < 4; k++) {
            auto rec = simulate_counts(rho, terms[k].setting, 1e6, derive_seed(99, i, k));
            auto est = estimate_correlator(rec);
            double exact = mermin_correlator(rho, terms[k].setting[0], terms[k].setting[1], terms[k].setting[2]);
            EXPECT_LE(std::abs(est.value - exact), 5 * est.sigma);
        }
    }
}

TEST(counts, tiny_mean_gives_undefined_correlator) {
    auto rho = noisy_ground(-0.4);
    auto rec = simulate_counts(rho, svetlichny_settings()[0].setting, 0.001, 1);
    ASSERT_EQ(rec.total, 0u);
    EXPECT_THROW(estimate_correlator(rec), DomainError);
    std::array<CountRecord, 4> recs;
    auto terms = svetlichny_settings();
    for (std::size_t k = 0; k < 4; k++) {
        recs[k] = CountRecord{terms[k].setting, {}, 0};
    }
    EXPECT_THROW(estimate_with_errors(recs), DomainError);
}

TEST(estimator, exact_probabilities_reproduce_s3) {
    for (double beta : {-1.8, -1.0, -0.35, -1e-6}) {
        auto rho = noisy_ground(beta);
        auto terms = svetlichny_settings();
        std::array<CountRecord, 4> recs;
        for (std::size_t k = 0; k < 4; k++) {
            auto probs = outcome_probabilities(rho, terms[k].setting);
            recs[k].setting = terms[k].setting;
            for (int o = 0; o < 8; o++) {
                recs[k].counts[o] = static_cast<std::uint64_t>(std::llround(probs[o] * 1e15));
                recs[k].total += recs[k].counts[o];
            }
        }
        EXPECT_NEAR(estimate_with_errors(recs).s3_hat, std::abs(svetlichny_s3(rho)), 1e-12);
    }
}

TEST(estimator, rejects_wrong_setting_order) {
    auto rho = noisy_ground(-1);
    auto recs = sample_all(rho, 1e3, 5);
    std::swap(recs[0], recs[3]);
    EXPECT_THROW(estimate_with_errors(recs), DomainError);
    EXPECT_THROW(estimate_with_errors(std::span<const CountRecord>(recs.data(), 3)), DimensionError);
}

TEST(estimator, sigma_at_moderate_field) {
    // First-order propagation at 1e4 counts/setting gives ~0.0147 here.
    auto rho = noisy_ground(-0.35);
    const double expected = propagated_sigma(rho, 1e4);
    EXPECT_NEAR(expected, 0.0147, 5e-4);
    double mean = 0;
    for (int t = 0; t < 100; t++) {
        mean += estimate_with_errors(sample_all(rho, 1e4, derive_seed(3, 0, t))).sigma / 100;
    }
    EXPECT_NEAR(mean, expected, 0.02 * expected);
}

TEST(estimator, sigma_scales_with_counts) {
    auto rho = noisy_ground(-0.8);
    double s1 = 0, s2 = 0;
    for (int t = 0; t < 100; t++) {
        s1 += estimate_with_errors(sample_all(rho, 1e4, derive_seed(4, 0, t))).sigma;
        s2 += estimate_with_errors(sample_all(rho, 2e4, derive_seed(4, 1, t))).sigma;
    }
    EXPECT_NEAR(s1 / s2, sqrt2, 0.1 * sqrt2);
}

TEST(estimator, unbiased) {
    auto rho = noisy_ground(-0.35);
    const double truth = std::abs(svetlichny_s3(rho));
    double mean = 0, sigma = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; t++) {
        auto est = estimate_with_errors(sample_all(rho, 1e4, derive_seed(5, 0, t)));
        mean += est.s3_hat / trials;
        sigma += est.sigma / trials;
    }
    EXPECT_LE(std::abs(mean - truth), 3 * sigma / std::sqrt(double(trials)));
}

TEST(estimator, large_counts_close_to_truth) {
    auto rho = noisy_ground(-0.35);
    auto est = simulate_s3_measurement(rho, 1e6, 11);
    EXPECT_LE(std::abs(est.s3_hat - std::abs(svetlichny_s3(rho))), 3 * est.sigma);
}

TEST(seeds, distinct_streams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; s++) {
        for (std::uint64_t p = 0; p < 20; p++) {
            for (std::uint64_t t = 0; t < 20; t++) {
                seen.insert(derive_seed(s, p, t));
            }
        }
    }
    EXPECT_EQ(seen.size(), 4u * 20 * 20);
    EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
}
