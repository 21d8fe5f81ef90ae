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

#include "isingbell/entanglement.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isingbell/correlations.h"
#include "isingbell/ising.h"
#include "isingbell/photonics.h"

namespace isingbell {

BipartitionLabel::BipartitionLabel(int solo) : solo_(solo) {
    if (solo < 0 || solo > 2) {
        throw DomainError("bipartition solo site must be 0, 1 or 2");
    }
}

std::array<int, 2> BipartitionLabel::pair() const {
    switch (solo_) {
        case 0:
            return {1, 2};
        case 1:
            return {0, 2};
        default:
            return {0, 1};
    }
}

double concurrence(const ComplexMatrix &rho2, const Tolerances &tol) {
    if (rho2.rows() != 4 || rho2.cols() != 4) {
        throw DimensionError("concurrence expects a 4x4 two-qubit state");
    }
    validate_density_matrix(rho2, tol);

    // rho = W W^dagger; the Wootters values are the singular values of the
    // symmetric matrix T = W^T (sy sy) W. Directions with vanishing weight
    // are dropped so rounding noise never reaches a square root.
    auto eig = hermitian_eig(rho2, tol);
    std::vector<ComplexVector> columns;
    for (std::size_t k = 0; k < 4; k++) {
        if (eig.eigenvalues[k] > 1e-14) {
            ComplexVector c = eig.eigenvectors[k];
            c *= std::sqrt(eig.eigenvalues[k]);
            columns.push_back(std::move(c));
        }
    }
    const std::size_t r = columns.size();
    if (r == 0) {
        return 0.0;
    }
    static const ComplexMatrix yy = pauli_string("yy");
    ComplexMatrix t(r, r);
    for (std::size_t i = 0; i < r; i++) {
        ComplexVector yy_wj;
        for (std::size_t j = 0; j < r; j++) {
            yy_wj = yy * columns[j];
            Complex s = 0;
            for (std::size_t k = 0; k < 4; k++) {
                s += columns[i][k] * yy_wj[k];
            }
            t(i, j) = s;
        }
    }
    // Singular values of T from the Hermitian embedding [[0, T], [T^dag, 0]].
    ComplexMatrix embed(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; i++) {
        for (std::size_t j = 0; j < r; j++) {
            embed(i, r + j) = t(i, j);
            embed(r + j, i) = std::conj(t(i, j));
        }
    }
    auto sv = hermitian_eig(embed, tol).eigenvalues;
    std::vector<double> lambdas(sv.end() - static_cast<std::ptrdiff_t>(r), sv.end());
    for (auto &l : lambdas) {
        l = std::max(0.0, l);
    }
    std::sort(lambdas.rbegin(), lambdas.rend());
    double c = lambdas[0];
    for (std::size_t i = 1; i < lambdas.size(); i++) {
        c -= lambdas[i];
    }
    return std::max(0.0, c);
}

double negativity(const ComplexMatrix &rho, BipartitionLabel cut, const Tolerances &tol) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw DimensionError("negativity expects an 8x8 three-qubit state");
    }
    validate_density_matrix(rho, tol);
    auto pt = partial_transpose(rho, {2, 2, 2}, static_cast<std::size_t>(cut.solo()));
    double trace_norm = 0;
    for (double l : hermitian_eig(pt, tol).eigenvalues) {
        trace_norm += std::abs(l);
    }
    return std::max(0.0, trace_norm - 1.0);
}

double tripartite_negativity(const ComplexMatrix &rho, const Tolerances &tol) {
    double product = 1;
    for (auto cut : BipartitionLabel::all()) {
        product *= negativity(rho, cut, tol);
    }
    return std::cbrt(product);
}

double three_tangle_pure(const ComplexVector &psi, const Tolerances &tol) {
    if (psi.dim() != 8) {
        throw DimensionError("three_tangle_pure expects an 8-dimensional state");
    }
    validate_state(psi, tol);
    const ComplexMatrix rho = ComplexMatrix::projector(psi);
    const ComplexMatrix rho1 = partial_trace(rho, {2, 2, 2}, {0});
    const double det = (rho1(0, 0) * rho1(1, 1)).real() - std::norm(rho1(0, 1));
    const double c1_23_sq = 4 * det;
    const double c12 = concurrence(partial_trace(rho, {2, 2, 2}, {0, 1}), tol);
    const double c13 = concurrence(partial_trace(rho, {2, 2, 2}, {0, 2}), tol);
    const double tau = c1_23_sq - c12 * c12 - c13 * c13;
    constexpr double clamp_tol = 1e-9;
    if (tau < -clamp_tol || tau > 1 + clamp_tol) {
        throw DomainError("three-tangle " + std::to_string(tau) + " outside [0, 1]");
    }
    return std::clamp(tau, 0.0, 1.0);
}

namespace {

// Accepts (sqrt2, 4 sqrt2], absorbing rounding just above the upper end.
double checked_s3(double s3) {
    if (!std::isfinite(s3) || s3 <= kSqrt2 || s3 > kSvetlichnyQuantumMax * (1 + 1e-12)) {
        throw DomainError("|<S3>| = " + std::to_string(s3) + " outside (sqrt2, 4 sqrt2]");
    }
    return std::min(s3, kSvetlichnyQuantumMax);
}

}  // namespace

double tau3_from_s3(double s3) {
    const double s = checked_s3(s3);
    const double gap = kSvetlichnyQuantumMax - s;
    return (3 * (s * s - 2 * kSqrt2 * s - 4) + std::sqrt(3 * s) * gap * std::sqrt(gap)) / 36;
}

double a0_from_s3(double s3) {
    const double s = checked_s3(s3);
    const double disc = std::max(0.0, 12 * kSqrt2 * s - 3 * s * s);
    return (3 * kSqrt2 + std::sqrt(disc)) / (s - kSqrt2);
}

double n3_of_a0(double a0) {
    if (!std::isfinite(a0) || a0 < 1) {
        throw DomainError("n3_of_a0 requires a0 >= 1");
    }
    return 2 * std::sqrt(2 * (1 + a0 * a0)) / (3 + a0 * a0);
}

double n3_from_s3(double s3) {
    return n3_of_a0(a0_from_s3(s3));
}

namespace {

double pure_s3(double beta) {
    return std::abs(svetlichny_s3(ComplexMatrix::projector(analytic_ground_state_n3(beta))));
}

double noisy_s3(const NoiseModel &noise, double beta) {
    return p_of_beta(noise, beta) * pure_s3(beta);
}

}  // namespace

std::pair<double, double> noisy_s3_range(const NoiseModel &noise) {
    double a = noisy_s3(noise, kBetaMin);
    double b = noisy_s3(noise, kBetaMaxSweep);
    return {std::min(a, b), std::max(a, b)};
}

BetaInference infer_beta_from_measured_s3(double s3_exp, const NoiseModel &noise) {
    if (!(s3_exp > 0) || !std::isfinite(s3_exp)) {
        throw DomainError("measured |<S3>| must be positive");
    }
    double lo = kBetaMin;
    double hi = kBetaMaxSweep;
    double f_lo = noisy_s3(noise, lo) - s3_exp;
    double f_hi = noisy_s3(noise, hi) - s3_exp;
    if (f_lo * f_hi > 0) {
        auto [min_v, max_v] = noisy_s3_range(noise);
        throw DomainError("measured |<S3>| = " + std::to_string(s3_exp) + " outside attainable range [" +
                          std::to_string(min_v) + ", " + std::to_string(max_v) + "]");
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        double f_mid = noisy_s3(noise, mid) - s3_exp;
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    const double beta = 0.5 * (lo + hi);
    const double p = p_of_beta(noise, beta);

    // White noise has no three-site Pauli correlations, so |<S3>| of the
    // mixture is p times the pure value.
    const ComplexVector psi = analytic_ground_state_n3(beta);
    const double mixed = std::abs(svetlichny_s3(werner(psi, p)));
    if (std::abs(mixed - p * pure_s3(beta)) > 1e-12) {
        throw std::logic_error("Werner factorization of |<S3>| violated");
    }
    return {beta, p};
}

}  // namespace isingbell
