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

#ifndef ISINGBELL_ENTANGLEMENT_H
#define ISINGBELL_ENTANGLEMENT_H

#include <array>
#include <numbers>

#include "isingbell/linalg.h"

namespace isingbell {

struct NoiseModel;

inline constexpr double kSqrt2 = std::numbers::sqrt2;
/// Largest |<S3>| of any three-qubit state (the GHZ value).
inline constexpr double kSvetlichnyQuantumMax = 4 * std::numbers::sqrt2;
/// Local-realistic bound of the Svetlichny inequality.
inline constexpr double kSvetlichnyLocalBound = 4.0;

/// One spin against the other two; site indices are 0-based.
class BipartitionLabel {
   public:
    /// Throws DomainError unless solo is 0, 1 or 2.
    explicit BipartitionLabel(int solo);

    int solo() const {
        return solo_;
    }
    std::array<int, 2> pair() const;

    static std::array<BipartitionLabel, 3> all() {
        return {BipartitionLabel(0), BipartitionLabel(1), BipartitionLabel(2)};
    }

   private:
    int solo_;
};

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the descending square
/// roots of the eigenvalues of rho (sy sy) rho* (sy sy).
double concurrence(const ComplexMatrix &rho2, const Tolerances &tol = kDefaultTolerances);

/// ||rho^pt||_1 - 1 with the transpose on the solo spin; 1 for GHZ.
double negativity(const ComplexMatrix &rho, BipartitionLabel cut, const Tolerances &tol = kDefaultTolerances);

/// Geometric mean of the three one-versus-two negativities.
double tripartite_negativity(const ComplexMatrix &rho, const Tolerances &tol = kDefaultTolerances);

/// tau3 = C^2_{1|23} - C^2_{12} - C^2_{13} with C_{1|23} = 2 sqrt(det rho_1).
/// Values within 1e-9 outside [0, 1] are clamped; larger excursions throw.
double three_tangle_pure(const ComplexVector &psi, const Tolerances &tol = kDefaultTolerances);

/// Three-tangle of the ground-state family as a function of |<S3>|.
/// Domain (sqrt 2, 4 sqrt 2].
double tau3_from_s3(double s3);

/// a0 of the ground-state family as a function of |<S3>|:
///   a0 = (3 sqrt2 + sqrt(12 sqrt2 s - 3 s^2)) / (s - sqrt2).
double a0_from_s3(double s3);

/// Tripartite negativity 2 sqrt(2(1 + a0^2)) / (3 + a0^2) at a0_from_s3(s3).
double n3_from_s3(double s3);

/// Tripartite negativity of the ground-state family at a given a0.
double n3_of_a0(double a0);

struct BetaInference {
    double beta;
    /// p(beta) at the solution.
    double p;
};

/// Attainable range of p(beta) |<S3>|_pure(beta) over beta in [-2, -1e-6].
std::pair<double, double> noisy_s3_range(const NoiseModel &noise);

/// Solves p(beta) |<S3>|_pure(beta) = s3_exp for beta in [-2, -1e-6] by
/// bisection. Throws DomainError naming the attainable range when no root
/// exists.
BetaInference infer_beta_from_measured_s3(double s3_exp, const NoiseModel &noise);

}  // namespace isingbell

#endif
