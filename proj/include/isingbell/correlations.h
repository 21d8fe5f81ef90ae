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

#ifndef ISINGBELL_CORRELATIONS_H
#define ISINGBELL_CORRELATIONS_H

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "isingbell/linalg.h"

namespace isingbell {

/// Single-site dichotomic observable in the y-z plane,
///   O(theta) = -(cos(theta) sy + sin(theta) sz).
/// With this orientation O(3pi/4) (x) O(pi/4) (x) O(pi/4) expands to
/// (sy - sz)(sy + sz)(sy + sz) / (2 sqrt 2), and the Svetlichny combination at
/// the default angles reduces to the four-correlator form. sy is O(pi) and sz
/// is O(-pi/2).
struct MeasurementSetting {
    double theta = 0;

    /// Coefficients (c_y, c_z) of O(theta) on sy and sz.
    std::array<double, 2> yz_coefficients() const;
    ComplexMatrix observable() const;

    static MeasurementSetting sigma_y() {
        return {std::numbers::pi};
    }
    static MeasurementSetting sigma_z() {
        return {-std::numbers::pi / 2};
    }
};

struct SvetlichnyAngles {
    double a1, a2, b1, b2, c1, c2;

    /// (3pi/4, pi/4, pi/4, -pi/4, pi/4, -pi/4).
    static SvetlichnyAngles defaults();
    std::array<double, 6> as_array() const {
        return {a1, a2, b1, b2, c1, c2};
    }
    static SvetlichnyAngles from_array(const std::array<double, 6> &v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
};

/// Re Tr(rho obs). Throws DimensionError on shape mismatch and DomainError if
/// obs is not Hermitian or the imaginary residue exceeds tolerance.
double expectation(const ComplexMatrix &rho, const ComplexMatrix &obs, const Tolerances &tol = kDefaultTolerances);

struct WitnessResult {
    /// <W2> = Tr(rho2 W2), equal to the smallest eigenvalue of rho2^pt.
    double value;
    ComplexMatrix witness;
};

/// W2 = (|v><v|)^pt with |v> the eigenvector of rho2^pt (transposed on the
/// second qubit) belonging to its smallest eigenvalue.
WitnessResult witness_w2(const ComplexMatrix &rho2, const Tolerances &tol = kDefaultTolerances);

/// (1/4)(II - XX + YY - ZZ).
ComplexMatrix singlet_witness_pauli_form();

/// True iff the witness built from the closed-form pair state at beta equals
/// singlet_witness_pauli_form() within 1e-9.
bool witness_pauli_decomposition_check(double beta);

/// <S3> = sqrt2 (<yzy> + <zyy> + <yyz> - <zzz>), signed.
double svetlichny_s3(const ComplexMatrix &rho, const Tolerances &tol = kDefaultTolerances);

/// <sp (x) sq (x) sr> for p, q, r in {y, z}; index 0 is y, 1 is z. Every
/// three-site correlator of y-z plane observables is a trilinear form in it.
class YZCorrelationTensor {
   public:
    explicit YZCorrelationTensor(const ComplexMatrix &rho);

    double at(int p, int q, int r) const {
        return t_[p][q][r];
    }
    double correlator(double theta_a, double theta_b, double theta_c) const;
    /// M3 + M3' at the given angles (signed).
    double svetlichny_sum(const SvetlichnyAngles &angles) const;

   private:
    double t_[2][2][2];
};

/// E(a, b, c) = <O(a) (x) O(b) (x) O(c)>.
double mermin_correlator(const ComplexMatrix &rho, double theta_a, double theta_b, double theta_c,
                         const Tolerances &tol = kDefaultTolerances);

struct MerminPair {
    double m3;
    double m3_prime;
};

///   M3  = E(a1,b1,c2) + E(a1,b2,c1) + E(a2,b1,c1) - E(a2,b2,c2)
///   M3' = E(a2,b2,c1) + E(a2,b1,c2) + E(a1,b2,c2) - E(a1,b1,c1)
MerminPair mermin_functions(const ComplexMatrix &rho, const SvetlichnyAngles &angles,
                            const Tolerances &tol = kDefaultTolerances);

/// |M3 + M3'|.
double svetlichny_from_mermin(const ComplexMatrix &rho, const SvetlichnyAngles &angles,
                              const Tolerances &tol = kDefaultTolerances);

struct AngleOptimum {
    SvetlichnyAngles angles;
    double value;
    /// |M3 + M3'| at SvetlichnyAngles::defaults().
    double default_value;
};

struct AngleOptimizerOptions {
    /// Coarse grid spacing for the per-coordinate scans.
    double grid_step = std::numbers::pi / 24;
    /// Additional grid-aligned starting points beside the default angles.
    int random_starts = 16;
    unsigned long long seed = 2026;
    /// Refinement stops once a full sweep improves the value by less than this.
    double value_tolerance = 1e-12;
    int max_sweeps = 1000;
};

/// Maximizes |M3 + M3'| over the six angles: grid-restricted coordinate
/// ascent from several starts, then exact coordinate ascent in the continuum
/// (the objective is c + u cos(t) + w sin(t) in each single angle). The
/// default angles are always among the starts, so the result never falls
/// below their value.
AngleOptimum optimize_svetlichny_angles(const ComplexMatrix &rho, const AngleOptimizerOptions &options = {},
                                        const Tolerances &tol = kDefaultTolerances);

/// Second-order finite differences on a strictly ascending, possibly
/// non-uniform grid: three-point central formula inside, one-sided
/// three-point formulas at both ends.
std::vector<double> grid_derivative(std::span<const double> grid, std::span<const double> values);

}  // namespace isingbell

#endif
