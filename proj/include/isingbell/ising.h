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

#ifndef ISINGBELL_ISING_H
#define ISINGBELL_ISING_H

#include "isingbell/linalg.h"

namespace isingbell {

/// Analytic pipeline range for the reduced field beta = field / coupling.
inline constexpr double kBetaMin = -2.0;
/// Upper end of CLI sweeps; beta = 0 itself is degenerate.
inline constexpr double kBetaMaxSweep = -1e-6;

/// Periodic transverse-field Ising ring
///   H = -J sum_n sx_n sx_{n+1} + B sum_n sz_n,   site N+1 == site 1.
class RingSpec {
   public:
    static constexpr int kMinSpins = 2;
    static constexpr int kMaxSpins = 10;

    /// Throws DomainError for n_spins outside [2, 10], coupling <= 0 or
    /// non-finite parameters.
    RingSpec(int n_spins, double coupling, double field);
    /// Unit coupling with field = beta.
    static RingSpec from_beta(int n_spins, double beta);

    int n_spins() const {
        return n_spins_;
    }
    double coupling() const {
        return coupling_;
    }
    double field() const {
        return field_;
    }
    double beta() const {
        return field_ / coupling_;
    }
    std::size_t dim() const {
        return std::size_t{1} << n_spins_;
    }

   private:
    int n_spins_;
    double coupling_;
    double field_;
};

struct GroundState {
    ComplexVector state;
    double energy;
    double beta;
    /// Set when the lowest level is not unique (see ground_state).
    bool degenerate;
};

/// Dense 2^N x 2^N Hamiltonian; spin 1 is the most significant bit. For N = 2
/// the ring's two bonds are the same pair, so sx_1 sx_2 enters twice.
ComplexMatrix build_hamiltonian(const RingSpec &spec);

/// Lowest eigenvector of the ring Hamiltonian. The Hamiltonian conserves the
/// parity prod_n sz_n, so each parity sector is diagonalized separately; when
/// the two sector minima coincide within the degeneracy gap the field sign
/// picks the sector of the field-aligned product state. `degenerate` is set
/// when the level is degenerate inside its sector, or when the sectors tie at
/// zero field. The global phase makes the largest amplitude real positive.
GroundState ground_state(const RingSpec &spec, const Tolerances &tol = kDefaultTolerances);

/// a0 = -1 - 2 beta + 2 sqrt(1 + beta + beta^2), defined for beta <= 0.
double a0_of_beta(double beta);
/// Inverse of a0_of_beta on a0 >= 1: beta = -(a0 + 3)(a0 - 1) / (4 a0).
double beta_of_a0(double a0);

/// (a0|000> + |011> + |101> + |110>) / sqrt(3 + a0^2) for beta in [-2, 0).
ComplexVector analytic_ground_state_n3(double beta);
/// Same state parametrized by a0 >= 1 directly.
ComplexVector ground_state_n3_from_a0(double a0);

/// Closed-form two-spin marginal of the N = 3 ground state:
///   1/(a0^2+3) [[a0^2,0,0,a0],[0,1,1,0],[0,1,1,0],[a0,0,0,1]].
ComplexMatrix analytic_pair_state_n3(double beta);

}  // namespace isingbell

#endif
