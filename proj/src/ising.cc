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

#include "isingbell/ising.h"

#include <bit>
#include <cmath>
#include <string>

namespace isingbell {

RingSpec::RingSpec(int n_spins, double coupling, double field) : n_spins_(n_spins), coupling_(coupling), field_(field) {
    if (n_spins < kMinSpins || n_spins > kMaxSpins) {
        throw DomainError("ring size " + std::to_string(n_spins) + " outside [2, 10]");
    }
    if (!std::isfinite(coupling) || coupling <= 0) {
        throw DomainError("coupling must be finite and positive");
    }
    if (!std::isfinite(field)) {
        throw DomainError("field must be finite");
    }
}

RingSpec RingSpec::from_beta(int n_spins, double beta) {
    return RingSpec(n_spins, 1.0, beta);
}

ComplexMatrix build_hamiltonian(const RingSpec &spec) {
    const int n = spec.n_spins();
    const std::size_t dim = spec.dim();
    ComplexMatrix h(dim, dim);
    auto bit_of_site = [n](int site) { return std::size_t{1} << (n - 1 - site); };
    for (std::size_t s = 0; s < dim; s++) {
        double zsum = 0;
        for (int site = 0; site < n; site++) {
            zsum += (s & bit_of_site(site)) ? -1.0 : 1.0;
        }
        h(s, s) += spec.field() * zsum;
        for (int site = 0; site < n; site++) {
            std::size_t flipped = s ^ bit_of_site(site) ^ bit_of_site((site + 1) % n);
            h(flipped, s) -= spec.coupling();
        }
    }
    return h;
}

GroundState ground_state(const RingSpec &spec, const Tolerances &tol) {
    const ComplexMatrix h = build_hamiltonian(spec);
    const std::size_t dim = spec.dim();

    struct Sector {
        std::vector<std::size_t> basis;
        EigenResult eig;
    };
    Sector sectors[2];
    for (std::size_t s = 0; s < dim; s++) {
        sectors[std::popcount(s) & 1].basis.push_back(s);
    }
    for (auto &sector : sectors) {
        const std::size_t m = sector.basis.size();
        ComplexMatrix block(m, m);
        for (std::size_t r = 0; r < m; r++) {
            for (std::size_t c = 0; c < m; c++) {
                block(r, c) = h(sector.basis[r], sector.basis[c]);
            }
        }
        sector.eig = hermitian_eig(block, tol);
    }

    const double e_even = sectors[0].eig.eigenvalues.front();
    const double e_odd = sectors[1].eig.eigenvalues.front();
    int chosen;
    bool cross_tie = std::abs(e_even - e_odd) < tol.degeneracy_gap;
    if (cross_tie) {
        if (spec.field() < 0) {
            chosen = 0;  // |0...0>
        } else if (spec.field() > 0) {
            chosen = spec.n_spins() & 1;  // |1...1>
        } else {
            chosen = 0;
        }
    } else {
        chosen = e_even < e_odd ? 0 : 1;
    }
    const Sector &sector = sectors[chosen];

    GroundState gs{ComplexVector(dim), sector.eig.eigenvalues.front(), spec.beta(), false};
    const ComplexVector &v = sector.eig.eigenvectors.front();
    for (std::size_t i = 0; i < sector.basis.size(); i++) {
        gs.state[sector.basis[i]] = v[i];
    }
    gs.degenerate = sector.eig.degenerate.front() || (cross_tie && spec.field() == 0);
    return gs;
}

double a0_of_beta(double beta) {
    if (!std::isfinite(beta) || beta > 0) {
        throw DomainError("a0_of_beta requires beta <= 0, got " + std::to_string(beta));
    }
    return -1.0 - 2.0 * beta + 2.0 * std::sqrt(1.0 + beta + beta * beta);
}

double beta_of_a0(double a0) {
    if (!std::isfinite(a0) || a0 < 1) {
        throw DomainError("beta_of_a0 requires a0 >= 1, got " + std::to_string(a0));
    }
    return -(a0 + 3.0) * (a0 - 1.0) / (4.0 * a0);
}

namespace {

void require_pipeline_beta(double beta) {
    if (!(beta >= kBetaMin && beta < 0)) {
        throw DomainError("beta " + std::to_string(beta) + " outside the analytic range [-2, 0)");
    }
}

}  // namespace

ComplexVector ground_state_n3_from_a0(double a0) {
    if (!std::isfinite(a0) || a0 < 1) {
        throw DomainError("a0 must be >= 1");
    }
    const double norm = 1.0 / std::sqrt(3.0 + a0 * a0);
    ComplexVector v(8);
    v[0b000] = a0 * norm;
    v[0b011] = norm;
    v[0b101] = norm;
    v[0b110] = norm;
    return v;
}

ComplexVector analytic_ground_state_n3(double beta) {
    require_pipeline_beta(beta);
    return ground_state_n3_from_a0(a0_of_beta(beta));
}

ComplexMatrix analytic_pair_state_n3(double beta) {
    require_pipeline_beta(beta);
    const double a0 = a0_of_beta(beta);
    const double n = 1.0 / (a0 * a0 + 3.0);
    ComplexMatrix rho(4, 4);
    rho(0, 0) = a0 * a0 * n;
    rho(0, 3) = a0 * n;
    rho(3, 0) = a0 * n;
    rho(3, 3) = n;
    rho(1, 1) = n;
    rho(1, 2) = n;
    rho(2, 1) = n;
    rho(2, 2) = n;
    return rho;
}

}  // namespace isingbell
