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

#include "isingbell/correlations.h"

#include <cmath>
#include <random>
#include <string>

#include "isingbell/ising.h"

namespace isingbell {

using std::numbers::pi;

std::array<double, 2> MeasurementSetting::yz_coefficients() const {
    return {-std::cos(theta), -std::sin(theta)};
}

ComplexMatrix MeasurementSetting::observable() const {
    auto [cy, cz] = yz_coefficients();
    return Complex{cy} * pauli(PauliAxis::Y) + Complex{cz} * pauli(PauliAxis::Z);
}

SvetlichnyAngles SvetlichnyAngles::defaults() {
    return {3 * pi / 4, pi / 4, pi / 4, -pi / 4, pi / 4, -pi / 4};
}

namespace {

// Re Tr(a b) without checks.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            s += a(i, j) * b(j, i);
        }
    }
    return s;
}

void require_three_qubit_state(const ComplexMatrix &rho, const Tolerances &tol) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw DimensionError("expected an 8x8 three-qubit density matrix");
    }
    validate_density_matrix(rho, tol);
}

}  // namespace

double expectation(const ComplexMatrix &rho, const ComplexMatrix &obs, const Tolerances &tol) {
    if (!rho.is_square() || rho.rows() != obs.rows() || obs.rows() != obs.cols()) {
        throw DimensionError("expectation: state and observable shapes differ");
    }
    if (!obs.is_hermitian(tol.hermitian * std::max(1.0, obs.max_abs()))) {
        throw DomainError("expectation: observable is not Hermitian");
    }
    Complex v = trace_of_product(rho, obs);
    if (std::abs(v.imag()) > tol.expectation_imag) {
        throw DomainError("expectation: imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

WitnessResult witness_w2(const ComplexMatrix &rho2, const Tolerances &tol) {
    if (rho2.rows() != 4 || rho2.cols() != 4) {
        throw DimensionError("witness_w2 expects a 4x4 two-qubit state");
    }
    validate_density_matrix(rho2, tol);
    auto pt = partial_transpose(rho2, {2, 2}, 1);
    auto [lambda_min, v] = min_eigenpair(pt, tol);
    (void)lambda_min;
    ComplexMatrix w = partial_transpose(ComplexMatrix::projector(v), {2, 2}, 1);
    return {expectation(rho2, w, tol), std::move(w)};
}

ComplexMatrix singlet_witness_pauli_form() {
    ComplexMatrix w = pauli_string("ii") - pauli_string("xx") + pauli_string("yy") - pauli_string("zz");
    w *= 0.25;
    return w;
}

bool witness_pauli_decomposition_check(double beta) {
    auto w = witness_w2(analytic_pair_state_n3(beta));
    return max_abs_diff(w.witness, singlet_witness_pauli_form()) <= 1e-9;
}

double svetlichny_s3(const ComplexMatrix &rho, const Tolerances &tol) {
    require_three_qubit_state(rho, tol);
    static const ComplexMatrix yzy = pauli_string("yzy");
    static const ComplexMatrix zyy = pauli_string("zyy");
    static const ComplexMatrix yyz = pauli_string("yyz");
    static const ComplexMatrix zzz = pauli_string("zzz");
    return std::sqrt(2.0) *
           (expectation(rho, yzy, tol) + expectation(rho, zyy, tol) + expectation(rho, yyz, tol) -
            expectation(rho, zzz, tol));
}

YZCorrelationTensor::YZCorrelationTensor(const ComplexMatrix &rho) {
    if (rho.rows() != 8 || rho.cols() != 8) {
        throw DimensionError("correlation tensor needs an 8x8 state");
    }
    static const char labels[2] = {'y', 'z'};
    for (int p = 0; p < 2; p++) {
        for (int q = 0; q < 2; q++) {
            for (int r = 0; r < 2; r++) {
                std::string axes{labels[p], labels[q], labels[r]};
                t_[p][q][r] = trace_of_product(rho, pauli_string(axes)).real();
            }
        }
    }
}

double YZCorrelationTensor::correlator(double theta_a, double theta_b, double theta_c) const {
    auto a = MeasurementSetting{theta_a}.yz_coefficients();
    auto b = MeasurementSetting{theta_b}.yz_coefficients();
    auto c = MeasurementSetting{theta_c}.yz_coefficients();
    double s = 0;
    for (int p = 0; p < 2; p++) {
        for (int q = 0; q < 2; q++) {
            for (int r = 0; r < 2; r++) {
                s += a[p] * b[q] * c[r] * t_[p][q][r];
            }
        }
    }
    return s;
}

double YZCorrelationTensor::svetlichny_sum(const SvetlichnyAngles &g) const {
    double m3 = correlator(g.a1, g.b1, g.c2) + correlator(g.a1, g.b2, g.c1) + correlator(g.a2, g.b1, g.c1) -
                correlator(g.a2, g.b2, g.c2);
    double m3p = correlator(g.a2, g.b2, g.c1) + correlator(g.a2, g.b1, g.c2) + correlator(g.a1, g.b2, g.c2) -
                 correlator(g.a1, g.b1, g.c1);
    return m3 + m3p;
}

double mermin_correlator(const ComplexMatrix &rho, double theta_a, double theta_b, double theta_c,
                         const Tolerances &tol) {
    require_three_qubit_state(rho, tol);
    ComplexMatrix obs = tensor({MeasurementSetting{theta_a}.observable(), MeasurementSetting{theta_b}.observable(),
                                MeasurementSetting{theta_c}.observable()});
    return expectation(rho, obs, tol);
}

MerminPair mermin_functions(const ComplexMatrix &rho, const SvetlichnyAngles &g, const Tolerances &tol) {
    auto e = [&](double a, double b, double c) { return mermin_correlator(rho, a, b, c, tol); };
    return {
        e(g.a1, g.b1, g.c2) + e(g.a1, g.b2, g.c1) + e(g.a2, g.b1, g.c1) - e(g.a2, g.b2, g.c2),
        e(g.a2, g.b2, g.c1) + e(g.a2, g.b1, g.c2) + e(g.a1, g.b2, g.c2) - e(g.a1, g.b1, g.c1),
    };
}

double svetlichny_from_mermin(const ComplexMatrix &rho, const SvetlichnyAngles &angles, const Tolerances &tol) {
    auto m = mermin_functions(rho, angles, tol);
    return std::abs(m.m3 + m.m3_prime);
}

namespace {

double wrap_angle(double t) {
    t = std::remainder(t, 2 * pi);
    return t <= -pi ? t + 2 * pi : t;
}

class SvetlichnyObjective {
   public:
    explicit SvetlichnyObjective(const ComplexMatrix &rho) : tensor_(rho) {
    }

    double operator()(const std::array<double, 6> &x) const {
        return std::abs(tensor_.svetlichny_sum(SvetlichnyAngles::from_array(x)));
    }

    // Best value over the coarse grid for one coordinate; updates x in place.
    double grid_scan(std::array<double, 6> &x, int coord, double step, double current) const {
        const int n = static_cast<int>(std::lround(2 * pi / step));
        double best_theta = x[coord];
        for (int k = 0; k < n; k++) {
            std::array<double, 6> trial = x;
            trial[coord] = wrap_angle(k * step);
            double v = (*this)(trial);
            if (v > current) {
                current = v;
                best_theta = trial[coord];
            }
        }
        x[coord] = best_theta;
        return current;
    }

    // The signed sum is c + u cos(t) + w sin(t) in any single angle, so its
    // absolute value peaks at |c| + hypot(u, w).
    double exact_coordinate_step(std::array<double, 6> &x, int coord, double current) const {
        auto signed_at = [&](double t) {
            std::array<double, 6> trial = x;
            trial[coord] = t;
            return tensor_.svetlichny_sum(SvetlichnyAngles::from_array(trial));
        };
        double s0 = signed_at(0);
        double s_half = signed_at(pi / 2);
        double s_pi = signed_at(pi);
        double c = 0.5 * (s0 + s_pi);
        double u = 0.5 * (s0 - s_pi);
        double w = s_half - c;
        double phi = std::atan2(w, u);
        double theta = wrap_angle(c >= 0 ? phi : phi + pi);
        std::array<double, 6> trial = x;
        trial[coord] = theta;
        double v = (*this)(trial);
        if (v > current) {
            x = trial;
            return v;
        }
        return current;
    }

   private:
    YZCorrelationTensor tensor_;
};

}  // namespace

AngleOptimum optimize_svetlichny_angles(const ComplexMatrix &rho, const AngleOptimizerOptions &options,
                                        const Tolerances &tol) {
    require_three_qubit_state(rho, tol);
    SvetlichnyObjective objective(rho);
    const auto defaults = SvetlichnyAngles::defaults().as_array();
    const double default_value = objective(defaults);

    std::vector<std::array<double, 6>> starts{defaults};
    std::mt19937_64 rng(options.seed);
    const int grid_points = static_cast<int>(std::lround(2 * pi / options.grid_step));
    std::uniform_int_distribution<int> pick(0, grid_points - 1);
    for (int s = 0; s < options.random_starts; s++) {
        std::array<double, 6> x;
        for (auto &t : x) {
            t = wrap_angle(pick(rng) * options.grid_step);
        }
        starts.push_back(x);
    }

    std::array<double, 6> best = defaults;
    double best_value = default_value;
    for (auto x : starts) {
        double value = objective(x);
        for (int sweep = 0; sweep < 20; sweep++) {
            double before = value;
            for (int coord = 0; coord < 6; coord++) {
                value = objective.grid_scan(x, coord, options.grid_step, value);
            }
            if (value <= before) {
                break;
            }
        }
        for (int sweep = 0; sweep < options.max_sweeps; sweep++) {
            double before = value;
            for (int coord = 0; coord < 6; coord++) {
                value = objective.exact_coordinate_step(x, coord, value);
            }
            if (value - before < options.value_tolerance) {
                break;
            }
        }
        if (value > best_value) {
            best_value = value;
            best = x;
        }
    }
    return {SvetlichnyAngles::from_array(best), best_value, default_value};
}

std::vector<double> grid_derivative(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size()) {
        throw DimensionError("grid and values differ in length");
    }
    const std::size_t n = x.size();
    if (n < 3) {
        throw DomainError("derivative needs at least 3 grid points");
    }
    for (std::size_t i = 1; i < n; i++) {
        if (!(x[i] > x[i - 1])) {
            throw DomainError("grid must be strictly ascending");
        }
    }
    std::vector<double> d(n);
    {
        double h1 = x[1] - x[0];
        double h2 = x[2] - x[1];
        d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
               h1 / (h2 * (h1 + h2)) * f[2];
    }
    for (std::size_t i = 1; i + 1 < n; i++) {
        double h1 = x[i] - x[i - 1];
        double h2 = x[i + 1] - x[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
    }
    {
        double h1 = x[n - 2] - x[n - 3];
        double h2 = x[n - 1] - x[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                   (h1 + 2 * h2) / (h2 * (h1 + h2)) * f[n - 1];
    }
    return d;
}

}  // namespace isingbell
