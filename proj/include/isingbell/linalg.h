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

#ifndef ISINGBELL_LINALG_H
#define ISINGBELL_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isingbell {

using Complex = std::complex<double>;

/// Raised when operand shapes are incompatible (matrix products, subsystem dims).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input lies outside the mathematical domain of an operation
/// (non-Hermitian matrix, unnormalized state, out-of-range parameter).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Numerical tolerances shared across the library. Every check that takes a
/// tolerance reads it from one of these records so callers can override them
/// in a single place.
struct Tolerances {
    /// Hermiticity of density matrices and observables.
    double hermitian = 1e-12;
    /// Hermiticity accepted by hermitian_eig.
    double eig_input_hermitian = 1e-10;
    /// |Tr rho - 1| for density matrices.
    double trace = 1e-12;
    /// Smallest eigenvalue allowed for a density matrix.
    double psd = 1e-10;
    /// Eigenvalue gaps below this are treated as degenerate.
    double degeneracy_gap = 1e-10;
    /// | ||psi|| - 1 | for state vectors.
    double normalization = 1e-12;
    /// Imaginary residue accepted in expectation values.
    double expectation_imag = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

class ComplexVector {
   public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : entries_(dim) {
    }
    ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {
    }
    explicit ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    }

    /// Computational basis vector |index> of dimension dim.
    static ComplexVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return entries_.size();
    }
    Complex &operator[](std::size_t i) {
        return entries_[i];
    }
    const Complex &operator[](std::size_t i) const {
        return entries_[i];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> entries() {
        return entries_;
    }

    double norm() const;
    ComplexVector normalized() const;

    ComplexVector &operator+=(const ComplexVector &other);
    ComplexVector &operator*=(Complex scale);

    friend ComplexVector operator+(ComplexVector a, const ComplexVector &b) {
        return a += b;
    }
    friend ComplexVector operator*(Complex s, ComplexVector v) {
        return v *= s;
    }
    bool operator==(const ComplexVector &) const = default;

   private:
    std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    }
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v|
    static ComplexMatrix projector(const ComplexVector &v);
    /// |u><v|
    static ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;
    /// Largest entry magnitude.
    double max_abs() const;
    /// max |A_ij - conj(A_ji)|; infinity for non-square matrices.
    double hermiticity_error() const;
    bool is_hermitian(double tol) const {
        return hermiticity_error() <= tol;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix m) {
        return m *= s;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend ComplexVector operator*(const ComplexMatrix &a, const ComplexVector &v);
    bool operator==(const ComplexMatrix &) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// <u|v>, conjugate-linear in the first argument.
Complex inner(const ComplexVector &u, const ComplexVector &v);
/// |<u|v>|^2 for normalized u, v.
double fidelity(const ComplexVector &u, const ComplexVector &v);
/// Largest entry-wise distance; infinity on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

enum class PauliAxis { I, X, Y, Z };

/// Pauli matrix with sigma_z|0> = +|0> and sigma_y|0> = i|1>.
ComplexMatrix pauli(PauliAxis axis);

/// Kronecker product; the left factor owns the most significant index.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector tensor(const ComplexVector &a, const ComplexVector &b);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors);
/// Tensor product of single-site Paulis, e.g. pauli_string("yzy").
ComplexMatrix pauli_string(const std::string &axes);

/// Reduced state on the subsystems listed in `keep`, returned in their
/// original order. `dims` lists subsystem dimensions, most significant first.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep);

/// Transposes the indices of one subsystem.
ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                                std::size_t subsystem);
ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::initializer_list<std::size_t> dims,
                                std::size_t subsystem);

struct EigenResult {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// eigenvectors[i] pairs with eigenvalues[i].
    std::vector<ComplexVector> eigenvectors;
    /// True when eigenvalue i lies within the degeneracy gap of a neighbour.
    std::vector<bool> degenerate;
};

/// Full spectral decomposition of a Hermitian matrix by Householder
/// reduction to real tridiagonal form and implicit-shift QL. Each eigenvector
/// is phased so its first largest-magnitude component is real and positive,
/// which makes the output a deterministic function of the input.
EigenResult hermitian_eig(const ComplexMatrix &h, const Tolerances &tol = kDefaultTolerances);

/// Smallest eigenvalue and its eigenvector.
std::pair<double, ComplexVector> min_eigenpair(const ComplexMatrix &h,
                                               const Tolerances &tol = kDefaultTolerances);

/// Throws DomainError unless rho is Hermitian, unit trace and positive
/// semidefinite within tolerance.
void validate_density_matrix(const ComplexMatrix &rho, const Tolerances &tol = kDefaultTolerances);
/// Throws DomainError unless psi has unit norm within tolerance.
void validate_state(const ComplexVector &psi, const Tolerances &tol = kDefaultTolerances);

}  // namespace isingbell

#endif
