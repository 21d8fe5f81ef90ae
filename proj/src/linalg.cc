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

#include "isingbell/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace isingbell {

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) + " out of range for dim " + std::to_string(dim));
    }
    ComplexVector v(dim);
    v[index] = 1.0;
    return v;
}

double ComplexVector::norm() const {
    double s = 0;
    for (const auto &c : entries_) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
    double n = norm();
    if (n == 0) {
        throw DomainError("cannot normalize the zero vector");
    }
    ComplexVector out = *this;
    out *= 1.0 / n;
    return out;
}

ComplexVector &ComplexVector::operator+=(const ComplexVector &other) {
    if (other.dim() != dim()) {
        throw DimensionError("vector sum of mismatched dimensions");
    }
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexVector &ComplexVector::operator*=(Complex scale) {
    for (auto &c : entries_) {
        c *= scale;
    }
    return *this;
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(const ComplexVector &v) {
    return outer(v, v);
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &u, const ComplexVector &v) {
    ComplexMatrix m(u.dim(), v.dim());
    for (std::size_t r = 0; r < u.dim(); r++) {
        for (std::size_t c = 0; c < v.dim(); c++) {
            m(r, c) = u[r] * std::conj(v[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m = *this;
    for (auto &c : m.entries_) {
        c = std::conj(c);
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionError("trace of a non-square matrix");
    }
    Complex t = 0;
    for (std::size_t i = 0; i < rows_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &c : entries_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double ComplexMatrix::hermiticity_error() const {
    if (!is_square()) {
        return std::numeric_limits<double>::infinity();
    }
    double err = 0;
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = r; c < cols_; c++) {
            err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return err;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw DimensionError("matrix sum of mismatched shapes");
    }
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw DimensionError("matrix difference of mismatched shapes");
    }
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &c : entries_) {
        c *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw DimensionError("matrix product of mismatched shapes");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; r++) {
        for (std::size_t k = 0; k < a.cols_; k++) {
            Complex f = a(r, k);
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; c++) {
                out(r, c) += f * b(k, c);
            }
        }
    }
    return out;
}

ComplexVector operator*(const ComplexMatrix &a, const ComplexVector &v) {
    if (a.cols_ != v.dim()) {
        throw DimensionError("matrix-vector product of mismatched shapes");
    }
    ComplexVector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; r++) {
        Complex s = 0;
        for (std::size_t c = 0; c < a.cols_; c++) {
            s += a(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

Complex inner(const ComplexVector &u, const ComplexVector &v) {
    if (u.dim() != v.dim()) {
        throw DimensionError("inner product of mismatched dimensions");
    }
    Complex s = 0;
    for (std::size_t i = 0; i < u.dim(); i++) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

double fidelity(const ComplexVector &u, const ComplexVector &v) {
    return std::norm(inner(u, v));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); i++) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

ComplexMatrix pauli(PauliAxis axis) {
    using namespace std::complex_literals;
    switch (axis) {
        case PauliAxis::I:
            return ComplexMatrix::identity(2);
        case PauliAxis::X:
            return {{0.0, 1.0}, {1.0, 0.0}};
        case PauliAxis::Y:
            return {{0.0, -1i}, {1i, 0.0}};
        case PauliAxis::Z:
            return {{1.0, 0.0}, {0.0, -1.0}};
    }
    throw std::logic_error("unknown Pauli axis");
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            Complex f = a(ar, ac);
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexVector tensor(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < b.dim(); j++) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
    if (factors.size() == 0) {
        throw DimensionError("tensor product of zero factors");
    }
    auto it = factors.begin();
    ComplexMatrix out = *it++;
    for (; it != factors.end(); ++it) {
        out = tensor(out, *it);
    }
    return out;
}

ComplexMatrix pauli_string(const std::string &axes) {
    if (axes.empty()) {
        throw DimensionError("empty Pauli string");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (char ch : axes) {
        PauliAxis axis;
        switch (ch) {
            case 'i':
            case 'I':
                axis = PauliAxis::I;
                break;
            case 'x':
            case 'X':
                axis = PauliAxis::X;
                break;
            case 'y':
            case 'Y':
                axis = PauliAxis::Y;
                break;
            case 'z':
            case 'Z':
                axis = PauliAxis::Z;
                break;
            default:
                throw DomainError(std::string("unknown Pauli label '") + ch + "'");
        }
        out = tensor(out, pauli(axis));
    }
    return out;
}

namespace {

struct SubsystemLayout {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> strides;
    std::size_t total = 1;
};

SubsystemLayout make_layout(const ComplexMatrix &rho, std::span<const std::size_t> dims) {
    if (!rho.is_square()) {
        throw DimensionError("subsystem operation on a non-square matrix");
    }
    if (dims.empty()) {
        throw DimensionError("empty subsystem dimension list");
    }
    SubsystemLayout layout;
    layout.dims.assign(dims.begin(), dims.end());
    layout.strides.resize(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
        if (dims[s] == 0) {
            throw DimensionError("subsystem of dimension 0");
        }
        layout.strides[s] = layout.total;
        layout.total *= dims[s];
    }
    if (layout.total != rho.rows()) {
        throw DimensionError("subsystem dims multiply to " + std::to_string(layout.total) + " but matrix has dimension " +
                             std::to_string(rho.rows()));
    }
    return layout;
}

// Flat offsets of every multi-index over the given subsystems.
std::vector<std::size_t> offsets_over(const SubsystemLayout &layout, const std::vector<std::size_t> &subsystems) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t s : subsystems) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * layout.dims[s]);
        for (std::size_t base : offsets) {
            for (std::size_t d = 0; d < layout.dims[s]; d++) {
                next.push_back(base + d * layout.strides[s]);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    auto layout = make_layout(rho, dims);
    if (keep.empty()) {
        throw DimensionError("partial trace must keep at least one subsystem");
    }
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw DimensionError("duplicate subsystem in keep set");
    }
    if (kept.back() >= dims.size()) {
        throw DimensionError("keep index out of range");
    }
    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < dims.size(); s++) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) {
            traced.push_back(s);
        }
    }
    auto keep_off = offsets_over(layout, kept);
    auto trace_off = offsets_over(layout, traced);
    ComplexMatrix out(keep_off.size(), keep_off.size());
    for (std::size_t r = 0; r < keep_off.size(); r++) {
        for (std::size_t c = 0; c < keep_off.size(); c++) {
            Complex s = 0;
            for (std::size_t t : trace_off) {
                s += rho(keep_off[r] + t, keep_off[c] + t);
            }
            out(r, c) = s;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::span<const std::size_t> dims, std::size_t subsystem) {
    auto layout = make_layout(rho, dims);
    if (subsystem >= dims.size()) {
        throw DimensionError("partial transpose subsystem out of range");
    }
    const std::size_t stride = layout.strides[subsystem];
    const std::size_t d = layout.dims[subsystem];
    ComplexMatrix out(rho.rows(), rho.cols());
    for (std::size_t r = 0; r < rho.rows(); r++) {
        const std::size_t dr = (r / stride) % d;
        for (std::size_t c = 0; c < rho.cols(); c++) {
            const std::size_t dc = (c / stride) % d;
            const std::size_t src_r = r - dr * stride + dc * stride;
            const std::size_t src_c = c - dc * stride + dr * stride;
            out(r, c) = rho(src_r, src_c);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix &rho, std::initializer_list<std::size_t> dims,
                                std::size_t subsystem) {
    return partial_transpose(rho, std::span<const std::size_t>(dims.begin(), dims.size()), subsystem);
}

namespace {

// Implicit-shift QL on a real symmetric tridiagonal matrix. `diag` receives
// the eigenvalues; column j of `z` (row-major n x n) the j-th eigenvector.
void tridiagonal_ql(std::vector<double> &diag, std::vector<double> &off, std::vector<double> &z) {
    const int n = static_cast<int>(diag.size());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    off.resize(n);
    off[n - 1] = 0;
    for (int l = 0; l < n; l++) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; m++) {
                double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 100) {
                    throw DomainError("tridiagonal QL failed to converge");
                }
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i;
                for (i = m - 1; i >= l; i--) {
                    double f = s * off[i];
                    double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; k++) {
                        double zf = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * zf;
                        z[k * n + i] = c * z[k * n + i] - s * zf;
                    }
                }
                if (r == 0.0 && i >= l) {
                    continue;
                }
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
}

void fix_phase(ComplexVector &v) {
    double m = 0;
    for (const auto &c : v.entries()) {
        m = std::max(m, std::abs(c));
    }
    if (m == 0) {
        return;
    }
    for (const auto &c : v.entries()) {
        if (std::abs(c) >= m * (1 - 1e-9)) {
            v *= std::conj(c) / std::abs(c);
            return;
        }
    }
}

}  // namespace

EigenResult hermitian_eig(const ComplexMatrix &h, const Tolerances &tol) {
    if (!h.is_square() || h.rows() == 0) {
        throw DimensionError("hermitian_eig needs a non-empty square matrix");
    }
    const double scale = std::max(1.0, h.max_abs());
    if (h.hermiticity_error() > tol.eig_input_hermitian * scale) {
        throw DomainError("hermitian_eig input is not Hermitian within tolerance");
    }
    const std::size_t n = h.rows();

    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; r++) {
        a(r, r) = h(r, r).real();
        for (std::size_t c = r + 1; c < n; c++) {
            Complex v = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(r, c) = v;
            a(c, r) = std::conj(v);
        }
    }
    ComplexMatrix q = ComplexMatrix::identity(n);

    // Householder reduction: a <- H a H column by column.
    std::vector<Complex> v(n), p(n), w(n), qv(n);
    for (std::size_t k = 0; k + 2 < n; k++) {
        double alpha2 = 0;
        for (std::size_t i = k + 1; i < n; i++) {
            alpha2 += std::norm(a(i, k));
        }
        double below = alpha2 - std::norm(a(k + 1, k));
        if (below <= std::numeric_limits<double>::min()) {
            continue;
        }
        double alpha = std::sqrt(alpha2);
        Complex x0 = a(k + 1, k);
        Complex phase = std::abs(x0) == 0 ? Complex{1.0} : x0 / std::abs(x0);
        std::fill(v.begin(), v.end(), Complex{});
        v[k + 1] = x0 + phase * alpha;
        for (std::size_t i = k + 2; i < n; i++) {
            v[i] = a(i, k);
        }
        double vv = 0;
        for (std::size_t i = k + 1; i < n; i++) {
            vv += std::norm(v[i]);
        }
        double tau = 2.0 / vv;

        Complex vp = 0;
        for (std::size_t r = 0; r < n; r++) {
            Complex s = 0;
            for (std::size_t c = k + 1; c < n; c++) {
                s += a(r, c) * v[c];
            }
            p[r] = tau * s;
            vp += std::conj(v[r]) * p[r];
        }
        double kk = 0.5 * tau * vp.real();
        for (std::size_t r = 0; r < n; r++) {
            w[r] = p[r] - kk * v[r];
        }
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t c = 0; c < n; c++) {
                a(r, c) -= v[r] * std::conj(w[c]) + w[r] * std::conj(v[c]);
            }
        }
        for (std::size_t r = 0; r < n; r++) {
            Complex s = 0;
            for (std::size_t c = k + 1; c < n; c++) {
                s += q(r, c) * v[c];
            }
            qv[r] = tau * s;
        }
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t c = k + 1; c < n; c++) {
                q(r, c) -= qv[r] * std::conj(v[c]);
            }
        }
    }

    // Diagonal unitary making the subdiagonal real and non-negative.
    std::vector<double> diag(n), off(n, 0.0);
    std::vector<Complex> phase(n, Complex{1.0});
    for (std::size_t i = 0; i < n; i++) {
        diag[i] = a(i, i).real();
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        Complex e = a(i + 1, i);
        double mag = std::abs(e);
        off[i] = mag;
        phase[i + 1] = mag == 0 ? phase[i] : phase[i] * (e / mag);
    }

    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(diag, off, z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    // Rotated basis columns q * phase.
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            q(r, c) *= phase[c];
        }
    }

    EigenResult result;
    result.eigenvalues.reserve(n);
    result.eigenvectors.reserve(n);
    for (std::size_t j : order) {
        result.eigenvalues.push_back(diag[j]);
        ComplexVector vec(n);
        for (std::size_t r = 0; r < n; r++) {
            Complex s = 0;
            for (std::size_t i = 0; i < n; i++) {
                s += q(r, i) * z[i * n + j];
            }
            vec[r] = s;
        }
        vec = vec.normalized();
        fix_phase(vec);
        result.eigenvectors.push_back(std::move(vec));
    }
    result.degenerate.assign(n, false);
    for (std::size_t i = 0; i + 1 < n; i++) {
        if (result.eigenvalues[i + 1] - result.eigenvalues[i] < tol.degeneracy_gap) {
            result.degenerate[i] = true;
            result.degenerate[i + 1] = true;
        }
    }
    return result;
}

std::pair<double, ComplexVector> min_eigenpair(const ComplexMatrix &h, const Tolerances &tol) {
    auto eig = hermitian_eig(h, tol);
    return {eig.eigenvalues.front(), std::move(eig.eigenvectors.front())};
}

void validate_density_matrix(const ComplexMatrix &rho, const Tolerances &tol) {
    if (!rho.is_square() || rho.rows() == 0) {
        throw DimensionError("density matrix must be square and non-empty");
    }
    if (!rho.is_hermitian(tol.hermitian)) {
        throw DomainError("density matrix is not Hermitian");
    }
    Complex t = rho.trace();
    if (std::abs(t - 1.0) > tol.trace) {
        throw DomainError("density matrix trace is " + std::to_string(t.real()) + ", expected 1");
    }
    auto eig = hermitian_eig(rho, tol);
    if (eig.eigenvalues.front() < -tol.psd) {
        throw DomainError("density matrix has negative eigenvalue " + std::to_string(eig.eigenvalues.front()));
    }
}

void validate_state(const ComplexVector &psi, const Tolerances &tol) {
    if (psi.dim() == 0) {
        throw DimensionError("empty state vector");
    }
    if (std::abs(psi.norm() - 1.0) > tol.normalization) {
        throw DomainError("state vector is not normalized (norm " + std::to_string(psi.norm()) + ")");
    }
}

}  // namespace isingbell
