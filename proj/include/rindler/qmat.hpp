#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rindler/error.hpp"

namespace rindler {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for the 2, 4 and 8
/// dimensional operators of a qubit pair plus one auxiliary mode.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    }

    /// Row-wise literal; every row must have `rows.size()` entries.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : dim_(rows.size()), entries_(rows.size() * rows.size()) {
        std::size_t r = 0;
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw Error(ErrorCode::BadPartition, "matrix literal is not square");
            }
            std::copy(row.begin(), row.end(), entries_.begin() + r * dim_);
            ++r;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            m(k, k) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) {
            m(k, k) = values[k];
        }
        return m;
    }

    std::size_t dim() const noexcept {
        return dim_;
    }

    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix out(*this);
        for (auto &z : out.entries_) {
            z = std::conj(z);
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            t += (*this)(k, k);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : entries_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_dim(other);
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] += other.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_dim(other);
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] -= other.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scale) {
        for (auto &z : entries_) {
            z *= scale;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        a.require_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex(0.0)) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

   private:
    void require_same_dim(const ComplexMatrix &other) const {
        if (other.dim_ != dim_) {
            throw Error(ErrorCode::BadPartition,
                        "dimension mismatch " + std::to_string(dim_) + " vs " + std::to_string(other.dim_));
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a − b.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::BadPartition, "max_abs_diff on matrices of different dimension");
    }
    double worst = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

inline double hermiticity_residual(const ComplexMatrix &m) {
    return max_abs_diff(m, m.adjoint());
}

/// Pauli matrix by index: 0 → I, 1 → σ_x, 2 → σ_y, 3 → σ_z.
inline ComplexMatrix pauli(int index) {
    const Complex i{0.0, 1.0};
    switch (index) {
        case 0: return {{1.0, 0.0}, {0.0, 1.0}};
        case 1: return {{0.0, 1.0}, {1.0, 0.0}};
        case 2: return {{0.0, -i}, {i, 0.0}};
        case 3: return {{1.0, 0.0}, {0.0, -1.0}};
        default: throw Error(ErrorCode::BadPartition, "pauli index out of range: " + std::to_string(index));
    }
}

/// Kronecker product; `a` is the left (most significant) factor.
inline ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Traces out subsystem `traced_index` of a register whose factors have the
/// given dimensions (leftmost factor first).
inline ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> subsystem_dims,
                                   std::size_t traced_index) {
    if (subsystem_dims.empty() || traced_index >= subsystem_dims.size()) {
        throw Error(ErrorCode::BadPartition, "traced index out of range");
    }
    std::size_t total = 1;
    for (std::size_t d : subsystem_dims) {
        if (d == 0) {
            throw Error(ErrorCode::BadPartition, "zero subsystem dimension");
        }
        total *= d;
    }
    if (total != m.dim()) {
        throw Error(ErrorCode::BadPartition, "subsystem dimensions multiply to " + std::to_string(total) +
                                                 " but matrix has dimension " + std::to_string(m.dim()));
    }

    // Index split as (outer, traced, inner) in row-major order.
    const std::size_t traced = subsystem_dims[traced_index];
    std::size_t inner = 1;
    for (std::size_t k = traced_index + 1; k < subsystem_dims.size(); ++k) {
        inner *= subsystem_dims[k];
    }
    const std::size_t outer = total / (traced * inner);
    const std::size_t kept = outer * inner;

    ComplexMatrix out(kept);
    for (std::size_t o1 = 0; o1 < outer; ++o1) {
        for (std::size_t i1 = 0; i1 < inner; ++i1) {
            for (std::size_t o2 = 0; o2 < outer; ++o2) {
                for (std::size_t i2 = 0; i2 < inner; ++i2) {
                    Complex acc = 0.0;
                    for (std::size_t t = 0; t < traced; ++t) {
                        acc += m((o1 * traced + t) * inner + i1, (o2 * traced + t) * inner + i2);
                    }
                    out(o1 * inner + i1, o2 * inner + i2) = acc;
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix &m, std::initializer_list<std::size_t> subsystem_dims,
                                   std::size_t traced_index) {
    return partial_trace(m, std::span<const std::size_t>(subsystem_dims.begin(), subsystem_dims.size()),
                         traced_index);
}

/// Eigenvalues (descending) with matching eigenvectors stored as columns.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;
    int sweeps = 0;
};

namespace detail {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kJacobiThreshold = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

// Applies A ← U†AU and V ← VU for the unitary U that equals the identity
// except on the (p, q) block, where it combines a phase that makes a_pq real
// with a real Jacobi rotation that annihilates it.
inline void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const Complex phase = apq / mag;  // e^{iφ}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    const std::size_t n = a.dim();
    // Columns: A ← AU.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
    // Rows: A ← U†A.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix &m) {
    const double residual = hermiticity_residual(m);
    if (residual > detail::kHermitianTolerance) {
        throw Error(ErrorCode::NotHermitian, "|m - m^dagger| = " + std::to_string(residual));
    }
    const std::size_t n = m.dim();
    // Symmetrize so round-off in the input does not leak into the rotations.
    ComplexMatrix a = (m + m.adjoint()) * Complex(0.5);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = detail::kJacobiThreshold * std::max(1.0, a.frobenius_norm());

    int sweeps = 0;
    while (sweeps < detail::kJacobiMaxSweeps && detail::off_diagonal_norm(a) > threshold) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    EigenDecomposition out;
    out.values.reserve(n);
    out.vectors = ComplexMatrix(n);
    out.sweeps = sweeps;
    for (std::size_t col = 0; col < n; ++col) {
        out.values.push_back(a(order[col], order[col]).real());
        for (std::size_t row = 0; row < n; ++row) {
            out.vectors(row, col) = v(row, order[col]);
        }
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eigen(m).values;
}

/// Eigenvalues in [-kNegativeClamp, 0) are round-off and count as zero.
inline constexpr double kNegativeClamp = 1e-10;

/// Principal square root of a positive semidefinite Hermitian matrix.
inline ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    const EigenDecomposition eig = hermitian_eigen(m);
    const std::size_t n = m.dim();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (lambda < -kNegativeClamp) {
            throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lambda));
        }
        roots[k] = std::sqrt(std::max(0.0, lambda));
    }
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vectors(r, k) * roots[k] * std::conj(eig.vectors(c, k));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

}  // namespace rindler
