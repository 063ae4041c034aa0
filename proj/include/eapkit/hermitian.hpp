#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "eapkit/errors.hpp"

namespace eapkit {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major. Internal spaces here are tiny
/// (two-level clocks, occasionally a handful of levels), so no effort is
/// spent on large-n performance.
struct CMatrix {
    std::size_t n = 0;
    std::vector<cdouble> a;

    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : n(dim), a(dim * dim, cdouble{0.0, 0.0}) {}

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static CMatrix diagonal(const std::vector<double>& d) {
        CMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    cdouble& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    CMatrix operator+(const CMatrix& o) const {
        CMatrix r = *this;
        for (std::size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
        return r;
    }
    CMatrix operator-(const CMatrix& o) const {
        CMatrix r = *this;
        for (std::size_t k = 0; k < a.size(); ++k) r.a[k] -= o.a[k];
        return r;
    }
    CMatrix operator*(double k) const {
        CMatrix r = *this;
        for (auto& v : r.a) v *= k;
        return r;
    }
    CMatrix operator*(const CMatrix& o) const {
        CMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble aik = (*this)(i, k);
                if (aik == cdouble{}) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    CMatrix adjoint() const {
        CMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a) m = std::max(m, std::abs(v));
        return m;
    }
};

inline double max_abs_diff(const CMatrix& x, const CMatrix& y) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.a.size(); ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
    return m;
}

/// Hermiticity within a relative tolerance of the largest entry.
inline bool is_hermitian(const CMatrix& m, double tol_rel = 1e-12) {
    const double scale = m.max_abs();
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i; j < m.n; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol_rel * scale) return false;
    return true;
}

/// Kronecker product, row-major blocks: (i1*n2+i2, j1*n2+j2) = A(i1,j1)*B(i2,j2).
inline CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix r(A.n * B.n);
    for (std::size_t i1 = 0; i1 < A.n; ++i1)
        for (std::size_t j1 = 0; j1 < A.n; ++j1) {
            const cdouble v = A(i1, j1);
            if (v == cdouble{}) continue;
            for (std::size_t i2 = 0; i2 < B.n; ++i2)
                for (std::size_t j2 = 0; j2 < B.n; ++j2)
                    r(i1 * B.n + i2, j1 * B.n + j2) = v * B(i2, j2);
        }
    return r;
}

struct EigenResult {
    std::vector<double> eigenvalues; // ascending
    CMatrix vectors;                 // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi diagonalization for Hermitian matrices. Each rotation
/// factors the target entry's phase out first, then applies the classical
/// real rotation; unitary accumulation gives the eigenvectors. Quadratic
/// convergence once the off-diagonal mass is small; matrices here are tiny,
/// so the sweep budget is generous.
inline EigenResult eigh(const CMatrix& m, double tol_rel = 1e-12) {
    if (m.n == 0) throw DomainError("eigh of empty matrix");
    if (!is_hermitian(m, tol_rel)) throw DomainError("eigh requires a Hermitian matrix");

    const std::size_t n = m.n;
    CMatrix A = m;
    // Symmetrize exactly so rotations preserve Hermiticity bit-for-bit.
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = cdouble{A(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble avg = 0.5 * (A(i, j) + std::conj(A(j, i)));
            A(i, j) = avg;
            A(j, i) = std::conj(avg);
        }
    }
    CMatrix V = CMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(A(i, j));
        return std::sqrt(s);
    };

    const double scale = std::max(A.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * scale * n; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = std::abs(A(p, q));
                if (alpha <= 1e-300) continue;
                const cdouble phase = A(p, q) / alpha; // e^{i phi}
                const double tau = (A(q, q).real() - A(p, p).real()) / (2.0 * alpha);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U is identity outside the (p,q) block:
                //   [ c            s          ]
                //   [ -s*conj(ph)  c*conj(ph) ]
                const cdouble upp = c, upq = s;
                const cdouble uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

                for (std::size_t i = 0; i < n; ++i) { // A <- A * U, V <- V * U
                    const cdouble aip = A(i, p), aiq = A(i, q);
                    A(i, p) = aip * upp + aiq * uqp;
                    A(i, q) = aip * upq + aiq * uqq;
                    const cdouble vip = V(i, p), viq = V(i, q);
                    V(i, p) = vip * upp + viq * uqp;
                    V(i, q) = vip * upq + viq * uqq;
                }
                for (std::size_t j = 0; j < n; ++j) { // A <- U† * A
                    const cdouble apj = A(p, j), aqj = A(q, j);
                    A(p, j) = std::conj(upp) * apj + std::conj(uqp) * aqj;
                    A(q, j) = std::conj(upq) * apj + std::conj(uqq) * aqj;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return A(i, i).real() < A(j, j).real(); });

    EigenResult res;
    res.eigenvalues.resize(n);
    res.vectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        res.eigenvalues[k] = A(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = V(i, order[k]);
    }
    return res;
}

} // namespace eapkit
