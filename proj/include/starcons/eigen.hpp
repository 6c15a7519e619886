#pragma once

// Symmetric eigensolvers: cyclic Jacobi rotations for dense matrices and
// implicit-shift QL for symmetric tridiagonal ones. Both are deterministic:
// the same input bits give the same output bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "starcons/error.hpp"
#include "starcons/matrix.hpp"

namespace starcons {

/// Eigenvalues sorted decreasingly, lambda_1 >= ... >= lambda_N.
struct Spectrum {
    std::vector<double> eigenvalues;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    double largest() const { return eigenvalues.front(); }
    double smallest() const { return eigenvalues.back(); }
    /// 1-based access matching lambda_i.
    double lambda(std::size_t i) const { return eigenvalues.at(i - 1); }
};

/// Eigenpairs, values decreasing; column j of `vectors` belongs to values[j].
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;

    std::vector<double> vector(std::size_t j) const {
        std::vector<double> v(vectors.order());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, j);
        return v;
    }
};

namespace detail {

inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr int kMaxQlIterations = 60;

inline double off_diagonal_squares(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.order(); ++p)
        for (std::size_t q = p + 1; q < a.order(); ++q) s += a(p, q) * a(p, q);
    return s;
}

// Cyclic-by-row Jacobi. On return `a` is (numerically) diagonal and, if
// `v` is non-null, A_in = V diag(a) V^T.
inline void jacobi_diagonalize(Matrix& a, Matrix* v) {
    const std::size_t n = a.order();
    const double scale = a.frobenius_norm();
    if (scale == 0.0) return;
    const double stop = std::numeric_limits<double>::epsilon() * scale;

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (std::sqrt(off_diagonal_squares(a)) <= stop * 1e-3) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                if (v != nullptr) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = (*v)(k, p);
                        const double vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp - s * vkq;
                        (*v)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if (std::sqrt(off_diagonal_squares(a)) > 1e-10 * scale)
        throw NumericalError("Jacobi eigensolver did not converge");
}

} // namespace detail

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal (off.size() == diag.size() - 1), implicit-shift QL.
inline std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                                   std::span<const double> off) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (off.size() + 1 != n) throw ParameterError("tridiagonal: off-diagonal length must be n - 1");

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(off.begin(), off.end(), e.begin());

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == detail::kMaxQlIterations)
                    throw NumericalError("tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t ii = m; ii-- > l;) {
                    double f = s * e[ii];
                    const double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

/// Full eigendecomposition of a symmetric matrix (Jacobi), values decreasing.
inline EigenDecomposition eigen_decompose(const Matrix& matrix) {
    if (!matrix.is_symmetric(1e-12)) throw MatrixError("eigensolver: matrix is not symmetric");
    const std::size_t n = matrix.order();
    Matrix a = matrix;
    Matrix v = Matrix::identity(n);
    detail::jacobi_diagonalize(a, &v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out{std::vector<double>(n), Matrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

/// All eigenvalues of a symmetric matrix, sorted decreasingly. Tridiagonal
/// input takes the QL path, anything else cyclic Jacobi.
inline Spectrum eig_symmetric(const Matrix& matrix) {
    if (!matrix.is_symmetric(1e-12)) throw MatrixError("eigensolver: matrix is not symmetric");
    const std::size_t n = matrix.order();
    if (n == 0) return {};

    if (matrix.is_tridiagonal()) {
        std::vector<double> diag(n), off(n - 1);
        for (std::size_t i = 0; i < n; ++i) diag[i] = matrix(i, i);
        for (std::size_t i = 0; i + 1 < n; ++i) off[i] = matrix(i, i + 1);
        return {tridiagonal_eigenvalues(diag, off)};
    }

    Matrix a = matrix;
    detail::jacobi_diagonalize(a, nullptr);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    std::sort(values.begin(), values.end(), std::greater<>());
    return {std::move(values)};
}

} // namespace starcons
