#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "starcons/error.hpp"

namespace starcons {

/// Dense square matrix of doubles, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t order, double fill = 0.0)
        : order_(order), data_(order * order, fill) {}

    static Matrix identity(std::size_t order) {
        Matrix m(order);
        for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t order() const noexcept { return order_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * order_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * order_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * order_, order_};
    }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

    /// Largest |a_ij - a_ji|.
    double asymmetry() const noexcept {
        double worst = 0.0;
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = i + 1; j < order_; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
        return worst;
    }

    bool is_symmetric(double tol) const noexcept { return asymmetry() <= tol; }

    /// Largest |row sum - 1|.
    double stochasticity_defect() const noexcept {
        double worst = 0.0;
        for (std::size_t i = 0; i < order_; ++i) {
            double s = 0.0;
            for (double v : row(i)) s += v;
            worst = std::max(worst, std::abs(s - 1.0));
        }
        return worst;
    }

    /// True when every off-diagonal entry has |a_ij| <= tol for j != i +- 1.
    bool is_tridiagonal(double tol = 0.0) const noexcept {
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; j < order_; ++j) {
                const std::size_t d = i > j ? i - j : j - i;
                if (d > 1 && std::abs((*this)(i, j)) > tol) return false;
            }
        return true;
    }

    double trace() const noexcept {
        double t = 0.0;
        for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != order_) throw ParameterError("matrix-vector product: dimension mismatch");
        std::vector<double> y(order_, 0.0);
        for (std::size_t i = 0; i < order_; ++i) {
            double s = 0.0;
            const double* r = data_.data() + i * order_;
            for (std::size_t j = 0; j < order_; ++j) s += r[j] * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    std::size_t order_ = 0;
    std::vector<double> data_;
};

} // namespace starcons
