#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "starcons/characteristic.hpp"
#include "starcons/eigen.hpp"
#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/topology.hpp"
#include "starcons/weights.hpp"

namespace starcons {

/// Row-sum tolerance for the stochasticity precondition of slem().
inline constexpr double kStochasticTolerance = 1e-9;

/// Second largest eigenvalue modulus max(lambda_2, -lambda_N).
inline double slem(const Spectrum& s) {
    if (s.size() < 2) throw ParameterError("SLEM needs a matrix of order >= 2");
    return std::max(s.lambda(2), -s.smallest());
}

inline double slem(const Matrix& w) {
    if (w.order() < 2) throw ParameterError("SLEM needs a matrix of order >= 2");
    if (w.stochasticity_defect() > kStochasticTolerance)
        throw MatrixError("SLEM: rows of the weight matrix do not sum to 1");
    return slem(eig_symmetric(w));
}

/// Closed-form SLEM of an optimally weighted star family.
inline double slem_closed_form(const Topology& topology) {
    check_parameters(topology);
    if (const auto* s = std::get_if<SymmetricStar>(&topology)) return std::cos(theta_root_symmetric(s->m, s->n));
    if (const auto* c = std::get_if<CcsStar>(&topology)) return ccs_slem(c->m);
    if (const auto* k = std::get_if<KcsStar>(&topology)) return std::cos(kcs_root(k->m, k->n, k->k));
    throw UnsupportedError("no closed form SLEM for custom graphs");
}

/// Block-diagonal form of a symmetric star weight matrix in the DFT basis of
/// the branch index: one block W0 of order m+1 and n-1 copies of W1 (order m).
struct StratifiedBlocks {
    Matrix w0_block;
    Matrix w1_block;
    std::size_t w1_multiplicity = 0;

    /// Spectrum of W0 followed by (n-1) copies of that of W1, decreasing.
    Spectrum combined_spectrum() const {
        std::vector<double> all = eig_symmetric(w0_block).eigenvalues;
        const std::vector<double> w1 = eig_symmetric(w1_block).eigenvalues;
        for (std::size_t c = 0; c < w1_multiplicity; ++c) all.insert(all.end(), w1.begin(), w1.end());
        std::sort(all.begin(), all.end(), std::greater<>());
        return {std::move(all)};
    }
};

inline StratifiedBlocks stratify(const Topology& topology, const WeightAssignment& assignment) {
    const auto* star = std::get_if<SymmetricStar>(&topology);
    if (star == nullptr) throw UnsupportedError("stratification is implemented for symmetric stars only");
    check_parameters(topology);
    const int m = star->m;
    const int n = star->n;

    const Graph g = build(topology);
    // w[1..m] from the first branch (edges 0..m-1 carry strata 1..m in order);
    // w[m+1] = 0 closes the recursion. Every other branch must agree.
    std::vector<double> w(m + 2, 0.0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) w[g.strata()[i]] = assignment.weight(g, i);
    for (std::size_t i = m; i < g.edge_count(); ++i) {
        const int s = g.strata()[i];
        if (std::abs(w[s] - assignment.weight(g, i)) > 1e-12)
            throw UnsupportedError("stratify: weights are not constant on stratum " + std::to_string(s));
    }

    StratifiedBlocks b{Matrix(m + 1), Matrix(m), static_cast<std::size_t>(n - 1)};
    const double rn = std::sqrt(static_cast<double>(n));
    b.w0_block(0, 0) = 1.0 - n * w[1];
    b.w0_block(0, 1) = b.w0_block(1, 0) = rn * w[1];
    for (int j = 1; j <= m; ++j) {
        b.w0_block(j, j) = 1.0 - w[j] - w[j + 1];
        if (j < m) b.w0_block(j, j + 1) = b.w0_block(j + 1, j) = w[j + 1];
    }
    for (int j = 0; j < m; ++j) {
        b.w1_block(j, j) = b.w0_block(j + 1, j + 1);
        if (j + 1 < m) b.w1_block(j, j + 1) = b.w1_block(j + 1, j) = w[j + 2];
    }
    return b;
}

/// Largest elementwise gap between the sorted spectrum of W and the sorted
/// union spec(W0) + (n-1) x spec(W1).
inline double spectrum_union_defect(const Spectrum& full, const StratifiedBlocks& blocks) {
    const Spectrum u = blocks.combined_spectrum();
    if (u.size() != full.size()) throw ParameterError("spectrum sizes differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        worst = std::max(worst, std::abs(u.eigenvalues[i] - full.eigenvalues[i]));
    return worst;
}

struct InterlacingReport {
    bool holds = true;               ///< all Cauchy inequalities within tolerance
    double worst_violation = 0.0;    ///< max amount by which an inequality fails (0 if none)
    /// Present when the full spectrum was supplied and W1 occurs in W (n >= 2).
    std::optional<double> second_largest_gap;  ///< |lambda_2(W) - lambda_1(W1)|
    std::optional<double> smallest_gap;        ///< |lambda_min(W) - lambda_min(W0)|
};

/// Checks lambda_j(W0) <= lambda_j(W1) <= lambda_{j+1}(W0) with both spectra in
/// ascending order, and optionally that lambda_2(W) = lambda_1(W1) and
/// lambda_min(W) = lambda_min(W0) for the full matrix.
inline InterlacingReport interlacing_check(const StratifiedBlocks& blocks,
                                           const std::optional<Spectrum>& full = std::nullopt,
                                           double tol = 1e-10) {
    std::vector<double> a = eig_symmetric(blocks.w0_block).eigenvalues;
    std::vector<double> b = eig_symmetric(blocks.w1_block).eigenvalues;
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());

    InterlacingReport r;
    for (std::size_t j = 0; j < b.size(); ++j) {
        r.worst_violation = std::max({r.worst_violation, a[j] - b[j], b[j] - a[j + 1]});
    }
    r.worst_violation = std::max(r.worst_violation, 0.0);
    r.holds = r.worst_violation <= tol;

    if (full && blocks.w1_multiplicity > 0 && !b.empty()) {
        r.second_largest_gap = std::abs(full->lambda(2) - b.back());
        r.smallest_gap = std::abs(full->smallest() - a.front());
        r.holds = r.holds && *r.second_largest_gap <= tol && *r.smallest_gap <= tol;
    }
    return r;
}

} // namespace starcons
