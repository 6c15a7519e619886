#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starcons/characteristic.hpp"
#include "starcons/eigen.hpp"
#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/topology.hpp"

namespace starcons {

enum class Scheme { Optimal, Metropolis, MaxDegree, BestConstant };

inline constexpr Scheme kAllSchemes[] = {Scheme::Metropolis, Scheme::MaxDegree, Scheme::BestConstant,
                                         Scheme::Optimal};

inline std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Optimal: return "optimal";
        case Scheme::Metropolis: return "metropolis";
        case Scheme::MaxDegree: return "max-degree";
        case Scheme::BestConstant: return "best-constant";
    }
    return "?";
}

inline Scheme parse_scheme(const std::string& s) {
    for (Scheme x : kAllSchemes)
        if (scheme_name(x) == s) return x;
    throw ParameterError("unknown weighting scheme '" + s + "'");
}

/// Edge weights, either one per stratum (star families) or one per edge.
struct WeightAssignment {
    std::map<int, double> per_stratum;
    std::vector<double> per_edge;
    /// KCS with k > k_max: the returned weights are the closed form but
    /// optimality is not guaranteed.
    bool beyond_k_max = false;

    bool is_per_edge() const noexcept { return !per_edge.empty(); }

    /// Weight of edge `index` of `g`; throws IncompleteAssignmentError.
    double weight(const Graph& g, std::size_t index) const {
        if (is_per_edge()) {
            if (per_edge.size() != g.edge_count())
                throw IncompleteAssignmentError("per-edge weights do not match the edge count");
            return per_edge[index];
        }
        if (!g.has_strata())
            throw IncompleteAssignmentError("per-stratum weights need a stratum-labelled graph");
        const int s = g.strata()[index];
        const auto it = per_stratum.find(s);
        if (it == per_stratum.end())
            throw IncompleteAssignmentError("no weight for stratum " + std::to_string(s));
        return it->second;
    }

    bool operator==(const WeightAssignment&) const = default;
};

/// Closed-form optimal weights of the three star families.
inline WeightAssignment optimal_weights(const Topology& topology) {
    check_parameters(topology);
    WeightAssignment a;
    if (const auto* s = std::get_if<SymmetricStar>(&topology)) {
        a.per_stratum[1] = 2.0 / (s->n + 2.0);
        for (int j = 2; j <= s->m; ++j) a.per_stratum[j] = 0.5;
    } else if (const auto* c = std::get_if<CcsStar>(&topology)) {
        a.per_stratum[0] = 1.0 / c->n;
        for (int j = 1; j <= c->m; ++j) a.per_stratum[j] = 0.5;
    } else if (const auto* k = std::get_if<KcsStar>(&topology)) {
        a.per_stratum[1] = 2.0 / (k->n + 2.0 * k->k);
        for (int j = 2; j <= k->m; ++j) a.per_stratum[j] = 0.5;
        a.beyond_k_max = k->k > 1 && k->k > k_max(k->m, k->n);
    } else {
        throw UnsupportedError("optimal weights are only known for star families");
    }
    return a;
}

/// Off-diagonals from the edge weights, diagonal 1 - sum of incident weights.
inline Matrix assemble_matrix(const Graph& g, const WeightAssignment& assignment) {
    Matrix w = Matrix::identity(g.node_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        const double x = assignment.weight(g, i);
        w(e.u, e.v) += x;
        w(e.v, e.u) += x;
        w(e.u, e.u) -= x;
        w(e.v, e.v) -= x;
    }
    return w;
}

namespace detail {

inline void require_connected(const Graph& g, const char* what) {
    if (!g.is_connected()) throw ParameterError(std::string(what) + " requires a connected graph");
}

inline Matrix from_edge_weights(const Graph& g, const std::vector<double>& w) {
    WeightAssignment a;
    a.per_edge = w;
    if (w.empty()) return Matrix::identity(g.node_count());
    return assemble_matrix(g, a);
}

} // namespace detail

inline Matrix metropolis_weights(const Graph& g) {
    detail::require_connected(g, "Metropolis weights");
    const auto d = g.degrees();
    std::vector<double> w;
    w.reserve(g.edge_count());
    for (const Edge& e : g.edges()) w.push_back(1.0 / (1.0 + static_cast<double>(std::max(d[e.u], d[e.v]))));
    return detail::from_edge_weights(g, w);
}

inline Matrix max_degree_weights(const Graph& g) {
    detail::require_connected(g, "max-degree weights");
    const auto d = g.degrees();
    const double dmax = static_cast<double>(*std::max_element(d.begin(), d.end()));
    return detail::from_edge_weights(g, std::vector<double>(g.edge_count(), dmax > 0 ? 1.0 / dmax : 0.0));
}

/// Graph Laplacian D - A.
inline Matrix laplacian(const Graph& g) {
    Matrix l(g.node_count());
    for (const Edge& e : g.edges()) {
        l(e.u, e.v) -= 1.0;
        l(e.v, e.u) -= 1.0;
        l(e.u, e.u) += 1.0;
        l(e.v, e.v) += 1.0;
    }
    return l;
}

/// alpha* = 2 / (lambda_1(L) + lambda_{N-1}(L)), eigenvalues decreasing.
inline double best_constant_alpha(const Graph& g) {
    detail::require_connected(g, "best-constant weights");
    if (g.node_count() < 2) throw ParameterError("best-constant weights need at least two nodes");
    const Spectrum s = eig_symmetric(laplacian(g));
    return 2.0 / (s.largest() + s.eigenvalues[s.size() - 2]);
}

inline Matrix best_constant_weights(const Graph& g) {
    const double alpha = best_constant_alpha(g);
    return detail::from_edge_weights(g, std::vector<double>(g.edge_count(), alpha));
}

/// Weight matrix of `topology` under `scheme`.
inline Matrix weight_matrix(const Topology& topology, Scheme scheme) {
    const Graph g = build(topology);
    switch (scheme) {
        case Scheme::Optimal: return assemble_matrix(g, optimal_weights(topology));
        case Scheme::Metropolis: return metropolis_weights(g);
        case Scheme::MaxDegree: return max_degree_weights(g);
        case Scheme::BestConstant: return best_constant_weights(g);
    }
    throw UnsupportedError("unknown scheme");
}

/// Reads edge weights back out of a matrix, one per stratum. Throws
/// UnsupportedError if a stratum carries unequal weights (beyond `tol`).
inline WeightAssignment assignment_from_matrix(const Graph& g, const Matrix& w, double tol = 1e-12) {
    WeightAssignment a;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        const int s = g.strata()[i];
        const double x = w(e.u, e.v);
        const auto [it, inserted] = a.per_stratum.emplace(s, x);
        if (!inserted && std::abs(it->second - x) > tol)
            throw UnsupportedError("weights are not constant on stratum " + std::to_string(s));
    }
    return a;
}

/// Violations of the weight-matrix invariants, all zero for a valid matrix.
struct WeightMatrixDefects {
    double asymmetry = 0.0;
    double row_sum = 0.0;       ///< max |row sum - 1|
    double off_pattern = 0.0;   ///< max |W_ij| over non-edges i != j
    double min_diagonal = 0.0;  ///< smallest diagonal entry
};

inline WeightMatrixDefects weight_matrix_defects(const Graph& g, const Matrix& w) {
    WeightMatrixDefects d;
    d.asymmetry = w.asymmetry();
    d.row_sum = w.stochasticity_defect();
    std::vector<std::vector<bool>> adj(g.node_count(), std::vector<bool>(g.node_count(), false));
    for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
    d.min_diagonal = w.order() ? w(0, 0) : 0.0;
    for (std::size_t i = 0; i < w.order(); ++i) {
        d.min_diagonal = std::min(d.min_diagonal, w(i, i));
        for (std::size_t j = 0; j < w.order(); ++j)
            if (i != j && !adj[i][j]) d.off_pattern = std::max(d.off_pattern, std::abs(w(i, j)));
    }
    return d;
}

} // namespace starcons
