#pragma once

// Independent checks that the closed-form weights are optimal:
//  * complementary-slackness residuals of the symmetric-star SDP,
//  * a subgradient minimizer of the SLEM over edge weights,
//  * the KCS SLEM-versus-k curve,
//  * central-edge weights of stars whose branches are arbitrary graphs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starcons/characteristic.hpp"
#include "starcons/eigen.hpp"
#include "starcons/error.hpp"
#include "starcons/matrix.hpp"
#include "starcons/parallel.hpp"
#include "starcons/spectral.hpp"
#include "starcons/topology.hpp"
#include "starcons/weights.hpp"

namespace starcons {

// ---------------------------------------------------------------------------
// Complementary slackness
// ---------------------------------------------------------------------------

/// Residuals of the optimality conditions at the closed-form solution of a
/// symmetric star. Coordinates use a_m = b_m = scale.
struct SlacknessReport {
    int m = 0;
    int n = 0;
    double theta = 0.0;
    double s = 0.0;  ///< cos(theta), the SLEM
    std::vector<double> a_coords;
    std::vector<double> b_coords;
    /// Named maximum absolute violations, all >= 0:
    ///   dual_balance        (alpha_i^T z1)^2 = (beta_i^T z2)^2, dual scale applied to z2
    ///   coord_ratio         (a_i/a_j)^2 = (b_i/b_j)^2
    ///   a_first/interior/last   a-recursion at row 1, rows 2..m-1, row m
    ///   b_first/interior/last   b-recursion, same rows
    ///   matrix_w1   |(sI - W1) z1|_inf
    ///   matrix_w0   |(sI + W0) z2|_inf
    std::map<std::string, double> residuals;

    double worst() const {
        double w = 0.0;
        for (const auto& [_, v] : residuals) w = std::max(w, v);
        return w;
    }
};

namespace detail {

// Rank-one generators: W1 = I - sum w_i alpha_i alpha_i^T (order m),
// W0 = I - sum w_i beta_i beta_i^T (order m+1).
inline std::vector<std::vector<double>> alpha_vectors(int m) {
    std::vector<std::vector<double>> out(m, std::vector<double>(m, 0.0));
    out[0][0] = -1.0;
    for (int i = 1; i < m; ++i) {
        out[i][i - 1] = 1.0;
        out[i][i] = -1.0;
    }
    return out;
}

inline std::vector<std::vector<double>> beta_vectors(int m, int n) {
    std::vector<std::vector<double>> out(m, std::vector<double>(m + 1, 0.0));
    out[0][0] = std::sqrt(static_cast<double>(n));
    out[0][1] = -1.0;
    for (int i = 1; i < m; ++i) {
        out[i][i] = 1.0;
        out[i][i + 1] = -1.0;
    }
    return out;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline std::vector<double> combine(const std::vector<std::vector<double>>& basis, const std::vector<double>& c) {
    std::vector<double> z(basis.front().size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) z[j] += c[i] * basis[i][j];
    return z;
}

} // namespace detail

/// Evaluates every optimality condition at theta = smallest root of the
/// symmetric-star equation, weights w1 = 2/(n+2), w_i = 1/2, and Chebyshev
/// coordinates a_i = sin((m-i+1) theta)/sin(theta) (b_i likewise at pi - theta).
inline SlacknessReport slackness_residuals(int m, int n, double scale = 1.0) {
    if (m < 1 || n < 1) throw ParameterError("slackness_residuals requires m >= 1, n >= 1");
    SlacknessReport r;
    r.m = m;
    r.n = n;
    r.theta = theta_root_symmetric(m, n);
    r.s = std::cos(r.theta);
    const double sin_t = std::sin(r.theta);
    if (std::abs(sin_t) < 1e-12) throw NumericalError("slackness: degenerate theta (sin theta ~ 0)");
    const double s = r.s;
    const double phi = std::numbers::pi - r.theta;

    // 1-based helpers with a_{m+1} = b_{m+1} = 0.
    std::vector<double> a(m + 2, 0.0), b(m + 2, 0.0), w(m + 1, 0.5);
    w[1] = 2.0 / (n + 2.0);
    for (int i = 1; i <= m; ++i) {
        a[i] = scale * std::sin((m - i + 1) * r.theta) / sin_t;
        b[i] = scale * std::sin((m - i + 1) * phi) / std::sin(phi);
    }
    r.a_coords.assign(a.begin() + 1, a.begin() + m + 1);
    r.b_coords.assign(b.begin() + 1, b.begin() + m + 1);

    auto& res = r.residuals;
    for (const char* key : {"dual_balance", "coord_ratio", "a_first", "a_interior", "a_last", "b_first", "b_interior", "b_last", "matrix_w1",
                            "matrix_w0"})
        res[key] = 0.0;
    auto bump = [&](const char* key, double v) { res[key] = std::max(res[key], std::abs(v)); };

    // Row-by-row recursions. For m = 1 only the first-row equations exist.
    bump("a_first", (1.0 - s) * a[1] - w[1] * (a[1] - a[2]));
    bump("b_first", (1.0 + s) * b[1] - w[1] * ((n + 1.0) * b[1] - b[2]));
    for (int i = 2; i <= m - 1; ++i) {
        bump("a_interior", (1.0 - s) * a[i] - w[i] * (-a[i - 1] + 2.0 * a[i] - a[i + 1]));
        bump("b_interior", (1.0 + s) * b[i] - w[i] * (-b[i - 1] + 2.0 * b[i] - b[i + 1]));
    }
    if (m >= 2) {
        bump("a_last", (1.0 - s) * a[m] - w[m] * (-a[m - 1] + 2.0 * a[m]));
        bump("b_last", (1.0 + s) * b[m] - w[m] * (-b[m - 1] + 2.0 * b[m]));
    }

    // Ratio condition, every pair with a usable denominator.
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (std::abs(a[j]) > 1e-12 && std::abs(b[j]) > 1e-12)
                bump("coord_ratio", (a[i] / a[j]) * (a[i] / a[j]) - (b[i] / b[j]) * (b[i] / b[j]));

    // Matrix route: z1 = sum a_i alpha_i, z2 = sum b_i beta_i.
    const auto alpha = detail::alpha_vectors(m);
    const auto beta = detail::beta_vectors(m, n);
    const std::vector<double> z1 = detail::combine(alpha, r.a_coords);
    const std::vector<double> z2 = detail::combine(beta, r.b_coords);

    WeightAssignment opt;
    for (int i = 1; i <= m; ++i) opt.per_stratum[i] = w[i];
    const StratifiedBlocks blocks = stratify(SymmetricStar{m, n}, opt);
    const std::vector<double> w1z = blocks.w1_block.apply(z1);
    const std::vector<double> w0z = blocks.w0_block.apply(z2);
    for (int i = 0; i < m; ++i) bump("matrix_w1", s * z1[i] - w1z[i]);
    for (int i = 0; i <= m; ++i) bump("matrix_w0", s * z2[i] + w0z[i]);

    // The dual variable pairs z1 with (1 - s)/(1 + s) times z2.
    const double dual_scale = (1.0 - s) / (1.0 + s);
    for (int i = 0; i < m; ++i) {
        const double lhs = detail::dot(alpha[i], z1);
        const double rhs = dual_scale * detail::dot(beta[i], z2);
        bump("dual_balance", lhs * lhs - rhs * rhs);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Subgradient SLEM minimization
// ---------------------------------------------------------------------------

struct OptimizeConfig {
    double step_scale = 0.1;        ///< step length c / sqrt(t) along the normalized subgradient
    int max_iterations = 5000;
    double tie_tolerance = 1e-12;   ///< |lambda_2 + lambda_N| below this averages both subgradients
    int stall_window = 1000;        ///< converged: best improved < stall_tolerance over the final window
    double stall_tolerance = 1e-9;
};

struct OptimizeResult {
    WeightAssignment weights;                ///< per-edge; per-stratum too when classes were given
    std::map<int, double> class_weights;     ///< best weight of each symmetry class
    double slem = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;             ///< best-so-far SLEM after each iteration
};

/// SLEM of the weight matrix built from `edge_weights` and a subgradient with
/// respect to those weights. For a unit eigenvector u of W - 11^T/N,
/// d lambda / d w_ij = -(u_i - u_j)^2; the sign flips for the bottom
/// eigenvalue, and both are averaged when they tie within `tie_tolerance`.
struct SlemSubgradient {
    double slem = 0.0;
    double top = 0.0;     ///< largest eigenvalue of W - 11^T/N
    double bottom = 0.0;  ///< minus the smallest one
    std::vector<double> per_edge;
};

inline SlemSubgradient slem_subgradient(const Graph& g, std::span<const double> edge_weights,
                                        double tie_tolerance = 1e-12) {
    if (edge_weights.size() != g.edge_count()) throw ParameterError("one weight per edge required");
    const std::size_t nn = g.node_count();
    const double jn = 1.0 / static_cast<double>(nn);
    WeightAssignment wa;
    wa.per_edge.assign(edge_weights.begin(), edge_weights.end());
    Matrix w = assemble_matrix(g, wa);
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) w(i, j) -= jn;
    const EigenDecomposition ed = eigen_decompose(w);

    SlemSubgradient r;
    r.top = ed.values.front();
    r.bottom = -ed.values.back();
    r.slem = std::max(r.top, r.bottom);
    r.per_edge.assign(g.edge_count(), 0.0);
    auto accumulate = [&](std::size_t col, double sign) {
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const double d = ed.vectors(g.edges()[e].u, col) - ed.vectors(g.edges()[e].v, col);
            r.per_edge[e] -= sign * d * d;
        }
    };
    if (std::abs(r.top - r.bottom) <= tie_tolerance) {
        accumulate(0, 0.5);
        accumulate(nn - 1, -0.5);
    } else if (r.top > r.bottom) {
        accumulate(0, 1.0);
    } else {
        accumulate(nn - 1, -1.0);
    }
    return r;
}

/// Minimizes max(lambda_2(W), -lambda_N(W)) over symmetric stochastic W with the
/// sparsity of `g`. Edges sharing a label in `classes` share one weight.
/// Starts from Metropolis weights (class-averaged).
inline OptimizeResult minimize_slem(const Graph& g, const std::optional<std::vector<int>>& classes = std::nullopt,
                                    const OptimizeConfig& config = {}) {
    if (!g.is_connected()) throw ParameterError("minimize_slem requires a connected graph");
    if (g.node_count() < 2) throw ParameterError("minimize_slem requires at least two nodes");
    const std::size_t edges = g.edge_count();
    if (classes && classes->size() != edges) throw ParameterError("one class label per edge required");

    // Contiguous class indices in order of first label appearance sorted by label.
    std::vector<int> labels;
    std::vector<std::size_t> cls(edges);
    if (classes) {
        labels = *classes;
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        for (std::size_t e = 0; e < edges; ++e)
            cls[e] = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), (*classes)[e]) -
                                              labels.begin());
    } else {
        labels.resize(edges);
        for (std::size_t e = 0; e < edges; ++e) {
            labels[e] = static_cast<int>(e);
            cls[e] = e;
        }
    }
    const std::size_t nc = labels.size();

    std::vector<double> x(nc, 0.0), count(nc, 0.0);
    {
        const Matrix metro = metropolis_weights(g);
        for (std::size_t e = 0; e < edges; ++e) {
            x[cls[e]] += metro(g.edges()[e].u, g.edges()[e].v);
            count[cls[e]] += 1.0;
        }
        for (std::size_t c = 0; c < nc; ++c) x[c] /= count[c];
    }

    OptimizeResult result;
    result.slem = std::numeric_limits<double>::infinity();
    std::vector<double> best_x = x, per_edge(edges);

    for (int t = 1; t <= config.max_iterations; ++t) {
        for (std::size_t e = 0; e < edges; ++e) per_edge[e] = x[cls[e]];
        const SlemSubgradient sg = slem_subgradient(g, per_edge, config.tie_tolerance);
        if (sg.slem < result.slem) {
            result.slem = sg.slem;
            best_x = x;
        }
        result.history.push_back(result.slem);
        result.iterations = t;

        std::vector<double> grad(nc, 0.0);
        for (std::size_t e = 0; e < edges; ++e) grad[cls[e]] += sg.per_edge[e];
        double norm = 0.0;
        for (double v : grad) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) break;  // SLEM cannot be lowered along any class direction
        const double step = config.step_scale / std::sqrt(static_cast<double>(t)) / norm;
        for (std::size_t c = 0; c < nc; ++c) x[c] -= step * grad[c];
    }
    const std::size_t done = result.history.size();
    const std::size_t window = static_cast<std::size_t>(std::max(config.stall_window, 1));
    result.converged = done < static_cast<std::size_t>(config.max_iterations) ||
                       (done > window && result.history[done - 1 - window] - result.slem < config.stall_tolerance);

    for (std::size_t c = 0; c < nc; ++c) result.class_weights[labels[c]] = best_x[c];
    result.weights.per_edge.resize(edges);
    for (std::size_t e = 0; e < edges; ++e) result.weights.per_edge[e] = best_x[cls[e]];
    if (classes) result.weights.per_stratum = result.class_weights;
    return result;
}

/// Subgradient minimization with the graph's own strata as symmetry classes.
inline OptimizeResult minimize_slem(const Topology& topology, const OptimizeConfig& config = {}) {
    const Graph g = build(topology);
    if (g.has_strata()) return minimize_slem(g, g.strata(), config);
    return minimize_slem(g, std::nullopt, config);
}

// ---------------------------------------------------------------------------
// KCS SLEM versus number of central nodes
// ---------------------------------------------------------------------------

struct CurvePoint {
    int k = 0;
    double slem = 0.0;
    bool closed_form = true;  ///< false: numerically optimized (k > k_max)
};

/// SLEM of KcsStar{m, n, k} for k in [k_first, k_last]: closed form while
/// k <= k_max, subgradient optimum with strata tied beyond it.
inline std::vector<CurvePoint> kcs_slem_curve(int n, int m, int k_first, int k_last, const OptimizeConfig& config = {},
                                              unsigned threads = default_thread_count()) {
    if (k_first < 1 || k_last < k_first) throw ParameterError("kcs_slem_curve: need 1 <= k_first <= k_last");
    const int kmax = k_max(m, n);
    std::vector<CurvePoint> curve(static_cast<std::size_t>(k_last - k_first + 1));
    parallel_for(curve.size(), threads, [&](std::size_t i) {
        const int k = k_first + static_cast<int>(i);
        CurvePoint p{k, 0.0, k <= kmax};
        if (p.closed_form) p.slem = slem_closed_form(KcsStar{m, n, k});
        else p.slem = minimize_slem(KcsStar{m, n, k}, config).slem;
        curve[i] = p;
    });
    return curve;
}

inline int curve_argmin(const std::vector<CurvePoint>& curve) {
    if (curve.empty()) throw ParameterError("empty curve");
    return std::min_element(curve.begin(), curve.end(),
                            [](const CurvePoint& a, const CurvePoint& b) { return a.slem < b.slem; })
        ->k;
}

// ---------------------------------------------------------------------------
// Stars with arbitrary branches
// ---------------------------------------------------------------------------

/// A connected graph hung off the core through node `attachment`.
struct Branch {
    std::string name;
    std::size_t node_count = 1;
    std::vector<Edge> edges;
    std::size_t attachment = 0;

    bool same_shape(const Branch& o) const {
        return node_count == o.node_count && edges == o.edges && attachment == o.attachment;
    }
};

/// Path on `nodes` nodes attached at one end.
inline Branch path_branch(std::size_t nodes) {
    Branch b{"path" + std::to_string(nodes), nodes, {}, 0};
    for (std::size_t i = 1; i < nodes; ++i) b.edges.push_back({i - 1, i});
    return b;
}

inline Branch triangle_branch() { return {"triangle", 3, {{0, 1}, {0, 2}, {1, 2}}, 0}; }

/// A stick of one edge ending in a triangle.
inline Branch lollipop_branch() { return {"lollipop", 4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}, 0}; }

/// Complete graph on q nodes.
inline Branch complete_branch(std::size_t q) {
    Branch b{"K" + std::to_string(q), q, {}, 0};
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) b.edges.push_back({i, j});
    return b;
}

enum class CoreKind {
    StarCenter,    ///< every branch joined to one extra central node by an edge
    CompleteCore,  ///< the branches' attachment nodes form a complete graph
};

/// Composite graph with symmetry classes: 0 for every central edge; branch
/// edges share a class with the same edge of every identically shaped branch.
struct CompositeGraph {
    Graph graph;
    std::vector<int> classes;
};

inline CompositeGraph compose(CoreKind core, const std::vector<Branch>& branches) {
    if (branches.empty()) throw ParameterError("compose: need at least one branch");
    if (core == CoreKind::CompleteCore && branches.size() < 2)
        throw ParameterError("compose: a complete core needs at least two branches");

    std::size_t next = core == CoreKind::StarCenter ? 1 : 0;
    std::vector<std::size_t> offset, attach;
    for (const Branch& b : branches) {
        if (b.attachment >= b.node_count) throw ParameterError("branch attachment out of range");
        if (!Graph(b.node_count, b.edges).is_connected())
            throw ParameterError("branch '" + b.name + "' is not connected");
        offset.push_back(next);
        attach.push_back(next + b.attachment);
        next += b.node_count;
    }

    std::vector<Edge> edges;
    std::vector<int> classes;
    if (core == CoreKind::StarCenter) {
        for (std::size_t a : attach) {
            edges.push_back({0, a});
            classes.push_back(0);
        }
    } else {
        for (std::size_t i = 0; i < attach.size(); ++i)
            for (std::size_t j = i + 1; j < attach.size(); ++j) {
                edges.push_back({attach[i], attach[j]});
                classes.push_back(0);
            }
    }

    // Shape id = index of the first branch with the same shape.
    int next_class = 1;
    std::vector<int> first_class(branches.size(), -1);
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        int base = -1;
        for (std::size_t prev = 0; prev < bi; ++prev)
            if (branches[prev].same_shape(branches[bi])) {
                base = first_class[prev];
                break;
            }
        if (base < 0) {
            base = next_class;
            next_class += static_cast<int>(branches[bi].edges.size());
        }
        first_class[bi] = base;
        for (std::size_t e = 0; e < branches[bi].edges.size(); ++e) {
            const Edge& le = branches[bi].edges[e];
            edges.push_back({offset[bi] + le.u, offset[bi] + le.v});
            classes.push_back(base + static_cast<int>(e));
        }
    }
    return {Graph(next, std::move(edges)), std::move(classes)};
}

struct InvarianceReport {
    CoreKind core = CoreKind::StarCenter;
    std::size_t branches = 0;
    double expected = 0.0;        ///< 2/(2 + n) for a star center, 1/n for a complete core
    double central_weight = 0.0;  ///< optimized weight of the central class
    double error = 0.0;           ///< |central_weight - expected|
    OptimizeResult optimum;
};

inline double expected_central_weight(CoreKind core, std::size_t branches) {
    const double n = static_cast<double>(branches);
    return core == CoreKind::StarCenter ? 2.0 / (2.0 + n) : 1.0 / n;
}

/// Optimizes the composite graph and compares the central weight with the
/// path-branch closed form.
inline InvarianceReport central_weight_invariance(CoreKind core, const std::vector<Branch>& branches,
                                                  const OptimizeConfig& config = {}) {
    const CompositeGraph cg = compose(core, branches);
    InvarianceReport r;
    r.core = core;
    r.branches = branches.size();
    r.expected = expected_central_weight(core, branches.size());
    r.optimum = minimize_slem(cg.graph, cg.classes, config);
    r.central_weight = r.optimum.class_weights.at(0);
    r.error = std::abs(r.central_weight - r.expected);
    return r;
}

} // namespace starcons
