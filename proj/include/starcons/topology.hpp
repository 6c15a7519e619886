#pragma once

// Star-family graph construction.
//
// Node layout (fixed so matrices and exports are reproducible):
//   SymmetricStar{m, n}: node 0 is the center; tail node (b, j) for branch
//     b = 0..n-1 and depth j = 1..m is 1 + b*m + (j-1).
//   KcsStar{m, n, k}: centers are 0..k-1; tail node (b, j) is k + b*m + (j-1).
//     Depth-1 nodes attach to every center; centers are not adjacent.
//   CcsStar{m, n}: core node of branch b is b (0..n-1), the core is complete;
//     tail node (b, j) for j = 1..m is n + b*m + (j-1). Each tail has m edges.
//
// Edge strata: 0 = core edge (CCS only), j = edge entering depth j of a tail.
// Edge order: core edges lexicographically, then branch-major inner-to-outer
// (for KCS the k attachments of a branch come first, by center index).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "starcons/error.hpp"

namespace starcons {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph with optional per-edge stratum labels.
class Graph {
public:
    Graph() = default;

    /// Throws ParameterError on self-loops, duplicates, out-of-range indices or
    /// a label vector whose length differs from the edge count. Edges are
    /// stored with u < v in the given order.
    Graph(std::size_t node_count, std::vector<Edge> edges,
          std::optional<std::vector<int>> strata = std::nullopt)
        : node_count_(node_count), edges_(std::move(edges)), strata_(std::move(strata)) {
        if (node_count_ == 0) throw ParameterError("graph must have at least one node");
        std::set<Edge> seen;
        for (Edge& e : edges_) {
            if (e.u == e.v) throw ParameterError("graph: self-loop on node " + std::to_string(e.u));
            if (e.u >= node_count_ || e.v >= node_count_)
                throw ParameterError("graph: edge endpoint out of range");
            if (e.u > e.v) std::swap(e.u, e.v);
            if (!seen.insert(e).second)
                throw ParameterError("graph: duplicate edge " + std::to_string(e.u) + "-" +
                                     std::to_string(e.v));
        }
        if (strata_ && strata_->size() != edges_.size())
            throw ParameterError("graph: stratum labels must cover every edge exactly once");
    }

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool has_strata() const noexcept { return strata_.has_value(); }
    const std::vector<int>& strata() const {
        if (!strata_) throw UnsupportedError("graph carries no stratum labels");
        return *strata_;
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(node_count_, 0);
        for (const Edge& e : edges_) {
            ++d[e.u];
            ++d[e.v];
        }
        return d;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(node_count_);
        for (const Edge& e : edges_) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    std::size_t component_count() const {
        const auto adj = adjacency();
        std::vector<bool> seen(node_count_, false);
        std::size_t components = 0;
        for (std::size_t s = 0; s < node_count_; ++s) {
            if (seen[s]) continue;
            ++components;
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                const std::size_t x = q.front();
                q.pop();
                for (std::size_t y : adj[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        q.push(y);
                    }
            }
        }
        return components;
    }

    bool is_connected() const { return component_count() == 1; }

    /// Stratum index -> number of edges carrying it.
    std::map<int, std::size_t> stratum_sizes() const {
        std::map<int, std::size_t> sizes;
        for (int s : strata()) ++sizes[s];
        return sizes;
    }

    bool operator==(const Graph&) const = default;

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::optional<std::vector<int>> strata_;
};

struct SymmetricStar {
    int m = 1;  ///< tail length (edges per tail)
    int n = 1;  ///< number of tails
};

struct CcsStar {
    int m = 1;
    int n = 2;
};

struct KcsStar {
    int m = 1;
    int n = 1;
    int k = 1;  ///< parallel central nodes
};

struct Custom {
    Graph graph;
};

using Topology = std::variant<SymmetricStar, CcsStar, KcsStar, Custom>;

inline bool is_star_family(const Topology& t) { return !std::holds_alternative<Custom>(t); }

inline std::string family_name(const Topology& t) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymmetricStar>) return "symmetric-star";
            else if constexpr (std::is_same_v<T, CcsStar>) return "ccs-star";
            else if constexpr (std::is_same_v<T, KcsStar>) return "kcs-star";
            else return "custom";
        },
        t);
}

inline std::string describe(const Topology& t) {
    std::ostringstream os;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymmetricStar>) os << "SymmetricStar{m=" << x.m << ", n=" << x.n << "}";
            else if constexpr (std::is_same_v<T, CcsStar>) os << "CcsStar{m=" << x.m << ", n=" << x.n << "}";
            else if constexpr (std::is_same_v<T, KcsStar>)
                os << "KcsStar{m=" << x.m << ", n=" << x.n << ", k=" << x.k << "}";
            else os << "Custom{" << x.graph.node_count() << " nodes}";
        },
        t);
    return os.str();
}

/// Throws ParameterError when the family's bounds are violated.
inline void check_parameters(const Topology& t) {
    std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymmetricStar>) {
                if (x.m < 1 || x.n < 1) throw ParameterError("SymmetricStar requires m >= 1, n >= 1");
            } else if constexpr (std::is_same_v<T, CcsStar>) {
                if (x.m < 1 || x.n < 2) throw ParameterError("CcsStar requires m >= 1, n >= 2");
            } else if constexpr (std::is_same_v<T, KcsStar>) {
                if (x.m < 1 || x.n < 1 || x.k < 1)
                    throw ParameterError("KcsStar requires m >= 1, n >= 1, k >= 1");
            }
        },
        t);
}

/// Tail length m of a star family.
inline int tail_length(const Topology& t) {
    return std::visit(
        [](const auto& x) -> int {
            if constexpr (requires { x.m; }) return x.m;
            else throw UnsupportedError("custom graphs have no tail length");
        },
        t);
}

/// Branch count n of a star family.
inline int branch_count(const Topology& t) {
    return std::visit(
        [](const auto& x) -> int {
            if constexpr (requires { x.n; }) return x.n;
            else throw UnsupportedError("custom graphs have no branch count");
        },
        t);
}

/// Number of central (core) nodes occupying indices 0..count-1.
inline std::size_t central_count(const Topology& t) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymmetricStar>) return 1;
            else if constexpr (std::is_same_v<T, CcsStar>) return static_cast<std::size_t>(x.n);
            else if constexpr (std::is_same_v<T, KcsStar>) return static_cast<std::size_t>(x.k);
            else throw UnsupportedError("custom graphs have no central nodes");
        },
        t);
}

/// Index of tail node at depth j (1-based) on branch b (0-based).
inline std::size_t tail_node(const Topology& t, int branch, int depth) {
    return std::visit(
        [&](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Custom>) {
                throw UnsupportedError("custom graphs have no tails");
            } else {
                if (branch < 0 || branch >= x.n || depth < 1 || depth > x.m)
                    throw ParameterError("tail_node: branch/depth out of range");
                return central_count(x) + static_cast<std::size_t>(branch) * x.m +
                       static_cast<std::size_t>(depth - 1);
            }
        },
        t);
}

/// Builds the labelled graph of a star family; Custom returns its graph.
inline Graph build(const Topology& topology) {
    check_parameters(topology);
    if (const auto* c = std::get_if<Custom>(&topology)) return c->graph;

    const int m = tail_length(topology);
    const int n = branch_count(topology);
    const std::size_t centrals = central_count(topology);
    const std::size_t nodes = centrals + static_cast<std::size_t>(n) * m;

    std::vector<Edge> edges;
    std::vector<int> strata;
    const bool ccs = std::holds_alternative<CcsStar>(topology);

    if (ccs) {
        for (std::size_t a = 0; a < centrals; ++a)
            for (std::size_t b = a + 1; b < centrals; ++b) {
                edges.push_back({a, b});
                strata.push_back(0);
            }
    }
    for (int b = 0; b < n; ++b) {
        if (ccs) {
            edges.push_back({static_cast<std::size_t>(b), tail_node(topology, b, 1)});
            strata.push_back(1);
        } else {
            for (std::size_t c = 0; c < centrals; ++c) {
                edges.push_back({c, tail_node(topology, b, 1)});
                strata.push_back(1);
            }
        }
        for (int j = 2; j <= m; ++j) {
            edges.push_back({tail_node(topology, b, j - 1), tail_node(topology, b, j)});
            strata.push_back(j);
        }
    }
    return Graph(nodes, std::move(edges), std::move(strata));
}

/// Node relabelling induced by moving branch b to branch perm[b]. Central
/// nodes of symmetric/KCS stars stay fixed; CCS core node b follows its branch.
inline std::vector<std::size_t> branch_permutation(const Topology& topology,
                                                   const std::vector<int>& perm) {
    check_parameters(topology);
    if (!is_star_family(topology)) throw UnsupportedError("branch permutation needs a star family");
    const int m = tail_length(topology);
    const int n = branch_count(topology);
    if (perm.size() != static_cast<std::size_t>(n)) throw ParameterError("permutation size must equal n");
    std::vector<int> check(perm);
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
        if (check[i] != i) throw ParameterError("not a permutation of 0..n-1");

    const std::size_t centrals = central_count(topology);
    std::vector<std::size_t> map(centrals + static_cast<std::size_t>(n) * m);
    const bool ccs = std::holds_alternative<CcsStar>(topology);
    for (std::size_t c = 0; c < centrals; ++c) map[c] = ccs ? static_cast<std::size_t>(perm[c]) : c;
    for (int b = 0; b < n; ++b)
        for (int j = 1; j <= m; ++j) map[tail_node(topology, b, j)] = tail_node(topology, perm[b], j);
    return map;
}

struct ValidationReport {
    bool connected = false;
    bool simple = true;
    std::size_t components = 0;
    std::vector<std::size_t> degrees;
};

/// Report-only structural check.
inline ValidationReport validate(const Graph& g) {
    ValidationReport r;
    r.components = g.component_count();
    r.connected = r.components == 1;
    r.degrees = g.degrees();
    // The constructor already rejects loops and duplicates.
    r.simple = true;
    return r;
}

/// Edge-list CSV `u,v,stratum`; stratum left empty for unlabelled graphs.
inline std::string edge_list_csv(const Graph& g) {
    std::ostringstream os;
    os << "u,v,stratum\n";
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        os << e.u << ',' << e.v << ',';
        if (g.has_strata()) os << g.strata()[i];
        os << '\n';
    }
    return os.str();
}

} // namespace starcons
