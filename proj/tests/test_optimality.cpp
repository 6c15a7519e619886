#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "starcons/optimality.hpp"

using namespace starcons;

TEST(Slackness, ResidualsVanishOnGrid) {
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n) {
            const auto r = slackness_residuals(m, n);
            EXPECT_EQ(r.residuals.size(), 10u);
            for (const auto& [name, v] : r.residuals) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1e-9) << name << " m=" << m << " n=" << n;
            }
        }
}

TEST(Slackness, CoordinatesFollowChebyshevRecursion) {
    const auto r = slackness_residuals(6, 4);
    ASSERT_EQ(r.a_coords.size(), 6u);
    EXPECT_DOUBLE_EQ(r.a_coords.back(), 1.0);
    EXPECT_DOUBLE_EQ(r.b_coords.back(), 1.0);
    // a_{i-1} = 2 cos(theta) a_i - a_{i+1} with a_{m+1} = 0; b uses -cos(theta).
    std::vector<double> a = r.a_coords, b = r.b_coords;
    a.push_back(0.0);
    b.push_back(0.0);
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        EXPECT_NEAR(a[i - 1], 2.0 * r.s * a[i] - a[i + 1], 1e-12);
        EXPECT_NEAR(b[i - 1], -2.0 * r.s * b[i] - b[i + 1], 1e-12);
    }
    // Ratio condition: |a_i| = |b_i|.
    for (std::size_t i = 0; i < r.a_coords.size(); ++i) EXPECT_NEAR(std::abs(a[i]), std::abs(b[i]), 1e-12);
}

TEST(Slackness, SingleEdgeTails) {
    for (int n = 1; n <= 8; ++n) {
        const auto r = slackness_residuals(1, n);
        EXPECT_NEAR(r.s, n / (n + 2.0), 1e-12);
        EXPECT_LE(r.residuals.at("a_first"), 1e-12);
        EXPECT_EQ(r.residuals.at("a_interior"), 0.0);
        EXPECT_EQ(r.residuals.at("a_last"), 0.0);
    }
}

// Linear residuals scale with the coordinates, the quadratic one with its square.
TEST(Slackness, Homogeneity) {
    const auto one = slackness_residuals(3, 5, 1.0);
    const auto two = slackness_residuals(3, 5, 2.0);
    for (const auto& [name, v] : two.residuals) EXPECT_LE(v, 4e-9) << name;
    for (std::size_t i = 0; i < one.a_coords.size(); ++i) EXPECT_DOUBLE_EQ(two.a_coords[i], 2.0 * one.a_coords[i]);
}

TEST(Slackness, Preconditions) {
    EXPECT_THROW(slackness_residuals(0, 3), ParameterError);
    EXPECT_THROW(slackness_residuals(3, 0), ParameterError);
}

// The subgradient agrees with central differences where the extreme
// eigenvalue is simple.
TEST(Optimizer, SubgradientMatchesFiniteDifferences) {
    const Graph g = build(SymmetricStar{2, 3});
    std::vector<double> w{0.31, 0.47, 0.29, 0.52, 0.35, 0.44};
    const auto sg = slem_subgradient(g, w);
    ASSERT_GT(std::abs(sg.top - sg.bottom), 1e-3);
    const double h = 1e-6;
    for (std::size_t e = 0; e < w.size(); ++e) {
        auto plus = w, minus = w;
        plus[e] += h;
        minus[e] -= h;
        const double fd = (slem_subgradient(g, plus).slem - slem_subgradient(g, minus).slem) / (2 * h);
        EXPECT_NEAR(sg.per_edge[e], fd, 1e-6) << "edge " << e;
    }
}

TEST(Optimizer, SymmetricStarAnchor) {
    const auto r = minimize_slem(SymmetricStar{2, 3});
    EXPECT_NEAR(r.slem, slem_closed_form(SymmetricStar{2, 3}), 1e-3);
    EXPECT_NEAR(r.class_weights.at(1), 0.4, 1e-2);
    EXPECT_NEAR(r.class_weights.at(2), 0.5, 1e-2);
}

TEST(Optimizer, CcsStarAnchor) {
    const auto r = minimize_slem(CcsStar{2, 4});
    EXPECT_NEAR(r.slem, std::cos(std::numbers::pi / 6), 1e-3);
    EXPECT_NEAR(r.class_weights.at(0), 0.25, 1e-2);
}

TEST(Optimizer, KcsStarAnchor) {
    const auto r = minimize_slem(KcsStar{2, 3, 2});
    EXPECT_NEAR(r.slem, slem_closed_form(KcsStar{2, 3, 2}), 1e-3);
    EXPECT_NEAR(r.class_weights.at(1), 2.0 / 7.0, 1e-2);
}

TEST(Optimizer, SingleEdge) {
    const auto r = minimize_slem(oracle::path_graph(2));
    EXPECT_NEAR(r.slem, 0.0, 1e-12);
    EXPECT_NEAR(r.weights.per_edge[0], 0.5, 1e-12);
    EXPECT_TRUE(r.converged);
}

// Path on N nodes: optimum is weight 1/2 everywhere with SLEM cos(pi/N).
TEST(Optimizer, UntiedPathRecoversKnownOptimum) {
    const auto r = minimize_slem(oracle::path_graph(5));
    EXPECT_NEAR(r.slem, std::cos(std::numbers::pi / 5), 1e-3);
}

TEST(Optimizer, HistoryIsNonIncreasingAndDeterministic) {
    const auto a = minimize_slem(SymmetricStar{2, 3});
    const auto b = minimize_slem(SymmetricStar{2, 3});
    ASSERT_EQ(a.history.size(), static_cast<std::size_t>(a.iterations));
    for (std::size_t i = 1; i < a.history.size(); ++i) EXPECT_LE(a.history[i], a.history[i - 1]);
    EXPECT_EQ(a.history, b.history);
    EXPECT_EQ(a.slem, b.slem);
    EXPECT_EQ(a.weights, b.weights);
}

// Property: the optimizer never beats the closed form (which is optimal for n >= 2).
TEST(Optimizer, NeverBelowClosedForm) {
    OptimizeConfig quick;
    quick.max_iterations = 800;
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 4; ++n) {
            EXPECT_GE(minimize_slem(SymmetricStar{m, n}, quick).slem, slem_closed_form(SymmetricStar{m, n}) - 1e-6);
            EXPECT_GE(minimize_slem(CcsStar{m, n}, quick).slem, slem_closed_form(CcsStar{m, n}) - 1e-6);
        }
}

TEST(Optimizer, IterationCapReportsNotConverged) {
    OptimizeConfig tiny;
    tiny.max_iterations = 10;
    const auto r = minimize_slem(SymmetricStar{3, 4}, tiny);
    EXPECT_EQ(r.iterations, 10);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.history.size(), 10u);
}

TEST(Optimizer, Preconditions) {
    EXPECT_THROW(minimize_slem(Graph(3, {{0, 1}})), ParameterError);
    EXPECT_THROW(minimize_slem(oracle::path_graph(3), std::vector<int>{0}), ParameterError);
    EXPECT_THROW(slem_subgradient(oracle::path_graph(3), std::vector<double>{0.5}), ParameterError);
}

TEST(Curve, ClosedFormUpToKMaxThenOptimized) {
    OptimizeConfig quick;
    quick.max_iterations = 1500;
    const auto curve = kcs_slem_curve(3, 2, 1, 12, quick, 1);
    ASSERT_EQ(curve.size(), 12u);
    EXPECT_NEAR(curve[0].slem, slem_closed_form(SymmetricStar{2, 3}), 1e-12);
    for (const auto& p : curve) {
        EXPECT_EQ(p.closed_form, p.k <= 9) << p.k;
        if (!p.closed_form) {
            // The closed-form weights stay feasible, so the optimum cannot be worse.
            EXPECT_LE(p.slem, slem(weight_matrix(KcsStar{2, 3, p.k}, Scheme::Optimal)) + 1e-9) << p.k;
        }
    }
    // Non-increasing on [1, k_max].
    for (int k = 1; k < 9; ++k) EXPECT_LE(curve[k].slem, curve[k - 1].slem + 1e-12) << k;
    EXPECT_THROW(kcs_slem_curve(3, 2, 0, 5), ParameterError);
    EXPECT_THROW(kcs_slem_curve(3, 2, 5, 4), ParameterError);
}

// SDP reference (cvxpy): KCS n=3, m=2 optimum 0.728541 at k = 10.
TEST(Curve, BeyondKMaxMatchesSdpReference) {
    const auto r = minimize_slem(KcsStar{2, 3, 10});
    EXPECT_NEAR(r.slem, 0.728541, 1e-3);
}

TEST(Curve, ThreadCountDoesNotChangeResult) {
    OptimizeConfig quick;
    quick.max_iterations = 300;
    const auto a = kcs_slem_curve(3, 2, 8, 13, quick, 1);
    const auto b = kcs_slem_curve(3, 2, 8, 13, quick, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].slem, b[i].slem);
}

TEST(Branches, ComposeStarCenter) {
    const auto cg = compose(CoreKind::StarCenter, {triangle_branch(), triangle_branch(), path_branch(2)});
    EXPECT_EQ(cg.graph.node_count(), 1u + 3 + 3 + 2);
    EXPECT_EQ(cg.graph.edge_count(), 3u + 3 + 3 + 1);
    ASSERT_EQ(cg.classes.size(), cg.graph.edge_count());
    for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(cg.classes[e], 0);
    // Identical triangles share classes; the path gets its own.
    EXPECT_EQ(cg.classes[3], cg.classes[6]);
    EXPECT_NE(cg.classes[3], cg.classes[9]);
    EXPECT_TRUE(cg.graph.is_connected());
}

TEST(Branches, ComposeCompleteCore) {
    const auto cg = compose(CoreKind::CompleteCore, {lollipop_branch(), lollipop_branch(), lollipop_branch()});
    EXPECT_EQ(cg.graph.node_count(), 12u);
    EXPECT_EQ(cg.graph.edge_count(), 3u + 12);
    EXPECT_THROW(compose(CoreKind::CompleteCore, {triangle_branch()}), ParameterError);
    EXPECT_THROW(compose(CoreKind::StarCenter, {}), ParameterError);
    Branch broken{"broken", 3, {{0, 1}}, 0};
    EXPECT_THROW(compose(CoreKind::StarCenter, {broken}), ParameterError);
    Branch bad_attach{"bad", 2, {{0, 1}}, 5};
    EXPECT_THROW(compose(CoreKind::StarCenter, {bad_attach}), ParameterError);
}

// Path branches reproduce the symmetric star itself.
TEST(Branches, PathBranchesAreSymmetricStar) {
    const auto r = central_weight_invariance(CoreKind::StarCenter, {path_branch(2), path_branch(2), path_branch(2)});
    EXPECT_NEAR(r.expected, 0.4, 1e-15);
    EXPECT_LT(r.error, 1e-2);
}

// Central weights from SDP solves: triangles 0.4005, K4 (4 branches) 1/3,
// lollipops on a core 1/3; the optimizer must land within 1e-2.
TEST(Branches, InvarianceForNonPathBranches) {
    const std::vector<std::pair<CoreKind, std::vector<Branch>>> cases = {
        {CoreKind::StarCenter, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::StarCenter, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
        {CoreKind::StarCenter, {complete_branch(4), complete_branch(4), complete_branch(4), complete_branch(4)}},
        {CoreKind::CompleteCore, {triangle_branch(), triangle_branch(), triangle_branch()}},
        {CoreKind::CompleteCore, {lollipop_branch(), lollipop_branch(), lollipop_branch()}},
        {CoreKind::CompleteCore, {path_branch(2), path_branch(2), triangle_branch(), triangle_branch()}},
    };
    for (const auto& [core, branches] : cases) {
        const auto r = central_weight_invariance(core, branches);
        EXPECT_LT(r.error, 1e-2) << branches.front().name << " x" << branches.size() << " -> "
                                 << r.central_weight << " vs " << r.expected;
    }
}
