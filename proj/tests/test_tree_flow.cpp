#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "support.hpp"

using namespace forward;

namespace {

// Least-squares solution of A x = p with A the u->v incidence matrix of the forest.
Eigen::VectorXd least_squares_flows(const DistributionNetwork &net, const std::vector<EdgeId> &forest) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(net.node_count()),
                                              static_cast<Eigen::Index>(forest.size()));
    for (std::size_t k = 0; k < forest.size(); ++k) {
        const Edge &e = net.edge(forest[k]);
        A(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(k)) = 1.0;
        A(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(k)) = -1.0;
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(net.node_count()));
    for (NodeId v = 0; v < net.node_count(); ++v)
        p(static_cast<Eigen::Index>(v)) = net.injection(v);
    return A.completeOrthogonalDecomposition().solve(p);
}

} // namespace

TEST(TreeFlow, PathFlows) {
    const auto net = fixtures::path3();
    const std::vector<EdgeId> edges{0, 1};
    const auto sol = solve_forest(net, edges, net.injections());
    EXPECT_EQ(sol.oriented_edges[0], (DirectedEdge{0, 1, 0}));
    EXPECT_EQ(sol.oriented_edges[1], (DirectedEdge{1, 2, 1}));
    EXPECT_DOUBLE_EQ(sol.flows[0], 2.0);
    EXPECT_DOUBLE_EQ(sol.flows[1], 1.0);
    EXPECT_DOUBLE_EQ(sol.cost, 5.0);
}

TEST(TreeFlow, OrientationFollowsFlow) {
    // Source in the middle: both edges point away from it.
    const DistributionNetwork net({"a", "b", "c"}, {-1, 2, -1}, {{0, 1, 1}, {1, 2, 3}});
    const std::vector<EdgeId> edges{0, 1};
    const auto sol = solve_forest(net, edges, net.injections());
    EXPECT_EQ(sol.oriented_edges[0].tail, 1u);
    EXPECT_EQ(sol.oriented_edges[1].tail, 1u);
    EXPECT_DOUBLE_EQ(sol.cost, 4.0);
}

TEST(TreeFlow, RejectsCycle) {
    const DistributionNetwork net({"a", "b", "c"}, {1, 0, -1}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    const std::vector<EdgeId> edges{0, 1, 2};
    EXPECT_THROW(solve_forest(net, edges, net.injections()), CycleError);
}

TEST(TreeFlow, RejectsImbalancedComponent) {
    const auto net = fixtures::path3();
    const std::vector<EdgeId> edges{0};
    EXPECT_THROW(solve_forest(net, edges, net.injections()), ImbalanceError);
}

TEST(TreeFlow, RejectsUnknownEdge) {
    const auto net = fixtures::path3();
    const std::vector<EdgeId> edges{7};
    EXPECT_THROW(solve_forest(net, edges, net.injections()), UnknownEdge);
    const std::vector<EdgeFlow> flows{{9, 1.0}};
    EXPECT_THROW(evaluate_cost(net, flows), UnknownEdge);
}

TEST(TreeFlow, ZeroFlowIsFlagged) {
    const DistributionNetwork net({"a", "b", "c"}, {1, -1, 0}, {{0, 1, 1}, {1, 2, 1}});
    const std::vector<EdgeId> edges{0, 1};
    const auto sol = solve_forest(net, edges, net.injections());
    ASSERT_EQ(sol.zero_flow_edges.size(), 1u);
    EXPECT_EQ(sol.zero_flow_edges[0], 1u);
}

TEST(TreeFlow, EvaluateCostMatchesSolve) {
    const auto net = fixtures::fig2();
    const auto cfg = mst_configuration(net);
    std::vector<EdgeFlow> flows;
    for (std::size_t k = 0; k < cfg.edges.size(); ++k)
        flows.push_back({cfg.edges[k].edge, cfg.flows[k]});
    EXPECT_DOUBLE_EQ(evaluate_cost(net, flows), cfg.total_cost);
}

TEST(TreeFlow, MatchesLeastSquaresOnRandomForests) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto rf = fixtures::random_forest(seed);
        const auto sol = solve_forest(rf.net, rf.forest, rf.net.injections());
        const Eigen::VectorXd ref = least_squares_flows(rf.net, rf.forest);
        for (std::size_t k = 0; k < rf.forest.size(); ++k) {
            const double sign = sol.oriented_edges[k].tail == rf.net.edge(rf.forest[k]).u ? 1.0 : -1.0;
            EXPECT_NEAR(sign * sol.flows[k], ref(static_cast<Eigen::Index>(k)), 1e-8) << "seed " << seed;
            EXPECT_GE(sol.flows[k], 0.0);
        }
    }
}
