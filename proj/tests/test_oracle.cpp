#include <gtest/gtest.h>

#include "support.hpp"

using namespace forward;
using fixtures::id;

namespace {

std::set<std::pair<std::string, std::string>> undirected(const DistributionNetwork &net, const RadialConfiguration &cfg) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto &d : cfg.edges)
        out.insert(std::minmax(net.name(d.tail), net.name(d.head)));
    return out;
}

} // namespace

TEST(Oracle, Fig2Optimum) {
    const auto net = fixtures::fig2();
    const auto result = enumerate_optimal(net);
    ASSERT_TRUE(result.optimum.has_value());
    EXPECT_NEAR(result.optimal_cost, 47.0, 1e-9);
    EXPECT_TRUE(validate_radial(net, *result.optimum).ok());
    const std::set<std::pair<std::string, std::string>> expected{
        {"c3", "c5"}, {"c2", "c5"}, {"c4", "s"}, {"c3", "c4"}, {"c1", "c4"}};
    EXPECT_EQ(undirected(net, *result.optimum), expected);
}

TEST(Oracle, Fig2MinimumCoefficientTree) {
    const auto net = fixtures::fig2();
    const auto mst = mst_configuration(net);
    EXPECT_NEAR(mst.total_cost, 81.0, 1e-9);
    const std::set<std::pair<std::string, std::string>> expected{
        {"c3", "c5"}, {"c1", "c5"}, {"c2", "c5"}, {"c4", "s"}, {"c3", "c4"}};
    EXPECT_EQ(undirected(net, mst), expected);
}

TEST(Oracle, PathHasOneConfiguration) {
    const auto result = enumerate_optimal(fixtures::path3());
    EXPECT_EQ(result.feasible_count, 1u);
    EXPECT_DOUBLE_EQ(result.optimal_cost, 5.0);
    // Subsets: {}, {ab}, {bc}, {ab, bc}.
    EXPECT_EQ(result.enumerated_count, 4u);
}

TEST(Oracle, FourCycleByHand) {
    // s - a - c - b - s, c carries nothing. Dropping a - c or c - b gives
    // cost 1 + 1 + 0 = 2; dropping s - a or s - b routes everything round: 4 + 1 + 1.
    const DistributionNetwork net({"s", "a", "b", "c"}, {2, -1, -1, 0}, {{0, 1, 1}, {1, 3, 1}, {3, 2, 1}, {2, 0, 1}});
    const auto result = enumerate_optimal(net);
    EXPECT_EQ(result.feasible_count, 4u);
    EXPECT_DOUBLE_EQ(result.optimal_cost, 2.0);
    ASSERT_TRUE(result.optimum);
    const auto report = validate_radial(net, *result.optimum);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.zero_flow_edges.size(), 1u);
}

TEST(Oracle, CountsMultiComponentForests) {
    // Two separate source-sink pairs joined by a tie. The tie carries no
    // flow, so the two-tree forest and the spanning tree tie at cost 2.
    const DistributionNetwork net({"s1", "t1", "s2", "t2"}, {1, -1, 1, -1}, {{0, 1, 1}, {2, 3, 1}, {1, 2, 10}});
    const auto result = enumerate_optimal(net);
    EXPECT_EQ(result.feasible_count, 2u);
    EXPECT_DOUBLE_EQ(result.optimal_cost, 2.0);
}

TEST(Oracle, TooLarge) {
    const auto net = generate(fixtures::sweep_spec(30, 1));
    EXPECT_THROW(enumerate_optimal(net), TooLarge);
    EXPECT_THROW(enumerate_optimal(fixtures::fig2(), {.max_nodes = 5, .max_edges = 18}), TooLarge);
    EXPECT_THROW(enumerate_optimal(fixtures::fig2(), {.max_nodes = 12, .max_edges = 5}), TooLarge);
}

TEST(Oracle, OptimaValidateAndBoundForward) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto net = fixtures::random_network(1000 + seed, {.min_nodes = 3, .max_nodes = 8, .max_edges = 14});
        const auto result = enumerate_optimal(net);
        ASSERT_TRUE(result.optimum) << "seed " << seed;
        EXPECT_TRUE(validate_radial(net, *result.optimum).ok());
        const auto forward = solve(net);
        EXPECT_GE(forward.report.cost, result.optimal_cost - 1e-9);
    }
}
