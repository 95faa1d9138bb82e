#include <gtest/gtest.h>

#include "support.hpp"

using namespace forward;
using fixtures::id;

TEST(Engine, TreeNeedsNoSampling) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto net = fixtures::random_network(seed, {.min_nodes = 2, .max_nodes = 12, .tree = true});
        const auto result = solve(net);
        EXPECT_EQ(result.report.iterations, 0u);
        EXPECT_EQ(result.report.partitions, 0u);
        std::vector<EdgeId> all(net.edge_count());
        std::iota(all.begin(), all.end(), EdgeId{0});
        EXPECT_DOUBLE_EQ(result.report.cost, solve_forest(net, all, net.injections()).cost);
        EXPECT_TRUE(validate_radial(net, result.configuration).ok());
    }
}

TEST(Engine, Fig2WithinKnownBounds) {
    const auto net = fixtures::fig2();
    const auto result = solve(net);
    EXPECT_TRUE(validate_radial(net, result.configuration).ok());
    EXPECT_GE(result.report.cost, 47.0 - 1e-9);
    EXPECT_LE(result.report.cost, 81.0 + 1e-9);
    EXPECT_DOUBLE_EQ(result.report.cost, result.configuration.total_cost);
}

TEST(Engine, SingleEdgePartition) {
    const DistributionNetwork net({"s", "t"}, {1, -1}, {{0, 1, 2}});
    PartitionView part;
    part.graph = SubGraph::whole(net);
    part.injections = InjectionState::initial(net);
    part.sources = {0};
    EngineState state(net, part);
    const auto edges = run_partition(net, state);
    EXPECT_EQ(edges, (std::vector<DirectedEdge>{{0, 1, 0}}));
    EXPECT_EQ(state.iteration, 1u);
}

TEST(Engine, UnbalancedPartitionIsInfeasible) {
    const DistributionNetwork net({"s", "t", "u"}, {1, -1, 0}, {{0, 1, 1}, {1, 2, 1}});
    PartitionView part;
    part.index = 4;
    part.graph = SubGraph::whole(net);
    part.injections = InjectionState::initial(net);
    part.injections[1] = -2.0;
    part.sources = {0};
    EngineState state(net, part);
    try {
        run_partition(net, state);
        FAIL() << "expected Infeasible";
    } catch (const Infeasible &e) {
        EXPECT_EQ(e.partition(), 4u);
        EXPECT_LE(e.iteration(), 2u);
    }
}

TEST(Engine, TwoBlockReport) {
    const auto net = fixtures::two_block();
    const auto result = solve(net);
    EXPECT_EQ(result.report.presampled, 6u);
    EXPECT_EQ(result.report.partitions, 2u);
    // Two blocks of 5 nodes each: 4 + 4 sampled edges.
    EXPECT_EQ(result.report.iterations, 8u);
    EXPECT_EQ(result.configuration.edges.size(), 14u);
    EXPECT_TRUE(validate_radial(net, result.configuration).ok());
}

TEST(Engine, LoopInvariants) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto net = generate(fixtures::sweep_spec(90, 70 + seed));
        std::map<std::size_t, std::size_t> last_iteration;
        SolveOptions options;
        options.on_iteration = [&](const IterationEvent &ev) {
            // Monotone drain of the positive residual.
            EXPECT_LE(ev.positive_residual_after, ev.positive_residual_before + net.balance_tolerance());
            // The sampled set stays a forest.
            detail::UnionFind uf(net.node_count());
            for (const auto &d : ev.forest.edges)
                EXPECT_TRUE(uf.unite(d.tail, d.head));
            EXPECT_EQ(ev.forest.edges.size(), ev.iteration);
            // Polytree members are disjoint.
            std::vector<int> owner(net.node_count(), 0);
            for (const auto &t : ev.forest.trees)
                if (t.alive) {
                    for (NodeId v : t.members)
                        EXPECT_EQ(owner[v]++, 0);
                }
            last_iteration[ev.partition] = ev.iteration;
        };
        const auto result = solve(net, options);
        EXPECT_TRUE(validate_radial(net, result.configuration).ok());
        // One edge per iteration on top of the forced ones.
        EXPECT_EQ(result.configuration.edges.size(), result.report.presampled + result.report.iterations);
        std::size_t total = 0;
        for (auto [l, it] : last_iteration)
            total += it;
        EXPECT_EQ(total, result.report.iterations);
    }
}

TEST(Engine, DeterministicAcrossThreadCounts) {
    const auto net = generate(fixtures::sweep_spec(240, 11));
    SolveOptions one, many;
    many.threads = 4;
    const auto a = solve(net, one);
    const auto b = solve(net, one);
    const auto c = solve(net, many);
    EXPECT_EQ(a.configuration.edges, b.configuration.edges);
    EXPECT_EQ(a.configuration.flows, b.configuration.flows);
    EXPECT_EQ(a.configuration.edges, c.configuration.edges);
    EXPECT_EQ(a.report.cost, c.report.cost);
}

TEST(Engine, Ws120Baseline) {
    const auto net = generate(GenSpec{});
    const auto result = solve(net);
    const auto report = validate_radial(net, result.configuration);
    for (const auto &c : report.checks)
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    EXPECT_EQ(result.configuration.edges.size(), result.report.presampled + result.report.iterations);
    // Regression baseline recorded from the first run.
    constexpr double baseline = 715.69170552120784;
    EXPECT_NEAR(result.report.cost, baseline, 1e-9 * baseline);
}

TEST(Engine, ObserverIsSerialisedUnderThreads) {
    const auto net = generate(fixtures::sweep_spec(200, 5));
    SolveOptions options;
    options.threads = 3;
    std::size_t events = 0;
    options.on_iteration = [&](const IterationEvent &) { ++events; };
    const auto result = solve(net, options);
    EXPECT_EQ(events, result.report.iterations);
}

TEST(ComplexityProbe, Rows) {
    const auto rows = complexity_probe({30, 60}, 2);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 30u);
    EXPECT_EQ(rows[1].m, 120u);
    const auto tiny = complexity_probe({1}, 1);
    ASSERT_EQ(tiny.size(), 1u);
    EXPECT_EQ(tiny[0].median_iterations, 0u);
    EXPECT_EQ(tiny[0].m, 0u);
}

TEST(ComplexityProbe, FittedExponentOfExactPowerLaw) {
    std::vector<ProbeRow> rows;
    for (std::size_t n : {60, 120, 240, 480})
        rows.push_back({n, 2 * n, 1e-3 * static_cast<double>(n * n), 0.0, 0});
    EXPECT_NEAR(fitted_exponent(rows), 2.0, 1e-12);
}
