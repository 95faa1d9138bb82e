#ifndef FORWARD_ORACLE_HPP
#define FORWARD_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "tree_flow.hpp"

namespace forward {

struct OracleLimits {
    std::size_t max_nodes = 12;
    std::size_t max_edges = 18;
};

struct OracleResult {
    std::optional<RadialConfiguration> optimum;
    double optimal_cost = std::numeric_limits<double>::infinity();
    std::size_t feasible_count = 0;
    /// Acyclic edge subsets examined.
    std::size_t enumerated_count = 0;
};

namespace detail {

// Every forest component needs a source and a balanced injection sum.
inline bool components_feasible(const DistributionNetwork &net, const RollbackUnionFind &uf) {
    const std::size_t n = net.node_count();
    std::vector<double> sum(n, 0.0);
    std::vector<char> has_source(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t r = uf.find(v);
        sum[r] += net.injection(v);
        if (net.injection(v) > 0.0)
            has_source[r] = 1;
    }
    for (NodeId v = 0; v < n; ++v) {
        if (uf.find(v) != v)
            continue;
        if (!has_source[v] || std::abs(sum[v]) > net.balance_tolerance())
            return false;
    }
    return true;
}

} // namespace detail

/**
 * Exhaustive baseline. Walks every acyclic edge subset (include/exclude
 * recursion, union-find rejects cycle-closing edges), keeps the forests whose
 * components each hold a source and balance, solves their unique flows, and
 * returns the cheapest. Ties keep the first subset found.
 */
inline OracleResult enumerate_optimal(const DistributionNetwork &net, OracleLimits limits = {}) {
    if (net.node_count() > limits.max_nodes || net.edge_count() > limits.max_edges)
        throw TooLarge("oracle: network has " + std::to_string(net.node_count()) + " nodes and " +
                       std::to_string(net.edge_count()) + " edges; limits are " +
                       std::to_string(limits.max_nodes) + " and " + std::to_string(limits.max_edges));

    OracleResult result;
    const std::size_t m = net.edge_count();
    detail::RollbackUnionFind uf(net.node_count());
    std::vector<EdgeId> chosen;

    auto visit = [&](auto &&self, EdgeId e) -> void {
        if (e == m) {
            ++result.enumerated_count;
            if (!detail::components_feasible(net, uf))
                return;
            ForestFlowSolution flow = solve_forest(net, chosen, net.injections());
            ++result.feasible_count;
            if (flow.cost < result.optimal_cost) {
                result.optimal_cost = flow.cost;
                result.optimum = flow.configuration();
            }
            return;
        }
        const Edge &ed = net.edge(e);
        if (uf.unite(ed.u, ed.v)) {
            chosen.push_back(e);
            self(self, e + 1);
            chosen.pop_back();
            uf.rollback();
        }
        self(self, e + 1);
    };
    visit(visit, 0);
    return result;
}

/// Kruskal on the cost coefficients (ties by edge id), with the tree's unique flow.
inline RadialConfiguration mst_configuration(const DistributionNetwork &net) {
    std::vector<EdgeId> order(net.edge_count());
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeId a, EdgeId b) { return net.edge(a).cost < net.edge(b).cost; });
    detail::UnionFind uf(net.node_count());
    std::vector<EdgeId> tree;
    for (EdgeId e : order)
        if (uf.unite(net.edge(e).u, net.edge(e).v))
            tree.push_back(e);
    std::sort(tree.begin(), tree.end());
    return solve_forest(net, tree, net.injections()).configuration();
}

} // namespace forward

#endif // FORWARD_ORACLE_HPP
