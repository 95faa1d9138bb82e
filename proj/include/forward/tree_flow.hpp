#ifndef FORWARD_TREE_FLOW_HPP
#define FORWARD_TREE_FLOW_HPP

#include <cmath>
#include <functional>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "network.hpp"

namespace forward {

/// Unique flow on a forest, one entry per input edge (same order).
struct ForestFlowSolution {
    std::vector<DirectedEdge> oriented_edges;
    std::vector<double> flows;
    double cost = 0.0;
    /// Last node eliminated in each tree component.
    std::vector<NodeId> component_roots;
    /// Edges whose flow is within kFlowTolerance of zero; their orientation is arbitrary.
    std::vector<EdgeId> zero_flow_edges;

    RadialConfiguration configuration() const { return {oriented_edges, flows, cost}; }
};

struct EdgeFlow {
    EdgeId edge;
    double flow;
};

/// Sum of C * x^2 over the given edges.
inline double evaluate_cost(const DistributionNetwork &net, std::span<const EdgeFlow> flows) {
    double cost = 0.0;
    for (const EdgeFlow &f : flows) {
        if (f.edge >= net.edge_count())
            throw UnknownEdge("evaluate_cost: edge id " + std::to_string(f.edge) + " is not in the network");
        cost += net.edge(f.edge).cost * f.flow * f.flow;
    }
    return cost;
}

/**
 * Solves A(S) x = p on a forest by leaf elimination.
 *
 * Leaves are peeled in ascending node id; each leaf pushes its accumulated
 * injection to its neighbour, fixing the flow (and orientation) of the
 * connecting edge. Every edge comes out oriented so that its flow is >= 0.
 * Only nodes touched by `forest_edges` are considered; each of their tree
 * components must balance within the network's eps_balance.
 */
inline ForestFlowSolution solve_forest(const DistributionNetwork &net, std::span<const EdgeId> forest_edges,
                                       std::span<const double> p) {
    const std::size_t n = net.node_count();
    if (p.size() != n)
        throw DimensionMismatch("solve_forest: injection vector has wrong length");

    detail::UnionFind uf(n);
    for (EdgeId e : forest_edges) {
        if (e >= net.edge_count())
            throw UnknownEdge("solve_forest: edge id " + std::to_string(e) + " is not in the network");
        const Edge &ed = net.edge(e);
        if (!uf.unite(ed.u, ed.v))
            throw CycleError("solve_forest: edge (" + net.name(ed.u) + "," + net.name(ed.v) +
                             ") closes a cycle");
    }

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t k = 0; k < forest_edges.size(); ++k) {
        const Edge &ed = net.edge(forest_edges[k]);
        incident[ed.u].push_back(k);
        incident[ed.v].push_back(k);
    }

    ForestFlowSolution sol;
    sol.oriented_edges.resize(forest_edges.size());
    sol.flows.assign(forest_edges.size(), 0.0);

    std::vector<double> sub(p.begin(), p.end());
    std::vector<std::size_t> degree(n, 0);
    std::vector<char> removed(forest_edges.size(), 0);
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
    for (NodeId v = 0; v < n; ++v) {
        degree[v] = incident[v].size();
        if (degree[v] == 1)
            leaves.push(v);
    }

    const double eps = net.balance_tolerance();
    auto close_component = [&](NodeId root) {
        if (std::abs(sub[root]) > eps) {
            std::ostringstream msg;
            msg << "solve_forest: tree containing '" << net.name(root) << "' is imbalanced by " << sub[root];
            throw ImbalanceError(msg.str());
        }
        sol.component_roots.push_back(root);
    };

    while (!leaves.empty()) {
        const NodeId leaf = leaves.top();
        leaves.pop();
        if (degree[leaf] != 1)
            continue;
        std::size_t k = 0;
        for (std::size_t cand : incident[leaf]) {
            if (!removed[cand]) {
                k = cand;
                break;
            }
        }
        const EdgeId e = forest_edges[k];
        const NodeId parent = net.edge(e).other(leaf);
        const double push = sub[leaf];
        if (push >= 0.0) {
            sol.oriented_edges[k] = {leaf, parent, e};
            sol.flows[k] = push;
        } else {
            sol.oriented_edges[k] = {parent, leaf, e};
            sol.flows[k] = -push;
        }
        if (sol.flows[k] <= kFlowTolerance)
            sol.zero_flow_edges.push_back(e);
        sub[parent] += push;
        sub[leaf] = 0.0;
        removed[k] = 1;
        degree[leaf] = 0;
        if (--degree[parent] == 1)
            leaves.push(parent);
        else if (degree[parent] == 0)
            close_component(parent);
    }

    for (std::size_t k = 0; k < forest_edges.size(); ++k)
        sol.cost += net.edge(forest_edges[k]).cost * sol.flows[k] * sol.flows[k];
    return sol;
}

inline ForestFlowSolution solve_forest(const DistributionNetwork &net, std::span<const EdgeId> forest_edges,
                                       const InjectionState &p) {
    return solve_forest(net, forest_edges, std::span<const double>(p.values));
}

} // namespace forward

#endif // FORWARD_TREE_FLOW_HPP
