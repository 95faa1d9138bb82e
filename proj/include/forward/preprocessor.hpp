#ifndef FORWARD_PREPROCESSOR_HPP
#define FORWARD_PREPROCESSOR_HPP

#include <functional>
#include <queue>

#include "subgraph.hpp"

namespace forward {

struct PreprocessResult {
    /// Forced edges S0, in removal order.
    std::vector<DirectedEdge> presampled;
    /// G_P: what is left once no pendant node remains. Empty when the input was a tree.
    SubGraph reduced_graph;
    /// Injections with every removed pendant folded into its parent; zero off G_P.
    InjectionState reduced_injections;
};

/**
 * Strips pendant nodes until none remain.
 *
 * The smallest-id pendant node i is removed first; its edge (i, j) is
 * oriented i -> j when p_i >= 0 and j -> i otherwise, then p_j += p_i.
 * Removal can turn j into a pendant node, which is queued in turn.
 */
inline PreprocessResult preprocess(const DistributionNetwork &net, const SubGraph &graph, InjectionState p) {
    const std::size_t n = net.node_count();
    SubGraphAdjacency adj(net, graph);
    std::vector<std::size_t> degree(n, 0);
    std::vector<char> alive_edge(net.edge_count(), 0);
    for (EdgeId e : graph.edges)
        alive_edge[e] = 1;

    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> pendants;
    for (NodeId v : graph.nodes) {
        degree[v] = adj.degree(v);
        if (degree[v] == 1)
            pendants.push(v);
    }

    PreprocessResult out;
    while (!pendants.empty()) {
        const NodeId i = pendants.top();
        pendants.pop();
        if (degree[i] != 1)
            continue;
        Incidence link{kNoNode, kNoEdge};
        for (const Incidence &in : adj.incident(i)) {
            if (alive_edge[in.edge]) {
                link = in;
                break;
            }
        }
        const NodeId j = link.neighbor;
        if (p[i] >= 0.0)
            out.presampled.push_back({i, j, link.edge});
        else
            out.presampled.push_back({j, i, link.edge});
        p[j] += p[i];
        p[i] = 0.0;
        alive_edge[link.edge] = 0;
        degree[i] = 0;
        if (--degree[j] == 1)
            pendants.push(j);
    }

    for (NodeId v : graph.nodes)
        if (degree[v] > 0)
            out.reduced_graph.nodes.push_back(v);
    for (EdgeId e : graph.edges)
        if (alive_edge[e])
            out.reduced_graph.edges.push_back(e);
    // A tree collapses onto a single node holding the (balanced) total.
    for (NodeId v : graph.nodes)
        if (degree[v] == 0)
            p[v] = 0.0;
    out.reduced_injections = std::move(p);
    return out;
}

inline PreprocessResult preprocess(const DistributionNetwork &net, const InjectionState &p0) {
    return preprocess(net, SubGraph::whole(net), p0);
}

} // namespace forward

#endif // FORWARD_PREPROCESSOR_HPP
