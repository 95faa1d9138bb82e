#ifndef FORWARD_CONDENSER_HPP
#define FORWARD_CONDENSER_HPP

#include <algorithm>
#include <numeric>

#include "islander.hpp"

namespace forward {

enum class SuperKind { source, sink };

struct SuperNode {
    std::vector<NodeId> members;
    /// Sum of p^t over members.
    double residual = 0.0;
    SuperKind kind = SuperKind::sink;
};

/// An original edge joining two different super nodes.
struct SuperEdge {
    std::size_t a;
    std::size_t b;
    EdgeId edge;
};

/// Quotient of a partition: grown polytrees and positive nodes collapse into
/// super-sources, connected sink regions into super-sinks.
struct CondensedView {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<SuperNode> super_nodes;
    std::vector<SuperEdge> super_edges;
    /// Parent node id -> super node index (npos off the partition).
    std::vector<std::size_t> membership;
    std::size_t internal_edge_count = 0;

    const SuperNode &super_of(NodeId v) const { return super_nodes[membership[v]]; }

    /// Number of distinct super nodes adjacent to super node s.
    std::size_t neighbour_count(std::size_t s) const {
        std::vector<std::size_t> seen;
        for (const SuperEdge &e : super_edges) {
            if (e.a == s)
                seen.push_back(e.b);
            else if (e.b == s)
                seen.push_back(e.a);
        }
        std::sort(seen.begin(), seen.end());
        return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }

    std::vector<std::size_t> neighbour_counts() const {
        std::vector<std::vector<std::size_t>> adj(super_nodes.size());
        for (const SuperEdge &e : super_edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        std::vector<std::size_t> out(super_nodes.size());
        for (std::size_t s = 0; s < adj.size(); ++s) {
            std::sort(adj[s].begin(), adj[s].end());
            out[s] = static_cast<std::size_t>(std::unique(adj[s].begin(), adj[s].end()) - adj[s].begin());
        }
        return out;
    }
};

/**
 * Net-Concad. Every polytree is one unit whose role is the sign of its
 * summed p^t; every other node is a unit of its own sign. A unit is a source
 * when its value exceeds `role_tolerance`, otherwise a sink (ties go to
 * sinks). Connected same-role units are merged into super nodes.
 */
inline CondensedView net_concad(const DistributionNetwork &net, const SubGraph &graph,
                                const std::vector<std::vector<NodeId>> &polytrees, const InjectionState &p,
                                double role_tolerance = 0.0) {
    const std::size_t n = net.node_count();
    constexpr std::size_t npos = CondensedView::npos;

    std::vector<std::size_t> unit(n, npos);
    std::vector<double> unit_value;
    for (const auto &tree : polytrees) {
        double sum = 0.0;
        for (NodeId v : tree) {
            unit[v] = unit_value.size();
            sum += p[v];
        }
        unit_value.push_back(sum);
    }
    for (NodeId v : graph.nodes) {
        if (unit[v] == npos) {
            unit[v] = unit_value.size();
            unit_value.push_back(p[v]);
        }
    }
    std::vector<char> positive(unit_value.size());
    for (std::size_t u = 0; u < unit_value.size(); ++u)
        positive[u] = unit_value[u] > role_tolerance;

    detail::UnionFind uf(unit_value.size());
    for (EdgeId e : graph.edges) {
        const std::size_t a = unit[net.edge(e).u], b = unit[net.edge(e).v];
        if (positive[a] == positive[b])
            uf.unite(a, b);
    }

    CondensedView view;
    view.membership.assign(n, npos);
    std::vector<std::size_t> super_of_root(unit_value.size(), npos);
    for (NodeId v : graph.nodes) {
        const std::size_t root = uf.find(unit[v]);
        if (super_of_root[root] == npos) {
            super_of_root[root] = view.super_nodes.size();
            SuperNode s;
            s.kind = positive[unit[v]] ? SuperKind::source : SuperKind::sink;
            view.super_nodes.push_back(std::move(s));
        }
        const std::size_t s = super_of_root[root];
        view.membership[v] = s;
        view.super_nodes[s].members.push_back(v);
        view.super_nodes[s].residual += p[v];
    }
    for (EdgeId e : graph.edges) {
        const std::size_t a = view.membership[net.edge(e).u], b = view.membership[net.edge(e).v];
        if (a == b)
            ++view.internal_edge_count;
        else
            view.super_edges.push_back({a, b, e});
    }
    return view;
}

inline CondensedView net_concad(const DistributionNetwork &net, const PartitionView &part,
                                const std::vector<std::vector<NodeId>> &polytrees, const InjectionState &p,
                                double role_tolerance = 0.0) {
    return net_concad(net, part.graph, polytrees, p, role_tolerance);
}

/// True iff no super-source is an articulation node of the condensed multigraph.
inline bool assert_irreducible(const CondensedView &view) {
    std::vector<std::vector<Incidence>> adj(view.super_nodes.size());
    for (std::size_t k = 0; k < view.super_edges.size(); ++k) {
        const SuperEdge &e = view.super_edges[k];
        adj[e.a].push_back({e.b, k});
        adj[e.b].push_back({e.a, k});
    }
    std::vector<NodeId> all(view.super_nodes.size());
    std::iota(all.begin(), all.end(), NodeId{0});
    const auto is_cut = detail::cut_vertices(adj, all);
    for (std::size_t s = 0; s < view.super_nodes.size(); ++s)
        if (is_cut[s] && view.super_nodes[s].kind == SuperKind::source)
            return false;
    return true;
}

} // namespace forward

#endif // FORWARD_CONDENSER_HPP
