#ifndef FORWARD_SUBGRAPH_HPP
#define FORWARD_SUBGRAPH_HPP

#include <algorithm>
#include <vector>

#include "network.hpp"

namespace forward {

/// A node/edge subset of a parent network, in parent ids (both lists sorted).
struct SubGraph {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;

    bool empty() const noexcept { return nodes.empty(); }

    static SubGraph whole(const DistributionNetwork &net) {
        SubGraph g;
        g.nodes.resize(net.node_count());
        g.edges.resize(net.edge_count());
        for (NodeId v = 0; v < net.node_count(); ++v)
            g.nodes[v] = v;
        for (EdgeId e = 0; e < net.edge_count(); ++e)
            g.edges[e] = e;
        return g;
    }

    /// Subgraph induced by an edge list; nodes are the edge endpoints.
    static SubGraph from_edges(const DistributionNetwork &net, std::vector<EdgeId> edges) {
        SubGraph g;
        std::sort(edges.begin(), edges.end());
        for (EdgeId e : edges) {
            g.nodes.push_back(net.edge(e).u);
            g.nodes.push_back(net.edge(e).v);
        }
        std::sort(g.nodes.begin(), g.nodes.end());
        g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
        g.edges = std::move(edges);
        return g;
    }
};

/// Adjacency of a SubGraph, indexed by parent node id.
class SubGraphAdjacency {
  public:
    SubGraphAdjacency(const DistributionNetwork &net, const SubGraph &g) : lists_(net.node_count()) {
        for (EdgeId e : g.edges) {
            const Edge &ed = net.edge(e);
            lists_[ed.u].push_back({ed.v, e});
            lists_[ed.v].push_back({ed.u, e});
        }
    }

    const std::vector<Incidence> &incident(NodeId v) const { return lists_[v]; }
    std::size_t degree(NodeId v) const { return lists_[v].size(); }
    const std::vector<std::vector<Incidence>> &lists() const noexcept { return lists_; }

  private:
    std::vector<std::vector<Incidence>> lists_;
};

namespace detail {

// Iterative low-link over an adjacency list; parallel edges are told apart
// by edge id, so a doubled edge never makes its endpoints cut vertices.
inline std::vector<char> cut_vertices(const std::vector<std::vector<Incidence>> &adj,
                                      const std::vector<NodeId> &vertices) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> disc(n, 0), low(n, 0);
    std::vector<char> is_cut(n, 0);
    std::size_t timer = 0;

    struct Frame {
        NodeId v;
        EdgeId via;
        std::size_t next;
    };

    for (NodeId root : vertices) {
        if (disc[root] != 0)
            continue;
        std::size_t root_children = 0;
        std::vector<Frame> stack{{root, kNoEdge, 0}};
        disc[root] = low[root] = ++timer;
        while (!stack.empty()) {
            Frame &f = stack.back();
            const auto &inc = adj[f.v];
            if (f.next < inc.size()) {
                const Incidence in = inc[f.next++];
                if (in.edge == f.via)
                    continue;
                if (disc[in.neighbor] == 0) {
                    disc[in.neighbor] = low[in.neighbor] = ++timer;
                    if (f.v == root)
                        ++root_children;
                    stack.push_back({in.neighbor, in.edge, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[in.neighbor]);
                }
            } else {
                const NodeId child = f.v;
                stack.pop_back();
                if (stack.empty())
                    break;
                const NodeId parent = stack.back().v;
                low[parent] = std::min(low[parent], low[child]);
                if (parent != root && low[child] >= disc[parent])
                    is_cut[parent] = 1;
            }
        }
        if (root_children > 1)
            is_cut[root] = 1;
    }
    return is_cut;
}

} // namespace detail

/// Articulation points of a subgraph, sorted.
inline std::vector<NodeId> articulation_points(const DistributionNetwork &net, const SubGraph &g) {
    SubGraphAdjacency adj(net, g);
    const auto is_cut = detail::cut_vertices(adj.lists(), g.nodes);
    std::vector<NodeId> out;
    for (NodeId v : g.nodes)
        if (is_cut[v])
            out.push_back(v);
    return out;
}

/// Biconnected blocks of a subgraph as edge lists. A bridge is a block of its own.
inline std::vector<std::vector<EdgeId>> biconnected_blocks(const DistributionNetwork &net, const SubGraph &g) {
    SubGraphAdjacency adj(net, g);
    const std::size_t n = net.node_count();
    std::vector<std::size_t> disc(n, 0), low(n, 0);
    std::vector<std::vector<EdgeId>> blocks;
    std::vector<EdgeId> edge_stack;
    std::size_t timer = 0;

    struct Frame {
        NodeId v;
        EdgeId via;
        std::size_t next;
    };

    for (NodeId root : g.nodes) {
        if (disc[root] != 0)
            continue;
        std::vector<Frame> stack{{root, kNoEdge, 0}};
        disc[root] = low[root] = ++timer;
        while (!stack.empty()) {
            Frame &f = stack.back();
            const auto &inc = adj.incident(f.v);
            if (f.next < inc.size()) {
                const Incidence in = inc[f.next++];
                if (in.edge == f.via)
                    continue;
                if (disc[in.neighbor] == 0) {
                    edge_stack.push_back(in.edge);
                    disc[in.neighbor] = low[in.neighbor] = ++timer;
                    stack.push_back({in.neighbor, in.edge, 0});
                } else if (disc[in.neighbor] < disc[f.v]) {
                    edge_stack.push_back(in.edge);
                    low[f.v] = std::min(low[f.v], disc[in.neighbor]);
                }
            } else {
                const NodeId child = f.v;
                const EdgeId via = f.via;
                stack.pop_back();
                if (stack.empty())
                    break;
                const NodeId parent = stack.back().v;
                low[parent] = std::min(low[parent], low[child]);
                if (low[child] >= disc[parent]) {
                    auto &b = blocks.emplace_back();
                    EdgeId e;
                    do {
                        e = edge_stack.back();
                        edge_stack.pop_back();
                        b.push_back(e);
                    } while (e != via);
                    std::sort(b.begin(), b.end());
                }
            }
        }
    }
    return blocks;
}

} // namespace forward

#endif // FORWARD_SUBGRAPH_HPP
