#ifndef FORWARD_ISLANDER_HPP
#define FORWARD_ISLANDER_HPP

#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "subgraph.hpp"

namespace forward {

/// One island: a subgraph with its own balanced injection vector p^l.
struct PartitionView {
    std::size_t index = 0;
    SubGraph graph;
    /// Full-length vector; entries off graph.nodes are zero.
    InjectionState injections;
    /// {i : p^l_i > 0}.
    std::vector<NodeId> sources;
    /// Articulation sources this partition shares with others.
    std::vector<NodeId> replicas;
};

struct IslanderResult {
    std::vector<PartitionView> partitions;
    /// Articulation source -> indices of the partitions holding a copy of it.
    std::map<NodeId, std::vector<std::size_t>> replicated_nodes;
};

/// Sources whose removal disconnects `graph`.
inline std::vector<NodeId> find_articulation_sources(const DistributionNetwork &net, const SubGraph &graph,
                                                     const std::vector<NodeId> &sources) {
    std::vector<NodeId> cuts = articulation_points(net, graph);
    std::vector<char> is_source(net.node_count(), 0);
    for (NodeId s : sources)
        is_source[s] = 1;
    std::vector<NodeId> out;
    for (NodeId v : cuts)
        if (is_source[v])
            out.push_back(v);
    return out;
}

namespace detail {

// Edges end up in the same partition when they share a block, or are joined
// through a node that is not a splitting node. The block rule matters for an
// edge running directly between two splitting nodes.
inline std::vector<std::vector<EdgeId>> split_edges(const DistributionNetwork &net, const SubGraph &graph,
                                                    const std::vector<char> &splits) {
    SubGraphAdjacency adj(net, graph);
    std::unordered_map<EdgeId, std::size_t> local;
    for (std::size_t k = 0; k < graph.edges.size(); ++k)
        local.emplace(graph.edges[k], k);
    UnionFind uf(graph.edges.size());
    for (const auto &block : biconnected_blocks(net, graph))
        for (std::size_t k = 1; k < block.size(); ++k)
            uf.unite(local.at(block[0]), local.at(block[k]));
    for (NodeId v : graph.nodes) {
        if (splits[v])
            continue;
        const auto &inc = adj.incident(v);
        for (std::size_t k = 1; k < inc.size(); ++k)
            uf.unite(local.at(inc[0].edge), local.at(inc[k].edge));
    }
    // Classes are numbered by their smallest edge id, which keeps partition order stable.
    std::vector<std::vector<EdgeId>> classes;
    std::unordered_map<std::size_t, std::size_t> class_of_root;
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        auto [it, fresh] = class_of_root.emplace(uf.find(k), classes.size());
        if (fresh)
            classes.emplace_back();
        classes[it->second].push_back(graph.edges[k]);
    }
    return classes;
}

} // namespace detail

/**
 * Splits `graph` at every articulation source.
 *
 * Each articulation source a is copied into every partition it touches. In
 * partition l its injection becomes p_a^l = -(sum of p over every node lying
 * on l's side of a), i.e. exactly what a must push into (or draw from) that
 * side. This is the only assignment under which every partition balances,
 * and the copies of a sum back to p_a.
 */
inline IslanderResult islander(const DistributionNetwork &net, const SubGraph &graph,
                               const std::vector<NodeId> &sources, const InjectionState &p) {
    IslanderResult result;
    if (graph.empty())
        return result;

    const std::size_t n = net.node_count();
    const std::vector<NodeId> cuts = find_articulation_sources(net, graph, sources);
    std::vector<char> is_cut(n, 0);
    for (NodeId a : cuts)
        is_cut[a] = 1;

    const auto classes = detail::split_edges(net, graph, is_cut);
    const std::size_t L = classes.size();
    for (std::size_t l = 0; l < L; ++l) {
        PartitionView part;
        part.index = l;
        part.graph = SubGraph::from_edges(net, classes[l]);
        part.injections.values.assign(n, 0.0);
        for (NodeId v : part.graph.nodes) {
            if (is_cut[v]) {
                part.replicas.push_back(v);
                result.replicated_nodes[v].push_back(l);
            } else {
                part.injections[v] = p[v];
            }
        }
        result.partitions.push_back(std::move(part));
    }

    if (!cuts.empty()) {
        // Block-cut tree: vertices 0..L-1 are partitions, L.. are articulation sources.
        std::unordered_map<NodeId, std::size_t> cut_index;
        for (std::size_t k = 0; k < cuts.size(); ++k)
            cut_index.emplace(cuts[k], L + k);
        const std::size_t T = L + cuts.size();
        std::vector<std::vector<std::size_t>> tree(T);
        std::vector<double> own(T, 0.0);
        for (std::size_t l = 0; l < L; ++l) {
            for (NodeId v : result.partitions[l].graph.nodes) {
                if (is_cut[v]) {
                    tree[l].push_back(cut_index.at(v));
                    tree[cut_index.at(v)].push_back(l);
                } else {
                    own[l] += p[v];
                }
            }
        }
        for (std::size_t k = 0; k < cuts.size(); ++k)
            own[L + k] = p[cuts[k]];

        // One rooted tree per connected component of the input.
        std::vector<std::size_t> parent(T, T), root_of(T, T), order;
        order.reserve(T);
        for (std::size_t r = 0; r < L; ++r) {
            if (root_of[r] != T)
                continue;
            std::vector<std::size_t> stack{r};
            root_of[r] = r;
            while (!stack.empty()) {
                const std::size_t x = stack.back();
                stack.pop_back();
                order.push_back(x);
                for (std::size_t y : tree[x]) {
                    if (root_of[y] == T) {
                        root_of[y] = r;
                        parent[y] = x;
                        stack.push_back(y);
                    }
                }
            }
        }
        std::vector<double> subtree(own);
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (parent[*it] != T)
                subtree[parent[*it]] += subtree[*it];

        for (std::size_t l = 0; l < L; ++l) {
            for (NodeId a : result.partitions[l].replicas) {
                const std::size_t x = cut_index.at(a);
                const double total = subtree[root_of[l]];
                // l below a: l's side is l's subtree. Otherwise it is everything outside a's subtree.
                const double side = parent[l] == x ? subtree[l] : total - subtree[x];
                result.partitions[l].injections[a] = -side;
            }
        }

        const double eps = net.balance_tolerance();
        for (const auto &[a, parts] : result.replicated_nodes) {
            double sum = 0.0;
            for (std::size_t l : parts)
                sum += result.partitions[l].injections[a];
            if (std::abs(sum - p[a]) > eps) {
                std::ostringstream msg;
                msg << "islander: copies of '" << net.name(a) << "' sum to " << sum << ", expected " << p[a];
                throw InfeasibleSplit(msg.str());
            }
        }
    }

    for (PartitionView &part : result.partitions)
        for (NodeId v : part.graph.nodes)
            if (part.injections[v] > 0.0)
                part.sources.push_back(v);
    return result;
}

} // namespace forward

#endif // FORWARD_ISLANDER_HPP
