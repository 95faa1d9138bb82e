#ifndef FORWARD_SAMPLER_HPP
#define FORWARD_SAMPLER_HPP

#include <algorithm>
#include <cmath>
#include <tuple>

#include "condenser.hpp"

namespace forward {

/// One grown polytree. `anchor` is the source it started from and holds the
/// tree's share of p^t; the other members are zero in p^t.
struct Polytree {
    NodeId anchor = kNoNode;
    std::vector<NodeId> members;
    /// Sum of p^l over members.
    double residual = 0.0;
    bool alive = true;
};

/// The sampled edge set S^l of one partition together with its tree structure.
struct Polyforest {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<DirectedEdge> edges;
    std::vector<Polytree> trees;
    /// Parent node id -> index into trees, npos while uncovered.
    std::vector<std::size_t> tree_of;
    /// Parent edge id -> out of the candidate pool (sampled, or removed by edge-delete).
    std::vector<char> deleted;

    Polyforest() = default;
    Polyforest(std::size_t node_count, std::size_t edge_count)
        : tree_of(node_count, npos), deleted(edge_count, 0) {}

    bool covered(NodeId v) const { return tree_of[v] != npos; }

    std::vector<std::vector<NodeId>> member_sets() const {
        std::vector<std::vector<NodeId>> out;
        for (const Polytree &t : trees)
            if (t.alive)
                out.push_back(t.members);
        return out;
    }

    double positive_residual() const {
        double total = 0.0;
        for (const Polytree &t : trees)
            if (t.alive)
                total += std::max(t.residual, 0.0);
        return total;
    }
};

/// h~: accumulated cost estimate along the sampled path from a polytree root.
struct PathCostAccumulator {
    std::vector<double> h;

    PathCostAccumulator() = default;
    explicit PathCostAccumulator(std::size_t node_count) : h(node_count, 0.0) {}

    double operator[](NodeId v) const { return h[v]; }
    double &operator[](NodeId v) { return h[v]; }
};

struct CandidateEdge {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    EdgeId edge = kNoEdge;
    double raw_weight = 0.0;
    /// raw_weight normalised over the candidate set.
    double weight = 0.0;
    /// |residual| of the super node holding the head.
    double head_demand = 0.0;
    bool balance_ok = false;
    bool pendant_source = false;
    bool zero_denominator = false;
};

/// w = p_i / (C * d_j^2 + h~ + eps_den).
inline double edge_weight(double cost_coeff, double demand_j, double supply_residual_i, double h_path) {
    return supply_residual_i / (cost_coeff * demand_j * demand_j + h_path + kWeightDenominatorGuard);
}

/// Normalises weights, then orders the queue: pendant sources first, then
/// balance-feasible edges, then zero-denominator edges, then by descending
/// weight; ties fall back to (tail, head) ascending.
inline void rank_candidates(std::vector<CandidateEdge> &candidates) {
    double total = 0.0;
    for (const CandidateEdge &c : candidates)
        total += c.raw_weight;
    for (CandidateEdge &c : candidates)
        c.weight = total > 0.0 ? c.raw_weight / total : 1.0 / static_cast<double>(candidates.size());
    std::sort(candidates.begin(), candidates.end(), [](const CandidateEdge &a, const CandidateEdge &b) {
        return std::tuple(!a.pendant_source, !a.balance_ok, !a.zero_denominator, -a.weight, a.tail, a.head) <
               std::tuple(!b.pendant_source, !b.balance_ok, !b.zero_denominator, -b.weight, b.tail, b.head);
    });
}

struct SampleChoice {
    CandidateEdge chosen;
    /// Edges removed by edge-delete in this call.
    std::vector<EdgeId> deleted;
    std::size_t candidate_count = 0;
    /// Every polytree was already balanced; a leftover zero-injection node was attached.
    bool fallback = false;

    DirectedEdge directed() const { return {chosen.tail, chosen.head, chosen.edge}; }
};

/**
 * Picks the next edge of the growing polyforest.
 *
 * Edge-delete runs first: every live edge with both endpoints in the same
 * polytree is dropped. Candidates run from a polytree with residual above
 * `tolerance` to a node in a sink super node: either an uncovered node or a
 * node of an exhausted polytree (which the edge then absorbs). Adding a
 * candidate therefore always joins two different components.
 */
inline SampleChoice sample(const DistributionNetwork &net, const SubGraph &graph, const CondensedView &view,
                           const Polyforest &forest, const PathCostAccumulator &h, double tolerance) {
    constexpr std::size_t npos = Polyforest::npos;
    SampleChoice out;

    for (EdgeId e : graph.edges) {
        if (forest.deleted[e])
            continue;
        const std::size_t a = forest.tree_of[net.edge(e).u], b = forest.tree_of[net.edge(e).v];
        if (a != npos && a == b)
            out.deleted.push_back(e);
    }
    std::sort(out.deleted.begin(), out.deleted.end());
    auto is_deleted = [&](EdgeId e) {
        return forest.deleted[e] || std::binary_search(out.deleted.begin(), out.deleted.end(), e);
    };

    const auto neighbours = view.neighbour_counts();
    std::vector<CandidateEdge> candidates;
    for (EdgeId e : graph.edges) {
        if (is_deleted(e))
            continue;
        const Edge &ed = net.edge(e);
        for (auto [i, j] : {std::pair(ed.u, ed.v), std::pair(ed.v, ed.u)}) {
            const std::size_t t = forest.tree_of[i];
            if (t == npos)
                continue;
            const Polytree &tree = forest.trees[t];
            if (!(tree.residual > tolerance))
                continue;
            const SuperNode &target = view.super_of(j);
            if (target.kind != SuperKind::sink)
                continue;
            CandidateEdge c;
            c.tail = i;
            c.head = j;
            c.edge = e;
            c.head_demand = std::abs(target.residual);
            const double denominator = ed.cost * c.head_demand * c.head_demand + h[i];
            c.zero_denominator = denominator == 0.0;
            c.raw_weight = edge_weight(ed.cost, c.head_demand, tree.residual, h[i]);
            c.balance_ok = tree.residual + target.residual >= -tolerance;
            c.pendant_source = neighbours[view.membership[i]] == 1;
            candidates.push_back(c);
        }
    }

    if (candidates.empty()) {
        // Only reachable once every polytree is balanced: attach the remaining
        // zero-injection nodes with zero flow.
        for (EdgeId e : graph.edges) {
            if (is_deleted(e))
                continue;
            const Edge &ed = net.edge(e);
            for (auto [i, j] : {std::pair(ed.u, ed.v), std::pair(ed.v, ed.u)}) {
                if (forest.tree_of[i] == npos || forest.tree_of[j] != npos)
                    continue;
                CandidateEdge c;
                c.tail = i;
                c.head = j;
                c.edge = e;
                c.head_demand = std::abs(view.super_of(j).residual);
                c.raw_weight = edge_weight(ed.cost, c.head_demand, 1.0, h[i]);
                c.balance_ok = true;
                candidates.push_back(c);
            }
        }
        out.fallback = true;
    }

    if (candidates.empty())
        throw NoCandidate("sampler: no frontier edge while the partition is not yet spanned and balanced");

    rank_candidates(candidates);
    out.candidate_count = candidates.size();
    out.chosen = candidates.front();
    return out;
}

} // namespace forward

#endif // FORWARD_SAMPLER_HPP
