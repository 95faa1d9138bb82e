#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include <forward/forward.hpp>

namespace fixtures {

using namespace forward;

inline std::string data_path(const std::string &file) { return std::string(FORWARD_DATA_DIR) + "/" + file; }

/// One substation (s, +5) feeding five unit loads. The cheapest-coefficient
/// spanning tree costs 81, the optimal radial configuration 47.
inline DistributionNetwork fig2() { return load_network_file(data_path("fig2.json")); }

inline DistributionNetwork path3() {
    return DistributionNetwork({"a", "b", "c"}, {2.0, -1.0, -1.0}, {{0, 1, 1.0}, {1, 2, 1.0}});
}

/// 15 nodes named "1".."15". Two 2-connected blocks share node 1; pendant
/// chains hang off 8 (11), 9 (12-13) and 9 (3, which carries 14 and 15).
/// Sources: 1 (+3), 2 (+2), 9 (+7); every other node draws 1.
inline DistributionNetwork two_block() {
    std::vector<std::string> names;
    std::vector<double> p;
    for (int i = 1; i <= 15; ++i) {
        names.push_back(std::to_string(i));
        p.push_back(i == 1 ? 3.0 : i == 2 ? 2.0 : i == 9 ? 7.0 : -1.0);
    }
    auto e = [](int a, int b) { return Edge{static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1), 1.0}; };
    return DistributionNetwork(std::move(names), std::move(p),
                               {e(1, 4), e(4, 5), e(5, 6), e(6, 7), e(7, 1), e(1, 2), e(2, 8), e(8, 10), e(2, 10),
                                e(10, 9), e(9, 1), e(8, 11), e(9, 12), e(12, 13), e(9, 3), e(3, 14), e(3, 15)});
}

inline NodeId id(const DistributionNetwork &net, const std::string &name) { return *net.find_node(name); }

struct RandomNetworkOptions {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 10;
    std::size_t max_edges = 18;
    bool tree = false;
};

/// Connected random network: a random recursive tree plus extra chords,
/// one to three sources sharing the total demand.
inline DistributionNetwork random_network(std::uint64_t seed, RandomNetworkOptions opt = {}) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(opt.min_nodes, opt.max_nodes)(rng);
    std::uniform_real_distribution<double> cost(0.1, 5.0), demand(0.2, 2.0);
    std::vector<Edge> edges;
    std::set<std::pair<NodeId, NodeId>> used;
    for (NodeId v = 1; v < n; ++v) {
        const NodeId u = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
        edges.push_back({u, v, cost(rng)});
        used.insert({u, v});
    }
    if (!opt.tree) {
        const std::size_t cap = std::min(opt.max_edges, n * (n - 1) / 2);
        const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, cap - edges.size())(rng);
        std::uniform_int_distribution<NodeId> node(0, n - 1);
        for (std::size_t k = 0, tries = 0; k < extra && tries < 200; ++tries) {
            NodeId a = node(rng), b = node(rng);
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            if (!used.insert({a, b}).second)
                continue;
            edges.push_back({a, b, cost(rng)});
            ++k;
        }
    }
    const std::size_t sources = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, n - 1))(rng);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> p(n, 0.0);
    double total = 0.0;
    for (std::size_t k = sources; k < n; ++k) {
        p[order[k]] = -demand(rng);
        total -= p[order[k]];
    }
    for (std::size_t k = 0; k < sources; ++k)
        p[order[k]] = total / static_cast<double>(sources);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back("v" + std::to_string(v));
    return DistributionNetwork(std::move(names), std::move(p), std::move(edges));
}

/// Random forest over a random balanced injection (each tree sums to zero).
struct RandomForest {
    DistributionNetwork net;
    std::vector<EdgeId> forest;
};

inline RandomForest random_forest(std::uint64_t seed, std::size_t max_nodes = 50) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges;
    std::vector<EdgeId> forest;
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), std::size_t{0});
    for (NodeId v = 1; v < n; ++v) {
        const NodeId u = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
        // Roughly one edge in eight starts a new tree; the remaining edges
        // still connect the network so it validates.
        if (unit(rng) > 0.125) {
            forest.push_back(edges.size());
            comp[v] = comp[u];
        }
        edges.push_back({u, v, 0.1 + 4.9 * unit(rng)});
    }
    std::vector<double> p(n, 0.0);
    std::map<std::size_t, std::vector<NodeId>> members;
    for (NodeId v = 0; v < n; ++v)
        members[comp[v]].push_back(v);
    for (auto &[c, nodes] : members) {
        double sum = 0.0;
        for (std::size_t k = 1; k < nodes.size(); ++k) {
            p[nodes[k]] = -0.2 - 2.0 * unit(rng) + (unit(rng) < 0.2 ? 3.0 : 0.0);
            sum += p[nodes[k]];
        }
        p[nodes[0]] = -sum;
    }
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back("f" + std::to_string(v));
    return {DistributionNetwork(std::move(names), std::move(p), std::move(edges)), std::move(forest)};
}

inline GenSpec sweep_spec(std::size_t n, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.n_sources = std::max<std::size_t>(1, n / 12);
    spec.seed = seed;
    return spec;
}

} // namespace fixtures
