#ifndef FORWARD_GENERATOR_HPP
#define FORWARD_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>

#include "network.hpp"

namespace forward {

/// Watts-Strogatz instance description.
struct GenSpec {
    std::size_t n = 120;
    /// Even ring degree.
    std::size_t k = 4;
    double beta = 0.2;
    std::size_t n_sources = 10;
    std::pair<double, double> demand_range{0.5, 1.5};
    std::pair<double, double> resistance_range{0.1, 1.0};
    std::uint64_t seed = 7;
};

inline void validate_spec(const GenSpec &spec) {
    if (spec.n < 3)
        throw InvalidSpec("gen: n must be at least 3");
    if (spec.k < 2 || spec.k % 2 != 0 || spec.k >= spec.n)
        throw InvalidSpec("gen: k must be even with 2 <= k < n");
    if (!(spec.beta >= 0.0 && spec.beta <= 1.0))
        throw InvalidSpec("gen: beta must lie in [0, 1]");
    if (spec.n_sources < 1 || spec.n_sources >= spec.n)
        throw InvalidSpec("gen: need 1 <= sources < n");
    if (!(spec.demand_range.first > 0.0 && spec.demand_range.first <= spec.demand_range.second))
        throw InvalidSpec("gen: demand range must be positive and ordered");
    if (!(spec.resistance_range.first > 0.0 && spec.resistance_range.first <= spec.resistance_range.second))
        throw InvalidSpec("gen: resistance range must be positive and ordered");
}

/// Zero-padded so that name order equals index order.
inline std::string generated_node_name(std::size_t i, std::size_t n) {
    std::string digits = std::to_string(i);
    const std::size_t width = std::to_string(n - 1).size();
    return "n" + std::string(width - digits.size(), '0') + digits;
}

namespace detail {

inline bool connected(const std::vector<std::unordered_set<std::size_t>> &adj) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == adj.size();
}

} // namespace detail

/**
 * Ring lattice with k/2 neighbours per side, each lattice edge (i, i+j)
 * rewired with probability beta to (i, w), w uniform over non-neighbours.
 * A rewire that disconnects the graph is undone and retried. Sources are
 * drawn without replacement, sinks get uniform demands, and the total
 * demand is split equally over the sources (remainder on the first one).
 */
inline DistributionNetwork generate(const GenSpec &spec) {
    validate_spec(spec);
    const std::size_t n = spec.n;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    std::vector<std::unordered_set<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 1; j <= spec.k / 2; ++j) {
            adj[i].insert((i + j) % n);
            adj[(i + j) % n].insert(i);
        }
    }

    constexpr int kAttempts = 8;
    for (std::size_t j = 1; j <= spec.k / 2; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t old = (i + j) % n;
            if (!(unit(rng) < spec.beta) || !adj[i].contains(old) || adj[i].size() >= n - 1)
                continue;
            for (int attempt = 0; attempt < kAttempts; ++attempt) {
                std::size_t w = pick(rng);
                while (w == i || adj[i].contains(w))
                    w = pick(rng);
                adj[i].erase(old);
                adj[old].erase(i);
                adj[i].insert(w);
                adj[w].insert(i);
                if (detail::connected(adj))
                    break;
                adj[i].erase(w);
                adj[w].erase(i);
                adj[i].insert(old);
                adj[old].insert(i);
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    for (std::size_t i = 0; i < spec.n_sources; ++i) {
        std::uniform_int_distribution<std::size_t> rest(i, n - 1);
        std::swap(order[i], order[rest(rng)]);
    }
    std::vector<char> is_source(n, 0);
    std::vector<std::size_t> sources(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.n_sources));
    for (std::size_t s : sources)
        is_source[s] = 1;

    std::uniform_real_distribution<double> demand(spec.demand_range.first, spec.demand_range.second);
    std::vector<double> p(n, 0.0);
    double total_demand = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!is_source[v]) {
            const double d = demand(rng);
            p[v] = -d;
            total_demand += d;
        }
    }
    const double share = total_demand / static_cast<double>(spec.n_sources);
    double assigned = 0.0;
    for (std::size_t k = 1; k < sources.size(); ++k) {
        p[sources[k]] = share;
        assigned += share;
    }
    p[sources[0]] = total_demand - assigned;

    std::uniform_real_distribution<double> resistance(spec.resistance_range.first, spec.resistance_range.second);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<std::size_t> nbrs(adj[u].begin(), adj[u].end());
        std::sort(nbrs.begin(), nbrs.end());
        for (std::size_t v : nbrs)
            if (u < v)
                edges.push_back({u, v, 0.0});
    }
    for (Edge &e : edges)
        e.cost = resistance(rng);

    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = generated_node_name(i, n);
    return DistributionNetwork(std::move(names), std::move(p), std::move(edges));
}

} // namespace forward

#endif // FORWARD_GENERATOR_HPP
