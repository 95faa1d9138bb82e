#ifndef FORWARD_NETWORK_HPP
#define FORWARD_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common.hpp"
#include "detail/union_find.hpp"

namespace forward {

/// Undirected edge with a quadratic cost coefficient (e.g. resistance).
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double cost = 0.0;

    NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
};

struct Incidence {
    NodeId neighbor;
    EdgeId edge;
};

/**
 * Immutable undirected network with per-node signed injections p = g - d.
 *
 * Construction validates every structural invariant: no self-loops, no
 * duplicate undirected edges, non-negative finite coefficients, balanced
 * injections (|sum p| <= balance_tolerance()) and a connected graph. The
 * first violated invariant is reported as a ValidationError whose message
 * names it.
 */
class DistributionNetwork {
  public:
    DistributionNetwork(std::vector<std::string> names, std::vector<double> injections,
                        std::vector<Edge> edges)
        : names_(std::move(names)), injections_(std::move(injections)), edges_(std::move(edges)) {
        validate_and_index();
    }

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::string &name(NodeId v) const { return names_.at(v); }
    const std::vector<std::string> &names() const noexcept { return names_; }

    std::optional<NodeId> find_node(std::string_view name) const {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end())
            return std::nullopt;
        return it->second;
    }

    double injection(NodeId v) const { return injections_.at(v); }
    std::span<const double> injections() const noexcept { return injections_; }

    const Edge &edge(EdgeId e) const { return edges_.at(e); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Incidence> incident(NodeId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    std::optional<EdgeId> find_edge(NodeId a, NodeId b) const {
        if (a >= node_count() || b >= node_count())
            return std::nullopt;
        auto it = edge_index_.find(key(a, b));
        if (it == edge_index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Nodes with p > 0.
    const std::vector<NodeId> &sources() const noexcept { return sources_; }

    /// eps_balance = 1e-9 * max(1, sum |p|).
    double balance_tolerance() const noexcept { return balance_tolerance_; }

    /// Copy with nodes sorted by name and edges sorted by (min-name, max-name),
    /// each stored with u < v. Ids of the result follow that order.
    DistributionNetwork canonical() const {
        std::vector<NodeId> order(node_count());
        for (NodeId v = 0; v < node_count(); ++v)
            order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](NodeId a, NodeId b) { return names_[a] < names_[b]; });
        std::vector<NodeId> rank(node_count());
        std::vector<std::string> names;
        std::vector<double> p;
        for (std::size_t i = 0; i < order.size(); ++i) {
            rank[order[i]] = i;
            names.push_back(names_[order[i]]);
            p.push_back(injections_[order[i]]);
        }
        std::vector<Edge> edges;
        for (const Edge &e : edges_) {
            NodeId a = rank[e.u], b = rank[e.v];
            if (a > b)
                std::swap(a, b);
            edges.push_back({a, b, e.cost});
        }
        std::sort(edges.begin(), edges.end(), [](const Edge &x, const Edge &y) {
            return std::pair(x.u, x.v) < std::pair(y.u, y.v);
        });
        return DistributionNetwork(std::move(names), std::move(p), std::move(edges));
    }

    friend bool operator==(const DistributionNetwork &a, const DistributionNetwork &b) {
        if (a.names_ != b.names_ || a.injections_ != b.injections_ || a.edges_.size() != b.edges_.size())
            return false;
        for (std::size_t i = 0; i < a.edges_.size(); ++i) {
            const Edge &x = a.edges_[i], &y = b.edges_[i];
            if (x.u != y.u || x.v != y.v || x.cost != y.cost)
                return false;
        }
        return true;
    }

  private:
    std::uint64_t key(NodeId a, NodeId b) const noexcept {
        if (a > b)
            std::swap(a, b);
        return static_cast<std::uint64_t>(a) * node_count() + b;
    }

    void validate_and_index() {
        const std::size_t n = names_.size();
        if (n == 0)
            throw ValidationError("empty network");
        if (injections_.size() != n)
            throw ValidationError("injection count does not match node count");
        for (NodeId v = 0; v < n; ++v) {
            if (names_[v].empty())
                throw ValidationError("empty node name");
            if (!by_name_.emplace(names_[v], v).second)
                throw ValidationError("duplicate node name '" + names_[v] + "'");
            if (!std::isfinite(injections_[v]))
                throw ValidationError("non-finite injection at '" + names_[v] + "'");
        }
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            const Edge &ed = edges_[e];
            if (ed.u >= n || ed.v >= n)
                throw ValidationError("edge references an unknown node");
            if (ed.u == ed.v)
                throw ValidationError("self-loop at '" + names_[ed.u] + "'");
            if (!std::isfinite(ed.cost) || ed.cost < 0.0)
                throw ValidationError("negative cost coefficient on edge (" + names_[ed.u] + "," +
                                      names_[ed.v] + ")");
            if (!edge_index_.emplace(key(ed.u, ed.v), e).second)
                throw ValidationError("duplicate edge (" + names_[ed.u] + "," + names_[ed.v] + ")");
        }

        double sum = 0.0, abs_sum = 0.0;
        for (double p : injections_) {
            sum += p;
            abs_sum += std::abs(p);
        }
        balance_tolerance_ = 1e-9 * std::max(1.0, abs_sum);
        if (std::abs(sum) > balance_tolerance_) {
            std::ostringstream msg;
            msg << "injection imbalance: sum of p = " << sum;
            throw ValidationError(msg.str());
        }

        offsets_.assign(n + 1, 0);
        for (const Edge &ed : edges_) {
            ++offsets_[ed.u + 1];
            ++offsets_[ed.v + 1];
        }
        for (std::size_t i = 0; i < n; ++i)
            offsets_[i + 1] += offsets_[i];
        adjacency_.resize(offsets_[n]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            adjacency_[fill[edges_[e].u]++] = {edges_[e].v, e};
            adjacency_[fill[edges_[e].v]++] = {edges_[e].u, e};
        }

        detail::UnionFind uf(n);
        std::size_t components = n;
        for (const Edge &ed : edges_)
            if (uf.unite(ed.u, ed.v))
                --components;
        if (components != 1)
            throw ValidationError("disconnected graph: " + std::to_string(components) + " components");

        for (NodeId v = 0; v < n; ++v)
            if (injections_[v] > 0.0)
                sources_.push_back(v);
    }

    std::vector<std::string> names_;
    std::vector<double> injections_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, NodeId> by_name_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> adjacency_;
    std::vector<NodeId> sources_;
    double balance_tolerance_ = 1e-9;
};

/// The iteration vector p^t.
struct InjectionState {
    std::vector<double> values;
    std::size_t iteration = 0;

    static InjectionState initial(const DistributionNetwork &net) {
        return {{net.injections().begin(), net.injections().end()}, 0};
    }

    double &operator[](NodeId v) { return values[v]; }
    double operator[](NodeId v) const { return values[v]; }
};

/// Flow runs tail -> head along network edge `edge`.
struct DirectedEdge {
    NodeId tail = 0;
    NodeId head = 0;
    EdgeId edge = kNoEdge;

    friend bool operator==(const DirectedEdge &, const DirectedEdge &) = default;
};

/// A polyforest over the network's nodes with solved flows.
struct RadialConfiguration {
    std::vector<DirectedEdge> edges;
    std::vector<double> flows;
    double total_cost = 0.0;
};

/// A(S) x: per-node net outflow. Positive at nodes that push flow out.
inline std::vector<double> incidence_apply(std::size_t node_count, std::span<const DirectedEdge> edges,
                                           std::span<const double> x) {
    if (edges.size() != x.size())
        throw DimensionMismatch("incidence_apply: " + std::to_string(edges.size()) + " edges but " +
                                std::to_string(x.size()) + " flows");
    std::vector<double> out(node_count, 0.0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].tail >= node_count || edges[k].head >= node_count)
            throw DimensionMismatch("incidence_apply: node index out of range");
        out[edges[k].tail] += x[k];
        out[edges[k].head] -= x[k];
    }
    return out;
}

inline std::vector<double> incidence_apply(const DistributionNetwork &net, const RadialConfiguration &cfg,
                                           std::span<const double> x) {
    return incidence_apply(net.node_count(), cfg.edges, x);
}

struct ValidationReport {
    struct Check {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    std::vector<Check> checks;
    std::vector<EdgeId> zero_flow_edges;
    double kirchhoff_residual = 0.0;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
    }

    const Check *find(std::string_view name) const {
        for (const Check &c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    bool passed(std::string_view name) const {
        const Check *c = find(name);
        return c != nullptr && c->passed;
    }
};

/**
 * Checks a configuration against the definition of a radial configuration:
 * acyclic, edge_subset, spanning, root_source, kirchhoff, nonnegative_flow.
 * Failures are report entries; nothing throws.
 */
inline ValidationReport validate_radial(const DistributionNetwork &net, const RadialConfiguration &cfg,
                                        double flow_tolerance = kFlowTolerance) {
    ValidationReport report;
    const std::size_t n = net.node_count();

    bool in_range = true;
    for (const DirectedEdge &d : cfg.edges)
        if (d.tail >= n || d.head >= n)
            in_range = false;

    {
        bool ok = in_range;
        std::string detail;
        if (in_range) {
            detail = "";
            for (const DirectedEdge &d : cfg.edges) {
                auto id = net.find_edge(d.tail, d.head);
                if (!id || (d.edge != kNoEdge && d.edge != *id)) {
                    ok = false;
                    detail = "(" + net.name(d.tail) + "," + net.name(d.head) + ") is not a network edge";
                    break;
                }
            }
        } else {
            detail = "node index out of range";
        }
        report.checks.push_back({"edge_subset", ok, detail});
    }

    {
        bool ok = in_range;
        std::string detail = in_range ? "" : "node index out of range";
        if (in_range) {
            detail::UnionFind uf(n);
            for (const DirectedEdge &d : cfg.edges) {
                if (!uf.unite(d.tail, d.head)) {
                    ok = false;
                    detail = "edge (" + net.name(d.tail) + "," + net.name(d.head) + ") closes a cycle";
                    break;
                }
            }
        }
        report.checks.push_back({"acyclic", ok, detail});
    }

    std::vector<std::size_t> in_degree(n, 0), degree(n, 0);
    if (in_range) {
        for (const DirectedEdge &d : cfg.edges) {
            ++in_degree[d.head];
            ++degree[d.head];
            ++degree[d.tail];
        }
    }

    {
        bool ok = in_range;
        std::string detail;
        if (in_range && n > 1) {
            for (NodeId v = 0; v < n; ++v) {
                if (degree[v] == 0) {
                    ok = false;
                    detail = "node '" + net.name(v) + "' is not covered";
                    break;
                }
            }
        }
        report.checks.push_back({"spanning", ok, detail});
    }

    {
        bool ok = in_range;
        std::string detail;
        if (in_range) {
            for (NodeId v = 0; v < n; ++v) {
                if (in_degree[v] == 0 && net.injection(v) < 0.0) {
                    ok = false;
                    detail = "root '" + net.name(v) + "' is a sink";
                    break;
                }
            }
        }
        report.checks.push_back({"root_source", ok, detail});
    }

    {
        bool ok = in_range && cfg.flows.size() == cfg.edges.size();
        std::string detail;
        if (!ok) {
            detail = in_range ? "flow vector length mismatch" : "node index out of range";
            report.kirchhoff_residual = std::numeric_limits<double>::infinity();
        } else {
            auto net_flow = incidence_apply(n, cfg.edges, cfg.flows);
            double worst = 0.0;
            for (NodeId v = 0; v < n; ++v)
                worst = std::max(worst, std::abs(net_flow[v] - net.injection(v)));
            report.kirchhoff_residual = worst;
            ok = worst <= flow_tolerance;
            if (!ok) {
                std::ostringstream msg;
                msg << "residual " << worst << " exceeds " << flow_tolerance;
                detail = msg.str();
            }
        }
        report.checks.push_back({"kirchhoff", ok, detail});
    }

    {
        bool ok = true;
        std::string detail;
        for (std::size_t k = 0; k < cfg.flows.size(); ++k) {
            if (!(cfg.flows[k] >= 0.0)) {
                ok = false;
                detail = "negative flow on configuration edge " + std::to_string(k);
                break;
            }
            if (cfg.flows[k] <= flow_tolerance && k < cfg.edges.size())
                report.zero_flow_edges.push_back(cfg.edges[k].edge);
        }
        report.checks.push_back({"nonnegative_flow", ok, detail});
    }

    return report;
}

} // namespace forward

#endif // FORWARD_NETWORK_HPP
