#ifndef FORWARD_IO_HPP
#define FORWARD_IO_HPP

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "engine.hpp"

namespace forward {

using json = nlohmann::json;

namespace detail {

inline const json &require(const json &obj, const char *key, const char *where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(std::string(where) + ": missing key \"" + key + "\"");
    return obj.at(key);
}

inline std::string require_string(const json &obj, const char *key, const char *where) {
    const json &v = require(obj, key, where);
    if (!v.is_string())
        throw ParseError(std::string(where) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

inline double require_number(const json &obj, const char *key, const char *where) {
    const json &v = require(obj, key, where);
    if (!v.is_number())
        throw ParseError(std::string(where) + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

inline json parse_json(std::istream &in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace detail

/// Builds a canonical network (ids in name order) from the JSON schema
/// {"nodes":[{"name","p"}], "edges":[{"u","v","c"}]}. Extra keys are ignored.
inline DistributionNetwork network_from_json(const json &doc) {
    const json &nodes = detail::require(doc, "nodes", "network");
    const json &edges = detail::require(doc, "edges", "network");
    if (!nodes.is_array() || !edges.is_array())
        throw ParseError("network: \"nodes\" and \"edges\" must be arrays");

    std::vector<std::string> names;
    std::vector<double> p;
    for (const json &node : nodes) {
        names.push_back(detail::require_string(node, "name", "node"));
        p.push_back(detail::require_number(node, "p", "node"));
    }
    std::unordered_map<std::string, NodeId> index;
    for (NodeId v = 0; v < names.size(); ++v)
        index.emplace(names[v], v);

    std::vector<Edge> list;
    for (const json &edge : edges) {
        const std::string u = detail::require_string(edge, "u", "edge");
        const std::string v = detail::require_string(edge, "v", "edge");
        const double c = detail::require_number(edge, "c", "edge");
        auto iu = index.find(u), iv = index.find(v);
        if (iu == index.end() || iv == index.end())
            throw ValidationError("edge (" + u + "," + v + ") references an unknown node");
        list.push_back({iu->second, iv->second, c});
    }
    return DistributionNetwork(std::move(names), std::move(p), std::move(list)).canonical();
}

inline DistributionNetwork load_network(std::istream &in) { return network_from_json(detail::parse_json(in)); }

inline DistributionNetwork load_network_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return load_network(in);
}

/// Canonical form: nodes by name, edges by (min-name, max-name).
inline json network_to_json(const DistributionNetwork &net) {
    const DistributionNetwork c = net.canonical();
    json nodes = json::array(), edges = json::array();
    for (NodeId v = 0; v < c.node_count(); ++v)
        nodes.push_back({{"name", c.name(v)}, {"p", c.injection(v)}});
    for (const Edge &e : c.edges())
        edges.push_back({{"u", c.name(e.u)}, {"v", c.name(e.v)}, {"c", e.cost}});
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline std::string serialize_network(const DistributionNetwork &net) { return network_to_json(net).dump(2) + "\n"; }

inline json spec_to_json(const GenSpec &spec) {
    return {{"generator", "watts-strogatz"},
            {"n", spec.n},
            {"k", spec.k},
            {"beta", spec.beta},
            {"sources", spec.n_sources},
            {"demand_range", {spec.demand_range.first, spec.demand_range.second}},
            {"resistance_range", {spec.resistance_range.first, spec.resistance_range.second}},
            {"seed", spec.seed},
            {"supply_split", "equal, remainder on first source"}};
}

/// {"edges":[{"u": tail, "v": head, "flow"}], "cost"}; edges in network edge order.
inline json solution_to_json(const DistributionNetwork &net, const RadialConfiguration &cfg) {
    std::vector<std::size_t> order(cfg.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t k) {
        const DirectedEdge &d = cfg.edges[k];
        return std::pair(net.name(std::min(d.tail, d.head)), net.name(std::max(d.tail, d.head)));
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    json edges = json::array();
    for (std::size_t k : order)
        edges.push_back({{"u", net.name(cfg.edges[k].tail)},
                         {"v", net.name(cfg.edges[k].head)},
                         {"flow", k < cfg.flows.size() ? cfg.flows[k] : 0.0}});
    return {{"edges", std::move(edges)}, {"cost", cfg.total_cost}};
}

inline RadialConfiguration solution_from_json(const DistributionNetwork &net, const json &doc) {
    const json &edges = detail::require(doc, "edges", "solution");
    if (!edges.is_array())
        throw ParseError("solution: \"edges\" must be an array");
    RadialConfiguration cfg;
    for (const json &edge : edges) {
        const std::string u = detail::require_string(edge, "u", "solution edge");
        const std::string v = detail::require_string(edge, "v", "solution edge");
        const double flow = detail::require_number(edge, "flow", "solution edge");
        auto tail = net.find_node(u), head = net.find_node(v);
        if (!tail || !head)
            throw ValidationError("solution edge (" + u + "," + v + ") references an unknown node");
        auto id = net.find_edge(*tail, *head);
        cfg.edges.push_back({*tail, *head, id ? *id : kNoEdge});
        cfg.flows.push_back(flow);
    }
    cfg.total_cost = doc.contains("cost") && doc.at("cost").is_number() ? doc.at("cost").get<double>() : 0.0;
    return cfg;
}

inline RadialConfiguration load_solution_file(const DistributionNetwork &net, const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return solution_from_json(net, detail::parse_json(in));
}

inline json report_to_json(const SolveReport &r) {
    return {{"cost", r.cost},
            {"iterations", r.iterations},
            {"partitions", r.partitions},
            {"presampled", r.presampled},
            {"flipped_edges", r.flipped_edges},
            {"timings",
             {{"preprocess", r.timings.preprocess_ms},
              {"islander", r.timings.islander_ms},
              {"loop", r.timings.loop_ms},
              {"solve_flow", r.timings.solve_flow_ms}}}};
}

inline json validation_to_json(const ValidationReport &report) {
    json checks = json::array();
    for (const auto &c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"ok", report.ok()},
            {"checks", std::move(checks)},
            {"kirchhoff_residual", report.kirchhoff_residual},
            {"zero_flow_edges", report.zero_flow_edges.size()}};
}

/// CSV: iter,edge,weight,balance_ok,pendant,deleted_count.
inline std::string trace_to_csv(const DistributionNetwork &net, const std::vector<TraceRow> &rows) {
    std::ostringstream out;
    out << "iter,edge,weight,balance_ok,pendant,deleted_count\n";
    out << std::setprecision(17);
    std::size_t iter = 0;
    for (const TraceRow &r : rows)
        out << ++iter << ',' << net.name(r.edge.tail) << "->" << net.name(r.edge.head) << ',' << r.weight << ','
            << (r.balance_ok ? 1 : 0) << ',' << (r.pendant ? 1 : 0) << ',' << r.deleted_count << '\n';
    return out.str();
}

/// Directed DOT graph; sources filled, edges labelled "x=<flow>, C=<coeff>".
inline std::string to_dot(const DistributionNetwork &net, const RadialConfiguration &cfg) {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "digraph radial {\n  node [shape=circle];\n";
    for (NodeId v = 0; v < net.node_count(); ++v) {
        out << "  \"" << net.name(v) << "\" [label=\"" << net.name(v) << "\\n" << net.injection(v) << "\"";
        if (net.injection(v) > 0.0)
            out << ", style=filled, fillcolor=\"#d62728\", fontcolor=white";
        out << "];\n";
    }
    for (std::size_t k = 0; k < cfg.edges.size(); ++k) {
        const DirectedEdge &d = cfg.edges[k];
        auto id = net.find_edge(d.tail, d.head);
        const double c = id ? net.edge(*id).cost : 0.0;
        out << "  \"" << net.name(d.tail) << "\" -> \"" << net.name(d.head) << "\" [label=\"x="
            << (k < cfg.flows.size() ? cfg.flows[k] : 0.0) << ", C=" << c << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace forward

#endif // FORWARD_IO_HPP
