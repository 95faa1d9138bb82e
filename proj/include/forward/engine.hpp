#ifndef FORWARD_ENGINE_HPP
#define FORWARD_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "generator.hpp"
#include "preprocessor.hpp"
#include "sampler.hpp"
#include "tree_flow.hpp"

namespace forward {

/// Passed to SolveOptions::on_iteration after each sampled edge.
struct IterationEvent {
    std::size_t partition;
    std::size_t iteration;
    const CondensedView &view;
    const SampleChoice &choice;
    const Polyforest &forest;
    double positive_residual_before;
    double positive_residual_after;
};

struct SolveOptions {
    /// Worker threads for the partition loop; 0 = min(partitions, hardware).
    std::size_t threads = 1;
    /// Record one TraceRow per sampler iteration.
    bool trace = false;
    /// Called under a lock, possibly from worker threads.
    std::function<void(const IterationEvent &)> on_iteration;
};

struct TraceRow {
    std::size_t partition;
    std::size_t iteration;
    DirectedEdge edge;
    double weight;
    bool balance_ok;
    bool pendant;
    std::size_t deleted_count;
};

struct PhaseTimings {
    double preprocess_ms = 0.0;
    double islander_ms = 0.0;
    double loop_ms = 0.0;
    double solve_flow_ms = 0.0;
};

struct SolveReport {
    double cost = 0.0;
    std::size_t iterations = 0;
    std::size_t partitions = 0;
    std::size_t presampled = 0;
    /// Sampled or presampled edges whose direction the flow solve reversed.
    std::size_t flipped_edges = 0;
    std::size_t zero_flow_edges = 0;
    PhaseTimings timings;
    std::vector<TraceRow> trace;
};

struct SolveResult {
    RadialConfiguration configuration;
    SolveReport report;
};

/// Per-partition loop state.
struct EngineState {
    const PartitionView *partition = nullptr;
    Polyforest forest;
    /// p^t: uncovered nodes keep p^l, each polytree's residual sits on its anchor.
    InjectionState p;
    PathCostAccumulator h;
    std::size_t iteration = 0;
    /// Increment h(head) - h(tail) recorded per sampled edge.
    std::vector<double> edge_increment;
    /// Sampled edges incident to each node.
    std::vector<std::vector<Incidence>> forest_adjacency;

    EngineState(const DistributionNetwork &net, const PartitionView &part)
        : partition(&part), forest(net.node_count(), net.edge_count()), p(part.injections),
          h(net.node_count()), edge_increment(net.edge_count(), 0.0), forest_adjacency(net.node_count()) {
        for (NodeId s : part.sources)
            add_tree(s);
        // A partition without any positive node is all zeros; seed it anywhere.
        if (forest.trees.empty() && !part.graph.nodes.empty())
            add_tree(part.graph.nodes.front());
    }

    void add_tree(NodeId root) {
        forest.tree_of[root] = forest.trees.size();
        forest.trees.push_back({root, {root}, partition->injections[root], true});
    }

    bool done(double tolerance) const {
        for (NodeId v : partition->graph.nodes)
            if (!forest.covered(v))
                return false;
        for (const Polytree &t : forest.trees)
            if (t.alive && std::abs(t.residual) > tolerance)
                return false;
        return true;
    }

    /// Adds tail -> head, absorbing head (or head's exhausted tree) into tail's tree.
    void apply(const DistributionNetwork &net, const CandidateEdge &c) {
        const std::size_t t = forest.tree_of[c.tail];
        Polytree &tree = forest.trees[t];
        const double increment = net.edge(c.edge).cost * c.head_demand * c.head_demand;
        edge_increment[c.edge] = increment;
        forest.edges.push_back({c.tail, c.head, c.edge});
        forest.deleted[c.edge] = 1;
        forest_adjacency[c.tail].push_back({c.head, c.edge});
        forest_adjacency[c.head].push_back({c.tail, c.edge});

        const std::size_t b = forest.tree_of[c.head];
        if (b == Polyforest::npos) {
            forest.tree_of[c.head] = t;
            tree.members.push_back(c.head);
            tree.residual += partition->injections[c.head];
            p[tree.anchor] += p[c.head];
            p[c.head] = 0.0;
            h[c.head] = h[c.tail] + increment;
            return;
        }

        Polytree &absorbed = forest.trees[b];
        for (NodeId v : absorbed.members) {
            forest.tree_of[v] = t;
            tree.members.push_back(v);
        }
        tree.residual += absorbed.residual;
        p[tree.anchor] += p[absorbed.anchor];
        p[absorbed.anchor] = 0.0;
        absorbed.members.clear();
        absorbed.residual = 0.0;
        absorbed.alive = false;

        // Re-accumulate h~ over the absorbed tree, now hanging off the head.
        h[c.head] = h[c.tail] + increment;
        std::vector<std::pair<NodeId, NodeId>> stack{{c.head, c.tail}};
        while (!stack.empty()) {
            auto [v, from] = stack.back();
            stack.pop_back();
            for (const Incidence &in : forest_adjacency[v]) {
                if (in.neighbor == from || in.edge == c.edge)
                    continue;
                h[in.neighbor] = h[v] + edge_increment[in.edge];
                stack.push_back({in.neighbor, v});
            }
        }
    }
};

/**
 * Grows the polyforest of one partition until it spans the partition and
 * every polytree is balanced. Each iteration condenses the partition,
 * samples one edge and folds its head into the tail's polytree; every edge
 * joins two components, so at most |V^l| - 1 iterations run.
 */
inline std::vector<DirectedEdge> run_partition(const DistributionNetwork &net, EngineState &state,
                                               const std::function<void(const IterationEvent &)> &observer = {},
                                               std::vector<TraceRow> *trace = nullptr) {
    const PartitionView &part = *state.partition;
    const double tol = net.balance_tolerance();
    const std::size_t cap = part.graph.nodes.empty() ? 0 : part.graph.nodes.size() - 1;

    while (!state.done(tol)) {
        if (state.iteration >= cap)
            throw Infeasible("partition not spanned after |V|-1 iterations", part.index, state.iteration);
        const CondensedView view = net_concad(net, part.graph, state.forest.member_sets(), state.p, tol);
        SampleChoice choice;
        try {
            choice = sample(net, part.graph, view, state.forest, state.h, tol);
        } catch (const NoCandidate &e) {
            throw Infeasible(e.what(), part.index, state.iteration);
        }
        const double before = state.forest.positive_residual();
        for (EdgeId e : choice.deleted)
            state.forest.deleted[e] = 1;
        state.apply(net, choice.chosen);
        ++state.iteration;
        state.p.iteration = state.iteration;

        if (trace)
            trace->push_back({part.index, state.iteration, choice.directed(), choice.chosen.weight,
                              choice.chosen.balance_ok, choice.chosen.pendant_source, choice.deleted.size()});
        if (observer)
            observer({part.index, state.iteration, view, choice, state.forest, before,
                      state.forest.positive_residual()});
    }
    return state.forest.edges;
}

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace detail

/**
 * FORWARD: preprocess, split into islands, grow each island's polyforest,
 * then solve the unique flow on the union. The flow solve has the last word
 * on orientation; sampled directions it reverses are counted in the report.
 */
inline SolveResult solve(const DistributionNetwork &net, const SolveOptions &options = {}) {
    using clock = std::chrono::steady_clock;
    SolveResult result;
    SolveReport &report = result.report;

    auto t0 = clock::now();
    const PreprocessResult pre = preprocess(net, InjectionState::initial(net));
    report.timings.preprocess_ms = detail::elapsed_ms(t0);
    report.presampled = pre.presampled.size();

    t0 = clock::now();
    std::vector<NodeId> reduced_sources;
    for (NodeId v : pre.reduced_graph.nodes)
        if (pre.reduced_injections[v] > 0.0)
            reduced_sources.push_back(v);
    IslanderResult islands;
    try {
        islands = islander(net, pre.reduced_graph, reduced_sources, pre.reduced_injections);
    } catch (const InfeasibleSplit &e) {
        throw Infeasible(e.what(), 0, 0);
    }
    report.timings.islander_ms = detail::elapsed_ms(t0);
    report.partitions = islands.partitions.size();

    t0 = clock::now();
    const std::size_t L = islands.partitions.size();
    std::vector<std::vector<DirectedEdge>> sampled(L);
    std::vector<std::vector<TraceRow>> traces(L);
    std::vector<std::size_t> iterations(L, 0);
    std::vector<std::exception_ptr> errors(L);
    std::mutex observer_lock;
    std::function<void(const IterationEvent &)> observer;
    if (options.on_iteration) {
        observer = [&](const IterationEvent &ev) {
            std::lock_guard<std::mutex> guard(observer_lock);
            options.on_iteration(ev);
        };
    }

    auto work = [&](std::size_t l) {
        try {
            EngineState state(net, islands.partitions[l]);
            sampled[l] = run_partition(net, state, observer, options.trace ? &traces[l] : nullptr);
            iterations[l] = state.iteration;
        } catch (...) {
            errors[l] = std::current_exception();
        }
    };

    std::size_t threads = options.threads;
    if (threads == 0)
        threads = std::max<std::size_t>(1, std::min<std::size_t>(L, std::thread::hardware_concurrency()));
    threads = std::min(threads, std::max<std::size_t>(L, 1));
    if (threads <= 1) {
        for (std::size_t l = 0; l < L; ++l)
            work(l);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t l = next++; l < L; l = next++)
                    work(l);
            });
        for (std::thread &th : pool)
            th.join();
    }
    for (std::size_t l = 0; l < L; ++l)
        if (errors[l])
            std::rethrow_exception(errors[l]);
    report.timings.loop_ms = detail::elapsed_ms(t0);

    t0 = clock::now();
    std::vector<DirectedEdge> chosen(pre.presampled);
    for (std::size_t l = 0; l < L; ++l) {
        chosen.insert(chosen.end(), sampled[l].begin(), sampled[l].end());
        report.iterations += iterations[l];
        report.trace.insert(report.trace.end(), traces[l].begin(), traces[l].end());
    }
    std::sort(chosen.begin(), chosen.end(),
              [](const DirectedEdge &a, const DirectedEdge &b) { return a.edge < b.edge; });
    std::vector<EdgeId> ids;
    ids.reserve(chosen.size());
    for (const DirectedEdge &d : chosen)
        ids.push_back(d.edge);

    ForestFlowSolution flow;
    try {
        flow = solve_forest(net, ids, net.injections());
    } catch (const Error &e) {
        throw Infeasible(std::string("final flow solve failed: ") + e.what(), L, report.iterations);
    }
    for (std::size_t k = 0; k < chosen.size(); ++k)
        if (flow.oriented_edges[k].tail != chosen[k].tail && flow.flows[k] > kFlowTolerance)
            ++report.flipped_edges;
    report.timings.solve_flow_ms = detail::elapsed_ms(t0);

    report.cost = flow.cost;
    report.zero_flow_edges = flow.zero_flow_edges.size();
    result.configuration = flow.configuration();
    return result;
}

struct ProbeRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double median_ms = 0.0;
    double median_cost = 0.0;
    std::size_t median_iterations = 0;
};

/// Median FORWARD wall time on Watts-Strogatz instances of each size, `seeds`
/// seeds per size (spec.seed, spec.seed + 1, ...). Sources default to n / 12.
inline std::vector<ProbeRow> complexity_probe(const std::vector<std::size_t> &sizes, std::size_t seeds = 5,
                                              GenSpec base = {}) {
    std::vector<ProbeRow> rows;
    for (std::size_t n : sizes) {
        std::vector<double> times, costs;
        std::vector<std::size_t> iters;
        std::size_t m = 0;
        for (std::size_t s = 0; s < std::max<std::size_t>(seeds, 1); ++s) {
            SolveResult r;
            if (n < 3) {
                // Too small for a lattice: a single balanced node (or a balanced pair).
                std::vector<std::string> names;
                std::vector<double> p;
                std::vector<Edge> edges;
                for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i)
                    names.push_back(generated_node_name(i, std::max<std::size_t>(n, 1)));
                p.assign(names.size(), 0.0);
                if (names.size() == 2) {
                    p = {1.0, -1.0};
                    edges.push_back({0, 1, 1.0});
                }
                const DistributionNetwork net(names, p, edges);
                m = net.edge_count();
                const auto gen_done = std::chrono::steady_clock::now();
                r = solve(net);
                times.push_back(detail::elapsed_ms(gen_done));
            } else {
                GenSpec spec = base;
                spec.n = n;
                spec.k = std::min(spec.k, n - 1 - (n - 1) % 2);
                spec.n_sources = std::clamp<std::size_t>(n / 12, 1, n - 1);
                spec.seed = base.seed + s;
                const DistributionNetwork net = generate(spec);
                m = net.edge_count();
                const auto gen_done = std::chrono::steady_clock::now();
                r = solve(net);
                times.push_back(detail::elapsed_ms(gen_done));
            }
            costs.push_back(r.report.cost);
            iters.push_back(r.report.iterations);
        }
        auto median = [](auto v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        rows.push_back({n, m, median(times), median(costs), median(iters)});
    }
    return rows;
}

/// Least-squares slope of log(time) against log(n).
inline double fitted_exponent(const std::vector<ProbeRow> &rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    for (const ProbeRow &r : rows) {
        if (r.n < 2 || r.median_ms <= 0.0)
            continue;
        const double x = std::log(static_cast<double>(r.n)), y = std::log(r.median_ms);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k < 2)
        return 0.0;
    const double kk = static_cast<double>(k);
    return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

} // namespace forward

#endif // FORWARD_ENGINE_HPP
