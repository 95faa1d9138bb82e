// forward: radial configuration search for distribution networks.
//
// Exit codes: 0 success, 1 input error, 2 infeasible, 3 network too large for the oracle.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <forward/forward.hpp>

namespace {

enum Exit : int { kOk = 0, kInputError = 1, kInfeasible = 2, kTooLarge = 3 };

void init_logging() {
    auto logger = spdlog::stderr_color_mt("forward");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    const char *env = std::getenv("FORWARD_LOG");
    const std::string level = env ? env : "info";
    if (level == "error")
        spdlog::set_level(spdlog::level::err);
    else if (level == "debug")
        spdlog::set_level(spdlog::level::debug);
    else
        spdlog::set_level(spdlog::level::info);
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw forward::ParseError("cannot write '" + path + "'");
    out << text;
}

std::string dump(const forward::json &doc) { return doc.dump(2) + "\n"; }

int cmd_validate(const std::string &network_path, const std::string &solution_path) {
    const auto net = forward::load_network_file(network_path);
    spdlog::info("{}: {} nodes, {} edges, {} sources", network_path, net.node_count(), net.edge_count(),
                 net.sources().size());
    if (solution_path.empty()) {
        write_text("-", "ok\n");
        return kOk;
    }
    const auto cfg = forward::load_solution_file(net, solution_path);
    const auto report = forward::validate_radial(net, cfg);
    write_text("-", dump(forward::validation_to_json(report)));
    return report.ok() ? kOk : kInfeasible;
}

struct SolveArgs {
    std::string input;
    std::string output;
    std::string trace;
    std::string report;
    std::size_t threads = 0;
};

int cmd_solve(const SolveArgs &args) {
    const auto net = forward::load_network_file(args.input);
    forward::SolveOptions options;
    options.threads = args.threads;
    options.trace = !args.trace.empty();
    if (spdlog::should_log(spdlog::level::debug)) {
        options.on_iteration = [&net](const forward::IterationEvent &ev) {
            spdlog::debug("partition {} iter {}: {} -> {} (w={:.6g}, residual {:.6g} -> {:.6g})", ev.partition,
                          ev.iteration, net.name(ev.choice.chosen.tail), net.name(ev.choice.chosen.head),
                          ev.choice.chosen.weight, ev.positive_residual_before, ev.positive_residual_after);
        };
    }
    const auto result = forward::solve(net, options);
    const auto &r = result.report;
    spdlog::info("cost {:.10g}, {} partitions, {} presampled, {} iterations, {} flipped", r.cost, r.partitions,
                 r.presampled, r.iterations, r.flipped_edges);
    if (r.zero_flow_edges > 0)
        spdlog::info("{} edges carry zero flow", r.zero_flow_edges);

    write_text(args.output, dump(forward::solution_to_json(net, result.configuration)));
    if (!args.trace.empty())
        write_text(args.trace, forward::trace_to_csv(net, r.trace));
    if (!args.report.empty())
        write_text(args.report, dump(forward::report_to_json(r)));
    return kOk;
}

int cmd_oracle(const std::string &input, std::size_t max_nodes, std::size_t max_edges) {
    const auto net = forward::load_network_file(input);
    const auto oracle = forward::enumerate_optimal(net, {max_nodes, max_edges});
    spdlog::info("{} acyclic subsets, {} feasible", oracle.enumerated_count, oracle.feasible_count);
    const auto fwd = forward::solve(net);
    forward::json doc{{"feasible_count", oracle.feasible_count}, {"forward_cost", fwd.report.cost}};
    if (oracle.optimum) {
        doc["optimal_cost"] = oracle.optimal_cost;
        doc["gap_ratio"] = oracle.optimal_cost > 0.0 ? fwd.report.cost / oracle.optimal_cost : 1.0;
    } else {
        doc["optimal_cost"] = nullptr;
        doc["gap_ratio"] = nullptr;
    }
    write_text("-", dump(doc));
    return oracle.optimum ? kOk : kInfeasible;
}

int cmd_gen(const forward::GenSpec &spec, const std::string &output) {
    const auto net = forward::generate(spec);
    auto doc = forward::network_to_json(net);
    doc["metadata"] = forward::spec_to_json(spec);
    write_text(output, dump(doc));
    return kOk;
}

int cmd_bench(const std::vector<std::size_t> &sizes, std::size_t seeds, const std::string &output,
              const std::string &dat) {
    const auto rows = forward::complexity_probe(sizes, seeds);
    std::ostringstream csv, gp;
    csv << "n,m,median_ms,cost\n";
    gp << "# n m median_ms cost\n";
    for (const auto &r : rows) {
        csv << r.n << ',' << r.m << ',' << r.median_ms << ',' << r.median_cost << '\n';
        gp << r.n << ' ' << r.m << ' ' << r.median_ms << ' ' << r.median_cost << '\n';
    }
    write_text(output, csv.str());
    if (!dat.empty())
        write_text(dat, gp.str());
    if (rows.size() >= 2)
        spdlog::info("fitted exponent {:.3f}", forward::fitted_exponent(rows));
    return kOk;
}

int cmd_export_dot(const std::string &solution_path, const std::string &network_path, const std::string &output) {
    const auto net = forward::load_network_file(network_path);
    const auto cfg = forward::load_solution_file(net, solution_path);
    write_text(output, forward::to_dot(net, cfg));
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    init_logging();
    CLI::App app{"Radial configuration search for distribution networks"};
    app.require_subcommand(1);

    std::string network_path, solution_path;
    auto *validate = app.add_subcommand("validate", "Check a network file (and optionally a solution)");
    validate->add_option("file", network_path, "Network JSON")->required();
    validate->add_option("--solution", solution_path, "Solution JSON to check against the network");

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Find a radial configuration");
    solve->add_option("file", solve_args.input, "Network JSON")->required();
    solve->add_option("-o,--output", solve_args.output, "Solution JSON (default stdout)");
    solve->add_option("--trace", solve_args.trace, "Per-iteration CSV trace");
    solve->add_option("--report", solve_args.report, "Solve report JSON");
    solve->add_option("--threads", solve_args.threads, "Partition workers, 0 = auto")->capture_default_str();

    std::size_t max_nodes = 12, max_edges = 18;
    auto *oracle = app.add_subcommand("oracle", "Compare against exhaustive enumeration");
    oracle->add_option("file", network_path, "Network JSON")->required();
    oracle->add_option("--max-nodes", max_nodes)->capture_default_str();
    oracle->add_option("--max-edges", max_edges)->capture_default_str();

    forward::GenSpec spec;
    std::string gen_output;
    auto *gen = app.add_subcommand("gen", "Generate a Watts-Strogatz test network");
    gen->add_option("--n", spec.n)->capture_default_str();
    gen->add_option("--k", spec.k)->capture_default_str();
    gen->add_option("--beta", spec.beta)->capture_default_str();
    gen->add_option("--sources", spec.n_sources)->capture_default_str();
    gen->add_option("--seed", spec.seed)->capture_default_str();
    gen->add_option("--dmin", spec.demand_range.first)->capture_default_str();
    gen->add_option("--dmax", spec.demand_range.second)->capture_default_str();
    gen->add_option("--rmin", spec.resistance_range.first)->capture_default_str();
    gen->add_option("--rmax", spec.resistance_range.second)->capture_default_str();
    gen->add_option("-o,--output", gen_output, "Network JSON (default stdout)");

    std::vector<std::size_t> sizes{120, 240, 400};
    std::size_t seeds = 5;
    std::string bench_output, bench_dat;
    auto *bench = app.add_subcommand("bench", "Median solve time on generated networks");
    bench->add_option("--sizes", sizes)->delimiter(',')->capture_default_str();
    bench->add_option("--seeds", seeds)->capture_default_str();
    bench->add_option("-o,--output", bench_output, "CSV (default stdout)");
    bench->add_option("--dat", bench_dat, "gnuplot data file");

    std::string dot_output;
    auto *dot = app.add_subcommand("export-dot", "Render a solution as Graphviz DOT");
    dot->add_option("solution", solution_path, "Solution JSON")->required();
    dot->add_option("network", network_path, "Network JSON")->required();
    dot->add_option("-o,--output", dot_output, "DOT file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate)
            return cmd_validate(network_path, solution_path);
        if (*solve)
            return cmd_solve(solve_args);
        if (*oracle)
            return cmd_oracle(network_path, max_nodes, max_edges);
        if (*gen)
            return cmd_gen(spec, gen_output);
        if (*bench)
            return cmd_bench(sizes, seeds, bench_output, bench_dat);
        if (*dot)
            return cmd_export_dot(solution_path, network_path, dot_output);
    } catch (const forward::TooLarge &e) {
        spdlog::error("{}", e.what());
        return kTooLarge;
    } catch (const forward::Infeasible &e) {
        spdlog::error("infeasible in partition {} at iteration {}: {}", e.partition(), e.iteration(), e.what());
        return kInfeasible;
    } catch (const forward::InfeasibleSplit &e) {
        spdlog::error("{}", e.what());
        return kInfeasible;
    } catch (const forward::NoCandidate &e) {
        spdlog::error("{}", e.what());
        return kInfeasible;
    } catch (const forward::Error &e) {
        spdlog::error("{}", e.what());
        return kInputError;
    }
    return kInputError;
}
