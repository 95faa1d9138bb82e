// Solves the six-node reference network and prints it as DOT.
//
//   fig2_demo [network.json]

#include <iostream>

#include <forward/forward.hpp>

int main(int argc, char **argv) {
    const std::string path = argc > 1 ? argv[1] : "data/fig2.json";
    try {
        const auto net = forward::load_network_file(path);
        const auto result = forward::solve(net);
        const auto mst = forward::mst_configuration(net);
        std::cout << "forward cost: " << result.report.cost << '\n';
        std::cout << "minimum-coefficient tree cost: " << mst.total_cost << '\n';
        if (net.node_count() <= 12) {
            const auto oracle = forward::enumerate_optimal(net);
            if (oracle.optimum)
                std::cout << "optimal cost: " << oracle.optimal_cost << '\n';
        }
        std::cout << '\n' << forward::to_dot(net, result.configuration);
    } catch (const forward::Error &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
