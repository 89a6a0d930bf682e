#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mcmp/errors.hpp"
#include "mcmp/instance.hpp"
#include "mcmp/oracle.hpp"
#include "mcmp/solver.hpp"

namespace {

void write_solution_file(const std::string& path, const mcmp::MulticutInstance& instance,
                         const mcmp::EdgeLabeling& labeling, const mcmp::Partition& partition) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    mcmp::write_solution(out, instance, labeling, partition);
    if (!out.good())
        throw std::runtime_error("failed writing '" + path + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Minimum cost multicut solver: dual decomposition with message passing,\n"
                 "cycle and odd-wheel cutting planes, and GAEC+KLj rounding."};
    app.require_subcommand(1);

    std::string input, log_path, plot_path, solution_path;
    mcmp::SolveConfig config;
    std::string tighten = "cycles";

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance");
    solve_cmd->add_option("-i,--input", input, "instance file")->required();
    solve_cmd->add_option("--max-iter", config.max_iterations, "iteration limit");
    solve_cmd->add_option("--sep-interval", config.separation_interval,
                          "separate cutting planes every N iterations");
    solve_cmd->add_option("--round-interval", config.rounding_interval,
                          "round a primal solution every N iterations");
    solve_cmd->add_option("--epsilon", config.epsilon, "separation threshold");
    solve_cmd->add_option("--tighten", tighten, "cycles | cycles+oddwheels")
        ->check(CLI::IsMember({"cycles", "cycles+oddwheels"}));
    solve_cmd->add_option("--time-limit", config.time_limit_seconds, "time limit in seconds");
    solve_cmd->add_option("--log", log_path, "write convergence records as CSV");
    solve_cmd->add_option("--plot", plot_path, "write a convergence plot as SVG");
    solve_cmd->add_option("--solution", solution_path, "write the best solution found");

    std::string oracle_input;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact brute-force solve (<= 12 nodes)");
    oracle_cmd->group(""); // debugging aid, not advertised in --help
    oracle_cmd->add_option("-i,--input", oracle_input, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (solve_cmd->parsed()) {
        config.tighten = tighten == "cycles+oddwheels" ? mcmp::TightenMode::cycles_and_odd_wheels
                                                       : mcmp::TightenMode::cycles;
        mcmp::MulticutInstance instance = mcmp::load_instance(input);
        mcmp::SolveResult result = mcmp::solve(instance, config);
        if (!log_path.empty())
            mcmp::write_csv(result.records, log_path);
        if (!plot_path.empty())
            mcmp::write_svg(result.records, plot_path);
        if (!solution_path.empty())
            write_solution_file(solution_path, instance, result.best_labeling,
                                result.best_partition);
        std::cout << std::setprecision(9) << "LB=" << result.lower_bound
                  << " UB=" << result.upper_bound << " status=" << mcmp::to_string(result.status)
                  << "\n";
        return 0;
    }

    mcmp::MulticutInstance instance = mcmp::load_instance(oracle_input);
    mcmp::ExactSolution exact = mcmp::exact_optimum(instance);
    std::cout << std::setprecision(9) << "OPT=" << exact.cost << "\n";
    for (std::size_t v = 0; v < exact.partition.component_id.size(); ++v)
        std::cout << v << ' ' << exact.partition.component_id[v] << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mcmp::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
