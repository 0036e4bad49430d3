#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "noether/error.hpp"
#include "pipeline.hpp"

namespace {

std::uint64_t seed_from_env() {
    const char* env = std::getenv("NOETHER_SEED");
    if (env == nullptr || *env == '\0') return 1;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        std::cerr << "warning: ignoring malformed NOETHER_SEED\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace noether::cli;

    CLI::App app{"Variational symmetries and integrals of motion for higher-order Lagrangians"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string path;
    std::string output;
    std::string format = "human";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    int max_order = noether::kDefaultOrderCap;
    bool timings = false;

    app.add_option("--seed", seed, "Seed for randomized checks (default: $NOETHER_SEED or 1)");
    app.add_option("--output", output, "Write the report to this file instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--tol-abs", tol_abs, "Absolute drift tolerance (overrides the problem file)");
    app.add_option("--tol-rel", tol_rel, "Relative drift tolerance (overrides the problem file)");
    app.add_option("--max-order", max_order, "Cap on derivative order in symbolic calculus")
        ->check(CLI::Range(2, 32));
    app.add_flag("--timings", timings, "Include wall-clock timings in the report");

    auto* solve = app.add_subcommand("solve", "Find symmetries, charges and check expected integrals");
    auto* transform = app.add_subcommand("transform", "Run the cyclic-coordinate workflow of [transform]");
    auto* verify = app.add_subcommand("verify", "Integrate and measure drift of expected integrals");
    for (auto* sub : {solve, transform, verify}) {
        sub->add_option("file", path, "Problem file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    RunOptions opt;
    opt.seed = seed ? *seed : seed_from_env();
    opt.max_order = max_order;
    opt.tol_abs = tol_abs;
    opt.tol_rel = tol_rel;
    opt.timings = timings;

    const std::string command = app.get_subcommands().front()->get_name();
    RunResult result;
    try {
        const ProblemFile problem = load_problem(path);
        if (command == "solve") {
            result = run_solve(problem, opt);
        } else if (command == "transform") {
            result = run_transform(problem, opt);
        } else {
            result = run_verify(problem, opt);
        }
    } catch (const noether::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        result = error_result(command, path, e);
    }

    const std::string text = format == "machine" ? render_machine(result.report) : render_human(result.report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << output << "'\n";
            return kInputError;
        }
        out << text;
    }
    return result.exit_code;
}
