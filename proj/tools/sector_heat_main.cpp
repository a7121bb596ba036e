#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sector_heat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear heat equation with absorption on sectors"};
    app.require_subcommand(1, 1);
    std::string config, out;
    int jobs = 0;
    const char* help[][2] = {
        {"solve", "run the solver and write snapshot tables"},
        {"verify", "kernel identities, bounds, comparison and elliptic checks"},
        {"asymptotics", "large-time diagnostics of the configured regime"},
        {"eigen", "sector-ball eigenvalue against the Bessel oracle"},
        {"report", "collect the reports of an output directory"},
    };
    for (auto& h : help) {
        CLI::App* sub = app.add_subcommand(h[0], h[1]);
        sub->add_option("--config", config, "key = value configuration file");
        sub->add_option("--out", out, "output directory (overrides output.dir)");
        sub->add_option("--jobs", jobs, "worker threads (default: SECTOR_HEAT_JOBS or 1)")
            ->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sector_heat::kExitConfig;
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    return sector_heat::run_cli(sub, config, out, jobs, std::cout, std::cerr);
}
