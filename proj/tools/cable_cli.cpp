#include "cable/commands.hpp"
#include "cable/report.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Natural frequencies and tension identification for inclined sagged cables"};
    app.set_version_flag("--version", std::string(cable::tool_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int repetitions = 0;
    bool quiet = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "natural frequencies of the configured cable"},
        {"identify", "identify tension and stiffness parameters by particle swarm"},
        {"reference", "string-theory and beam-regression tension estimates"},
        {"sweep", "frequencies over a boundary-stiffness grid, with isolines"},
        {"static", "static profile under self-weight"},
        {"freq-count-study", "identification with 7 down to 1 frequencies"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides run.out_dir)");
        sub->add_option("--seed", seed, "base PRNG seed (overrides pso.seed)");
        sub->add_option("--repetitions", repetitions, "independent runs (overrides run.repetitions)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--quiet", quiet, "suppress progress output");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cable::kExitOk : cable::kExitUsage;
    }

    cable::CommandOptions options;
    options.quiet = quiet;
    for (CLI::App* sub : subs) {
        if (!sub->parsed()) continue;
        if (sub->count("--out")) options.out_dir = out_dir;
        if (sub->count("--seed")) options.seed = seed;
        if (sub->count("--repetitions")) options.repetitions = repetitions;
        return cable::run_command(sub->get_name(), config_path, options, std::cout, std::cerr);
    }
    return cable::kExitUsage;
}
