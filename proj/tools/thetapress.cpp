#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "thetapress/commands.hpp"
#include "thetapress/set_cover.hpp"

namespace {

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("thetapress");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("THETAPRESS_LOG")) {
        auto level = spdlog::level::from_str(env);
        // from_str maps unknown names to off; only accept a real match.
        if (level != spdlog::level::off || std::string(env) == "off") {
            spdlog::set_level(level);
        } else {
            spdlog::warn("THETAPRESS_LOG='{}' is not a log level; using warn", env);
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Finite-scale theta-intermediate topological pressures of nonautonomous systems"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::string solver;
    double tol = 0.0;
    std::size_t jobs = 0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", config, "config file (JSON, schema_version 1)")->check(CLI::ExistingFile);
        if (config_required) {
            opt->required();
        }
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--solver", solver, "cover solver")->check(CLI::IsMember({"exact", "greedy", "auto", "automatic"}));
        cmd->add_option("--tol", tol, "bisection tolerance on alpha")->check(CLI::NonNegativeNumber);
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "seed for every random choice");
    };
    add_common(app.add_subcommand("pressure", "theta sweep of cover pressures: profiles.csv, alpha_ladder.csv, SVG"), true);
    add_common(app.add_subcommand("classical", "spanning/separated pressures and sup-entropy: classical.csv"), true);
    add_common(app.add_subcommand("measure", "measure pressures and variational checks: measure.csv"), true);
    add_common(app.add_subcommand("verify", "run the property suite: verify_report.json, exit 1 on failure"), false);
    app.add_subcommand("schema", "print the config JSON schema");

    CLI11_PARSE(app, argc, argv);
    auto* cmd = app.get_subcommands().front();

    thetapress::Overrides overrides;
    if (cmd->get_name() != "schema") {
        if (cmd->count("--out")) {
            overrides.out = out;
        }
        if (cmd->count("--solver")) {
            overrides.solver = thetapress::parse_solver(solver);
        }
        if (cmd->count("--tol")) {
            overrides.tol = tol;
        }
        if (cmd->count("--jobs")) {
            overrides.jobs = jobs;
        }
        if (cmd->count("--seed")) {
            overrides.seed = seed;
        }
    }
    std::optional<std::filesystem::path> path;
    if (!config.empty()) {
        path = config;
    }
    return thetapress::run_command(cmd->get_name(), path, overrides, std::cout, std::cerr);
}
