#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "thetapress/cover_pressure.hpp"
#include "thetapress/io.hpp"

namespace thetapress {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    /// A hard assertion (verify) or variational check (measure) failed.
    exit_check_failed = 1,
    /// Malformed config or invalid system.
    exit_config = 2,
    /// Infeasible cover problem or candidate explosion.
    exit_compute = 3,
    exit_internal = 4,
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Writes profiles.csv, alpha_ladder.csv and pressure_vs_theta.svg into cfg.out.
int cmd_pressure(const RunConfig& cfg, std::ostream& out);
/// Writes classical.csv.
int cmd_classical(const RunConfig& cfg, std::ostream& out);
/// Writes measure.csv and variational.csv.
int cmd_measure(const RunConfig& cfg, std::ostream& out);
/// Writes verify_report.json and prints a table.
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// P(theta) curves, one lower and one upper polyline per epsilon, in a fixed 800x500 viewport.
std::string render_pressure_svg(const std::vector<std::vector<PressureProfile>>& sweeps);

/// Loads the config (or the defaults when `config` is empty, verify only), runs the
/// subcommand and maps exceptions onto exit codes.
int run_command(std::string_view name, const std::optional<std::filesystem::path>& config,
                const Overrides& overrides, std::ostream& out, std::ostream& err);

}  // namespace thetapress
