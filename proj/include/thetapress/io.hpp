#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetapress/harness.hpp"
#include "thetapress/measure.hpp"
#include "thetapress/nds.hpp"
#include "thetapress/set_cover.hpp"
#include "thetapress/theta.hpp"

namespace thetapress {

inline constexpr int schema_version = 1;

/// Everything a subcommand needs, after validation.
struct RunConfig {
    std::optional<NdsSystem> system;
    PointSet z;
    std::vector<Theta> theta_grid{Theta(0, 1), Theta(1, 2), Theta(1, 1)};
    /// Strictly decreasing.
    std::vector<double> eps_ladder{0.2};
    std::size_t N_lo = 2;
    std::size_t N_hi = 6;
    /// Length cap for theta = 0; 0 picks the default.
    std::size_t cap = 0;
    SolverKind solver = SolverKind::automatic;
    double tol = default_tolerance;
    WeightMode mode = WeightMode::sup_value;
    std::filesystem::path out = "out";
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    std::vector<DiscreteMeasure> measures;
    /// Used by `verify`; an absent suite section means the built-in battery.
    SuiteConfig suite;

    ProfileOptions profile_options() const;
};

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::filesystem::path> out;
    std::optional<SolverKind> solver;
    std::optional<double> tol;
    std::optional<std::size_t> jobs;
    std::optional<std::uint64_t> seed;
};

/// Parses a config document. Relative file references resolve against `base_dir`.
/// Throws ConfigError (with line and column for malformed JSON) or InvalidSystem.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".",
                       const Overrides& overrides = {}, std::string_view origin = "config");
RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// A bare system definition document.
NdsSystem parse_system(std::string_view text, const std::filesystem::path& base_dir = ".",
                       std::string_view origin = "system");

/// The JSON schema of the config format.
std::string config_schema();

}  // namespace thetapress
