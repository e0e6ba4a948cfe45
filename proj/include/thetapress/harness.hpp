#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "thetapress/cover_pressure.hpp"
#include "thetapress/factor.hpp"
#include "thetapress/nds.hpp"

namespace thetapress {

/// Scale window, radius and solver settings shared by the checks.
struct CheckParams {
    Theta theta{1, 2};
    double eps = 0.2;
    std::size_t N_lo = 2;
    std::size_t N_hi = 4;
    ProfileOptions profile;
};

struct InstanceResult {
    std::string instance;
    /// The checked quantity and the bound it must not exceed.
    double observed = 0.0;
    double allowed = 0.0;
    bool passed = true;
    std::string note;
};

/// Outcome of one check over one or more instances. A check passes on an instance
/// when observed <= allowed; `worst_margin` is the largest observed - allowed.
struct CheckReport {
    std::string name;
    /// Exact checks allow nothing beyond the bisection tolerance.
    bool exact = false;
    /// Diagnostics are reported but never fail the run.
    bool diagnostic = false;
    std::size_t instances = 0;
    std::size_t passes = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();
    std::vector<InstanceResult> details;

    void add(const std::string& instance, double observed, double allowed, std::string note = {});
    void add_error(const std::string& instance, const std::string& message);
    void merge(const CheckReport& other);
    std::size_t failures() const { return instances - passes; }
    bool hard_failure() const { return !diagnostic && failures() > 0; }
};

/// The power system f^m: step i is f_{im} o ... o f_{(i-1)m+1} with potential
/// sum_{l<m} phi_{(i-1)m+1+l}(f_{(i-1)m+1}^l x). Prefix ceil(r/m), period q/gcd(q,m).
NdsSystem derived_system_power(const NdsSystem& sys, std::size_t m);

/// upper(f^m, S_m phi) <= m upper(f, phi) + slack, computed with centre-value weights;
/// the f side runs on the scales mN. The reverse gap is attached as a note.
CheckReport check_power_rule(const NdsSystem& sys, const PointSet& z, std::size_t m, const CheckParams& params);

/// Compares the shifted systems f_k on Z and f_{k+1} on f_k(Z), centre-value weights.
/// Asserted direction: alpha(f_{k+1}, f_k Z, N) <= alpha(f_k, Z, N + 1) + slack.
CheckReport check_time_shift(const NdsSystem& sys, const PointSet& z, std::size_t k, const CheckParams& params);

/// P(f1 o f2, Z, phi + phi o f2) against P(f2 o f1, Z, phi + phi o f1).
/// Throws InvalidInvariance unless Z is forward or backward invariant under both maps.
CheckReport check_commuting(const DistanceMatrix& metric, const MapTable& f1, const MapTable& f2, const PointSet& z,
                            const std::vector<double>& phi, const CheckParams& params);

/// Semiconjugacy inequality with the measured radius pairing, plus the reverse
/// inequality for bijections; isometric bijections must agree to 2 tol at every scale.
CheckReport check_conjugacy(const FactorMap& fm, const PointSet& z, const CheckParams& params);

/// alpha(f, Z, phi o pi, N) <= alpha(g, pi Z, phi, N) + a + slack, where a is the
/// largest fibre sup-entropy and the slack covers the finite-scale fibre count and
/// the potential's oscillation.
CheckReport check_factor_supentropy(const FactorMap& fm, const PointSet& z, const CheckParams& params);

/// The closure of a finite set is itself; the two profiles must be identical.
CheckReport check_closure(const NdsSystem& sys, const PointSet& z, const CheckParams& params);

/// The cover-pressure invariants (theta monotonicity, additive constant, Lipschitz
/// bound, potential monotonicity and entropy sandwich, subset and union rules,
/// scaling, greedy/exact sandwich, centre/sup modes, comparison bound, capacity
/// equivalence, Pesin-Pitskel monotonicity).
std::vector<CheckReport> check_cover_invariants(const NdsSystem& sys, const PointSet& z, const CheckParams& params,
                                                std::uint64_t seed);

/// One battery entry. Optional parts switch on the checks that need them.
struct SuiteInstance {
    std::string name;
    NdsSystem system;
    PointSet z;
    /// Overrides CheckParams::eps when positive.
    double eps = 0.0;
    std::optional<FactorMap> factor;
    /// Commuting pair for check_commuting, on the instance's metric and static potential.
    std::optional<std::pair<MapTable, MapTable>> commuting;
};

struct SuiteConfig {
    std::vector<SuiteInstance> battery;
    CheckParams params;
    std::uint64_t seed = 1;
    /// Names of checks to run; empty runs all.
    std::vector<std::string> checks;
    std::size_t jobs = 1;
};

struct SuiteResult {
    std::vector<CheckReport> reports;
    bool hard_failure = false;
};

/// The built-in five-system battery.
std::vector<SuiteInstance> default_battery();

/// Runs every selected check on every instance, merging reports in instance order.
/// Errors inside one check are recorded as failures of that check only.
SuiteResult run_suite(const SuiteConfig& config);

}  // namespace thetapress
