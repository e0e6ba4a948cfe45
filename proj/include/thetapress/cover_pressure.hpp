#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"
#include "thetapress/set_cover.hpp"
#include "thetapress/theta.hpp"

namespace thetapress {

/// Which Birkhoff value enters a candidate weight: the sup over the candidate's members,
/// or the value at the ball centre.
enum class WeightMode { sup_value, center_value };

inline constexpr std::size_t default_candidate_limit = 1'000'000;
inline constexpr double default_tolerance = 1e-6;

/// Weighted set-cover instance M(Z, alpha, ...) at one scale.
///
/// `masks[k]` is candidate k restricted to the universe. Candidates that miss the
/// universe are removed, and among candidates with the same restricted mask and the
/// same length only the one with the smallest weight exponent is kept.
struct CoverProblem {
    PointSet universe;
    std::vector<CoverCandidate> candidates;
    std::vector<PointSet> masks;
    WeightMode mode = WeightMode::sup_value;
    /// |X| and the potential sup-norm; together they fix the bisection bracket.
    std::size_t space_size = 1;
    double potential_norm = 0.0;

    static CoverProblem build(PointSet universe, std::vector<CoverCandidate> candidates, WeightMode mode,
                              std::size_t space_size, double potential_norm);

    bool feasible() const;
    double exponent(std::size_t k) const
    {
        return mode == WeightMode::center_value ? candidates[k].center_birkhoff : candidates[k].sup_birkhoff;
    }
    std::vector<double> weights(double alpha) const;
};

struct CandidateOptions {
    WeightMode mode = WeightMode::sup_value;
    std::size_t limit = default_candidate_limit;
};

/// All Bowen balls B_n(x, eps), x in X, n admissible in `window`.
std::vector<CoverCandidate> candidates_bowen(const NdsSystem& sys, const PointSet& z, double eps,
                                             const ThetaWindow& window, const CandidateOptions& options = {});

/// Same as above, reusing precomputed trajectories (horizon >= window.max_length()).
std::vector<CoverCandidate> candidates_bowen(const Trajectories& traj, const PointSet& z, double eps,
                                             const ThetaWindow& window, const CandidateOptions& options = {});

/// All strings over `cover` with admissible length whose set X(U) meets Z.
std::vector<CoverCandidate> candidates_string(const NdsSystem& sys, const PointSet& z, const OpenCover& cover,
                                              const ThetaWindow& window, const CandidateOptions& options = {});

/// M(Z, alpha, ...) = min over covering subfamilies of sum exp(-alpha n + s).
CoverSolution min_weight_cover(const CoverProblem& problem, double alpha, SolverKind solver);

struct CriticalExponent {
    double alpha = 0.0;
    SolveStatus status = SolveStatus::exact;
    std::size_t candidates = 0;
    std::size_t cover_cardinality = 0;
    std::size_t evaluations = 0;
};

/// The root of M(alpha) = 1 by bracketing and bisection.
///
/// The initial bracket [-(|phi| + log P + 1), |phi| + log P + 1] depends only on the
/// space and the potential, so two problems on the same system bisect through the
/// same sequence of trial points; this makes pointwise M inequalities carry over to
/// the roots exactly. The bracket is doubled if it ever fails to straddle the root.
CriticalExponent critical_alpha(const CoverProblem& problem, double tol, SolverKind solver);

/// Per-scale record inside a profile.
struct ScaleResult {
    std::size_t N = 0;
    double alpha = 0.0;
    SolveStatus status = SolveStatus::exact;
    std::size_t candidates = 0;
    std::size_t cover_cardinality = 0;
    std::size_t min_length = 0;
    std::size_t max_length = 0;
};

struct PressureProfile {
    Theta theta;
    double epsilon = 0.0;
    std::size_t N_lo = 0;
    std::size_t N_hi = 0;
    /// Length cap in force when theta = 0 (0 otherwise).
    std::size_t cap = 0;
    std::vector<ScaleResult> scales;
    /// min and max of alpha_N over [N_lo, N_hi].
    double lower = 0.0;
    double upper = 0.0;
    /// theta = 0 only: alpha_N non-decreasing in N within 2 tol.
    bool monotone_in_N = true;

    double alpha(std::size_t N) const;
};

struct ProfileOptions {
    SolverKind solver = SolverKind::automatic;
    double tol = default_tolerance;
    WeightMode mode = WeightMode::sup_value;
    /// Length cap for theta = 0; 0 selects 4 * N_hi.
    std::size_t cap = 0;
    std::size_t candidate_limit = default_candidate_limit;
    /// Worker threads across scales; results do not depend on it.
    std::size_t jobs = 1;
};

/// Bowen-ball pressure profile over scales N_lo..N_hi.
PressureProfile pressure_profile(const NdsSystem& sys, const PointSet& z, double eps, Theta theta, std::size_t N_lo,
                                 std::size_t N_hi, const ProfileOptions& options = {});

/// Open-cover (string) pressure profile over scales N_lo..N_hi.
PressureProfile pressure_profile(const NdsSystem& sys, const PointSet& z, const OpenCover& cover, Theta theta,
                                 std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options = {});

/// theta = 0 profile; `monotone_in_N` records whether alpha_N was non-decreasing.
PressureProfile pesin_pitskel(const NdsSystem& sys, const PointSet& z, double eps, std::size_t N_lo, std::size_t N_hi,
                              std::size_t cap = 0, const ProfileOptions& options = {});

struct CapacityScale {
    std::size_t N = 0;
    /// Lambda(Z, phi, N): minimum of sum exp(sup S_N phi) over covers by length-N candidates.
    double lambda = 0.0;
    /// (1/N) log Lambda.
    double value = 0.0;
    SolveStatus status = SolveStatus::exact;
};

struct CapacityPressures {
    std::vector<CapacityScale> scales;
    double lower = 0.0;
    double upper = 0.0;
};

/// Lower and upper capacity pressures through (1/N) log Lambda, no root finding.
CapacityPressures capacity_pressures(const NdsSystem& sys, const PointSet& z, double eps, std::size_t N_lo,
                                     std::size_t N_hi, SolverKind solver = SolverKind::automatic);
CapacityPressures capacity_pressures(const NdsSystem& sys, const PointSet& z, const OpenCover& cover,
                                     std::size_t N_lo, std::size_t N_hi, SolverKind solver = SolverKind::automatic);

/// Profiles for every theta of a sorted grid. The theta = 0 cap defaults to the larger
/// of 4 N_hi and the longest admissible length of any positive theta in the grid, so
/// the theta = 0 candidate family contains every other family at each scale.
std::vector<PressureProfile> theta_sweep(const NdsSystem& sys, const PointSet& z, double eps,
                                         const std::vector<Theta>& grid, std::size_t N_lo, std::size_t N_hi,
                                         const ProfileOptions& options = {});

/// Runs `count` independent jobs on up to `jobs` threads; job i writes only slot i.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace thetapress
