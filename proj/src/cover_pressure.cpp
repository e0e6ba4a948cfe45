#include "thetapress/cover_pressure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include <spdlog/spdlog.h>

#include "thetapress/errors.hpp"

namespace thetapress {

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> workers;
    std::mutex failure_lock;
    for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (auto i = next++; i < count && !failed; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    failed = true;
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

namespace {

double exponent_of(const CoverCandidate& c, WeightMode mode)
{
    return mode == WeightMode::center_value ? c.center_birkhoff : c.sup_birkhoff;
}

// Keeps, per (restricted mask, length), the candidate with the smallest weight exponent.
// Output order is the order of first appearance.
void dedupe(const PointSet& universe, std::vector<CoverCandidate>& candidates, std::vector<PointSet>& masks,
            WeightMode mode)
{
    std::map<std::pair<std::size_t, PointSet>, std::size_t> seen;
    std::vector<CoverCandidate> out;
    std::vector<PointSet> out_masks;
    for (auto& c : candidates) {
        PointSet m = c.members & universe;
        if (m.empty()) {
            continue;
        }
        auto key = std::make_pair(c.length, m);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), out.size());
            out_masks.push_back(std::move(m));
            out.push_back(std::move(c));
        } else if (exponent_of(c, mode) < exponent_of(out[it->second], mode)) {
            out[it->second] = std::move(c);
        }
    }
    candidates = std::move(out);
    masks = std::move(out_masks);
}

}  // namespace

CoverProblem CoverProblem::build(PointSet universe, std::vector<CoverCandidate> candidates, WeightMode mode,
                                 std::size_t space_size, double potential_norm)
{
    CoverProblem p;
    p.universe = std::move(universe);
    p.mode = mode;
    p.space_size = space_size;
    p.potential_norm = potential_norm;
    p.candidates = std::move(candidates);
    dedupe(p.universe, p.candidates, p.masks, mode);
    return p;
}

bool CoverProblem::feasible() const
{
    PointSet reach(universe.universe_size());
    for (const auto& m : masks) {
        reach |= m;
    }
    return universe.is_subset_of(reach);
}

std::vector<double> CoverProblem::weights(double alpha) const
{
    std::vector<double> w;
    w.reserve(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        w.push_back(std::exp(-alpha * static_cast<double>(candidates[k].length) + exponent(k)));
    }
    return w;
}

std::vector<CoverCandidate> candidates_bowen(const Trajectories& traj, const PointSet& z, double eps,
                                             const ThetaWindow& window, const CandidateOptions& options)
{
    if (!(eps > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    const std::size_t lo = window.min_length();
    const std::size_t hi = window.max_length();
    if (hi > traj.horizon()) {
        throw Error("trajectory horizon " + std::to_string(traj.horizon()) + " shorter than window length " +
                    std::to_string(hi));
    }
    const std::size_t p = traj.size();
    if (static_cast<double>(p) * static_cast<double>(hi - lo + 1) > static_cast<double>(options.limit)) {
        throw CandidateExplosion("Bowen-ball candidates (" + std::to_string(p) + " centres x " +
                                 std::to_string(hi - lo + 1) + " lengths) exceed limit " +
                                 std::to_string(options.limit));
    }
    std::vector<CoverCandidate> out;
    for (std::size_t n = lo; n <= hi; ++n) {
        for (std::size_t x = 0; x < p; ++x) {
            CoverCandidate c;
            c.kind = CandidateKind::bowen_ball;
            c.center = x;
            c.radius = eps;
            c.length = n;
            c.members = traj.ball(n, x, eps);
            if (!c.members.intersects(z)) {
                continue;
            }
            c.sup_birkhoff = -std::numeric_limits<double>::infinity();
            for (auto y : c.members.elements()) {
                c.sup_birkhoff = std::max(c.sup_birkhoff, traj.birkhoff(n, y));
            }
            c.center_birkhoff = traj.birkhoff(n, x);
            out.push_back(std::move(c));
        }
    }
    std::vector<PointSet> masks;
    dedupe(z, out, masks, options.mode);
    return out;
}

std::vector<CoverCandidate> candidates_bowen(const NdsSystem& sys, const PointSet& z, double eps,
                                             const ThetaWindow& window, const CandidateOptions& options)
{
    Trajectories traj(sys, window.max_length());
    return candidates_bowen(traj, z, eps, window, options);
}

std::vector<CoverCandidate> candidates_string(const NdsSystem& sys, const PointSet& z, const OpenCover& cover,
                                              const ThetaWindow& window, const CandidateOptions& options)
{
    const std::size_t lo = window.min_length();
    const std::size_t hi = window.max_length();
    const std::size_t p = sys.size();
    const std::size_t k = cover.size();
    Trajectories traj(sys, hi);

    // at_time[d][c] = {x : f_1^d(x) in U_c}
    std::vector<std::vector<PointSet>> at_time(hi, std::vector<PointSet>(k, PointSet(p)));
    for (std::size_t d = 0; d < hi; ++d) {
        for (std::size_t x = 0; x < p; ++x) {
            auto y = traj.point(d, x);
            for (std::size_t c = 0; c < k; ++c) {
                if (cover[c].contains(y)) {
                    at_time[d][c].insert(x);
                }
            }
        }
    }

    std::vector<CoverCandidate> out;
    std::vector<std::size_t> word;
    std::size_t visited = 0;
    auto dfs = [&](auto&& self, const PointSet& members) -> void {
        const std::size_t depth = word.size();
        for (std::size_t c = 0; c < k; ++c) {
            if (++visited > 10 * options.limit) {
                throw CandidateExplosion("string enumeration exceeded " + std::to_string(10 * options.limit) +
                                         " nodes");
            }
            PointSet next = members & at_time[depth][c];
            if (!next.intersects(z)) {
                continue;
            }
            word.push_back(c);
            const std::size_t len = depth + 1;
            if (len >= lo) {
                if (out.size() >= options.limit) {
                    throw CandidateExplosion("string candidates exceed limit " + std::to_string(options.limit));
                }
                CoverCandidate cand;
                cand.kind = CandidateKind::string_cover;
                cand.word = word;
                cand.length = len;
                cand.members = next;
                cand.sup_birkhoff = -std::numeric_limits<double>::infinity();
                for (auto y : next.elements()) {
                    cand.sup_birkhoff = std::max(cand.sup_birkhoff, traj.birkhoff(len, y));
                }
                cand.center_birkhoff = cand.sup_birkhoff;
                out.push_back(std::move(cand));
            }
            if (len < hi) {
                self(self, next);
            }
            word.pop_back();
        }
    };
    dfs(dfs, PointSet::full(p));
    std::vector<PointSet> masks;
    dedupe(z, out, masks, options.mode);
    return out;
}

CoverSolution min_weight_cover(const CoverProblem& problem, double alpha, SolverKind solver)
{
    auto w = problem.weights(alpha);
    return solve_weighted_cover(problem.universe, problem.masks, w, solver);
}

CriticalExponent critical_alpha(const CoverProblem& problem, double tol, SolverKind solver)
{
    CriticalExponent out;
    out.candidates = problem.candidates.size();
    out.status = pick_solver(solver, problem.universe.count(), problem.candidates.size());
    if (problem.universe.empty()) {
        throw BracketFailure("empty universe: M(alpha) = 0 for every alpha");
    }
    if (!problem.feasible()) {
        throw Infeasible("candidates do not cover the universe");
    }

    CoverSolution at_hi;
    auto above_one = [&](double alpha, CoverSolution* keep) {
        ++out.evaluations;
        auto sol = min_weight_cover(problem, alpha, solver);
        bool above = sol.value > 1.0;
        if (!above && keep != nullptr) {
            *keep = std::move(sol);
        }
        return above;
    };

    double radius = problem.potential_norm + std::log(static_cast<double>(problem.space_size)) + 1.0;
    double lo = -radius;
    double hi = radius;
    int doublings = 0;
    while (!above_one(lo, nullptr)) {
        if (++doublings > 60) {
            throw BracketFailure("M(alpha) <= 1 at alpha = " + std::to_string(lo));
        }
        lo *= 2.0;
    }
    while (above_one(hi, &at_hi)) {
        if (++doublings > 60) {
            throw BracketFailure("M(alpha) > 1 at alpha = " + std::to_string(hi));
        }
        hi *= 2.0;
    }
    while (hi - lo > tol) {
        double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (above_one(mid, &at_hi)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.alpha = lo + (hi - lo) / 2.0;
    out.cover_cardinality = at_hi.chosen.size();
    return out;
}

double PressureProfile::alpha(std::size_t N) const
{
    for (const auto& s : scales) {
        if (s.N == N) {
            return s.alpha;
        }
    }
    throw Error("scale " + std::to_string(N) + " not in profile");
}

namespace {

/// An explicitly requested greedy solver is not worth a warning; a fallback from automatic is.
void finish_profile(PressureProfile& prof, double tol, bool warn_greedy)
{
    prof.lower = std::numeric_limits<double>::infinity();
    prof.upper = -std::numeric_limits<double>::infinity();
    std::size_t greedy = 0;
    for (const auto& s : prof.scales) {
        prof.lower = std::min(prof.lower, s.alpha);
        prof.upper = std::max(prof.upper, s.alpha);
        greedy += s.status == SolveStatus::greedy ? 1 : 0;
    }
    if (greedy > 0 && warn_greedy) {
        spdlog::warn("theta={} eps={}: GREEDY cover solver on {} of {} scales, alpha_N there is an upper estimate",
                     prof.theta.value(), prof.epsilon, greedy, prof.scales.size());
    }
    if (prof.theta.is_zero()) {
        for (std::size_t i = 1; i < prof.scales.size(); ++i) {
            if (prof.scales[i].alpha < prof.scales[i - 1].alpha - 2.0 * tol) {
                prof.monotone_in_N = false;
            }
        }
        if (!prof.monotone_in_N) {
            spdlog::warn("theta=0 profile is not non-decreasing in N (eps={})", prof.epsilon);
        }
    }
}

template <class MakeCandidates>
PressureProfile run_profile(const NdsSystem& sys, const PointSet& z, Theta theta, double eps, std::size_t N_lo,
                            std::size_t N_hi, const ProfileOptions& options, MakeCandidates make)
{
    if (N_lo == 0 || N_lo > N_hi) {
        throw ConfigError("scale window must satisfy 1 <= N_lo <= N_hi");
    }
    PressureProfile prof;
    prof.theta = theta;
    prof.epsilon = eps;
    prof.N_lo = N_lo;
    prof.N_hi = N_hi;
    prof.cap = theta.is_zero() ? (options.cap != 0 ? options.cap : 4 * N_hi) : 0;
    prof.scales.resize(N_hi - N_lo + 1);
    parallel_for(prof.scales.size(), options.jobs, [&](std::size_t i) {
        auto window = ThetaWindow::make(N_lo + i, theta, prof.cap);
        auto problem = CoverProblem::build(z, make(window), options.mode, sys.size(), sys.potential_norm());
        auto crit = critical_alpha(problem, options.tol, options.solver);
        prof.scales[i] = ScaleResult{window.N,           crit.alpha,          crit.status,
                                     crit.candidates,    crit.cover_cardinality, window.min_length(),
                                     window.max_length()};
    });
    finish_profile(prof, options.tol, options.solver == SolverKind::automatic);
    return prof;
}

std::size_t horizon_for(Theta theta, std::size_t N_hi, std::size_t cap)
{
    return ThetaWindow::make(N_hi, theta, theta.is_zero() ? (cap != 0 ? cap : 4 * N_hi) : 0).max_length();
}

}  // namespace

PressureProfile pressure_profile(const NdsSystem& sys, const PointSet& z, double eps, Theta theta, std::size_t N_lo,
                                 std::size_t N_hi, const ProfileOptions& options)
{
    if (N_lo == 0 || N_lo > N_hi) {
        throw ConfigError("scale window must satisfy 1 <= N_lo <= N_hi");
    }
    Trajectories traj(sys, horizon_for(theta, N_hi, options.cap));
    CandidateOptions copt{options.mode, options.candidate_limit};
    return run_profile(sys, z, theta, eps, N_lo, N_hi, options,
                       [&](const ThetaWindow& w) { return candidates_bowen(traj, z, eps, w, copt); });
}

PressureProfile pressure_profile(const NdsSystem& sys, const PointSet& z, const OpenCover& cover, Theta theta,
                                 std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options)
{
    CandidateOptions copt{options.mode, options.candidate_limit};
    return run_profile(sys, z, theta, cover.mesh(sys.metric()), N_lo, N_hi, options,
                       [&](const ThetaWindow& w) { return candidates_string(sys, z, cover, w, copt); });
}

PressureProfile pesin_pitskel(const NdsSystem& sys, const PointSet& z, double eps, std::size_t N_lo, std::size_t N_hi,
                              std::size_t cap, const ProfileOptions& options)
{
    auto opt = options;
    opt.cap = cap;
    return pressure_profile(sys, z, eps, Theta(0, 1), N_lo, N_hi, opt);
}

namespace {

template <class MakeCandidates>
CapacityPressures run_capacity(const NdsSystem& sys, const PointSet& z, std::size_t N_lo, std::size_t N_hi,
                               SolverKind solver, MakeCandidates make)
{
    if (N_lo == 0 || N_lo > N_hi) {
        throw ConfigError("scale window must satisfy 1 <= N_lo <= N_hi");
    }
    CapacityPressures out;
    out.lower = std::numeric_limits<double>::infinity();
    out.upper = -std::numeric_limits<double>::infinity();
    for (std::size_t N = N_lo; N <= N_hi; ++N) {
        auto window = ThetaWindow::make(N, Theta(1, 1));
        auto problem = CoverProblem::build(z, make(window), WeightMode::sup_value, sys.size(), sys.potential_norm());
        // At alpha = 0 every weight is exp(sup S_N phi), so the cover value is Lambda itself.
        auto sol = min_weight_cover(problem, 0.0, solver);
        CapacityScale s{N, sol.value, std::log(sol.value) / static_cast<double>(N), sol.status};
        out.lower = std::min(out.lower, s.value);
        out.upper = std::max(out.upper, s.value);
        out.scales.push_back(s);
    }
    return out;
}

}  // namespace

CapacityPressures capacity_pressures(const NdsSystem& sys, const PointSet& z, double eps, std::size_t N_lo,
                                     std::size_t N_hi, SolverKind solver)
{
    Trajectories traj(sys, N_hi);
    return run_capacity(sys, z, N_lo, N_hi, solver,
                        [&](const ThetaWindow& w) { return candidates_bowen(traj, z, eps, w); });
}

CapacityPressures capacity_pressures(const NdsSystem& sys, const PointSet& z, const OpenCover& cover,
                                     std::size_t N_lo, std::size_t N_hi, SolverKind solver)
{
    return run_capacity(sys, z, N_lo, N_hi, solver,
                        [&](const ThetaWindow& w) { return candidates_string(sys, z, cover, w); });
}

std::vector<PressureProfile> theta_sweep(const NdsSystem& sys, const PointSet& z, double eps,
                                         const std::vector<Theta>& grid, std::size_t N_lo, std::size_t N_hi,
                                         const ProfileOptions& options)
{
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw ConfigError("theta grid must be sorted");
    }
    auto opt = options;
    if (opt.cap == 0) {
        opt.cap = 4 * N_hi;
        for (const auto& t : grid) {
            if (!t.is_zero()) {
                opt.cap = std::max(opt.cap, ThetaWindow::make(N_hi, t).max_length());
            }
        }
    }
    std::vector<PressureProfile> out(grid.size());
    auto inner = opt;
    inner.jobs = 1;
    parallel_for(grid.size(), opt.jobs,
                 [&](std::size_t i) { out[i] = pressure_profile(sys, z, eps, grid[i], N_lo, N_hi, inner); });
    return out;
}

}  // namespace thetapress
