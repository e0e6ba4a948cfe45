#include "thetapress/classical.hpp"

#include <algorithm>
#include <cmath>

#include "thetapress/cover_pressure.hpp"
#include "thetapress/errors.hpp"

namespace thetapress {

namespace {

void require_nonempty(const PointSet& z)
{
    if (z.empty()) {
        throw ConfigError("Z must be nonempty");
    }
}

WeightedWitness spanning_from(const Trajectories& traj, const PointSet& z, std::size_t n, double eps, bool weighted,
                              SolverKind solver)
{
    const std::size_t p = traj.size();
    std::vector<PointSet> balls;
    std::vector<double> weights;
    balls.reserve(p);
    for (std::size_t x = 0; x < p; ++x) {
        balls.push_back(traj.ball(n, x, eps, true));
        weights.push_back(weighted ? std::exp(traj.birkhoff(n, x)) : 1.0);
    }
    auto sol = solve_weighted_cover(z, balls, weights, solver);
    WeightedWitness out{sol.value, sol.status, std::move(sol.chosen)};
    std::sort(out.points.begin(), out.points.end());
    return out;
}

WeightedWitness separated_from(const Trajectories& traj, const PointSet& z, std::size_t n, double eps, bool weighted,
                               SolverKind solver)
{
    auto pts = z.elements();
    const std::size_t k = pts.size();
    std::vector<PointSet> adjacency(k, PointSet(k));
    std::vector<double> weights(k);
    for (std::size_t a = 0; a < k; ++a) {
        weights[a] = weighted ? std::exp(traj.birkhoff(n, pts[a])) : 1.0;
        for (std::size_t b = 0; b < k; ++b) {
            if (a != b && traj.bowen(n, pts[a], pts[b]) <= eps) {
                adjacency[a].insert(b);
            }
        }
    }
    auto sol = max_weight_independent_set(adjacency, weights, solver);
    WeightedWitness out{sol.value, sol.status, {}};
    for (auto i : sol.chosen) {
        out.points.push_back(pts[i]);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

SpanningResult cell_from(const Trajectories& traj, const PointSet& z, std::size_t n, double eps, SolverKind solver)
{
    SpanningResult r;
    r.n = n;
    r.epsilon = eps;
    r.spanning = spanning_from(traj, z, n, eps, true, solver);
    r.separated = separated_from(traj, z, n, eps, true, solver);
    r.spanning_value = r.spanning.value;
    r.separated_value = r.separated.value;
    return r;
}

std::vector<ClassicalSurrogate> surrogates(const std::vector<SpanningResult>& cells,
                                           const std::vector<double>& eps_ladder, std::size_t per_eps)
{
    std::vector<ClassicalSurrogate> out;
    for (std::size_t e = 0; e < eps_ladder.size(); ++e) {
        ClassicalSurrogate s{eps_ladder[e], -std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
        for (std::size_t i = 0; i < per_eps; ++i) {
            const auto& c = cells[e * per_eps + i];
            auto n = static_cast<double>(c.n);
            s.spanning = std::max(s.spanning, std::log(c.spanning_value) / n);
            s.separated = std::max(s.separated, std::log(c.separated_value) / n);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<SpanningResult> run_cells(const NdsSystem& sys, const PointSet& z, const std::vector<double>& eps_ladder,
                                      std::size_t n_lo, std::size_t n_hi, const ClassicalOptions& options)
{
    Trajectories traj(sys, n_hi);
    const std::size_t per_eps = n_hi - n_lo + 1;
    std::vector<SpanningResult> cells(eps_ladder.size() * per_eps);
    parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
        cells[i] = cell_from(traj, z, n_lo + i % per_eps, eps_ladder[i / per_eps], options.solver);
    });
    return cells;
}

void validate_ladder(const std::vector<double>& eps_ladder, std::size_t n_lo, std::size_t n_hi)
{
    if (eps_ladder.empty()) {
        throw ConfigError("epsilon ladder must be nonempty");
    }
    for (auto e : eps_ladder) {
        if (!(e > 0.0)) {
            throw ConfigError("epsilon values must be positive");
        }
    }
    if (n_lo == 0 || n_lo > n_hi) {
        throw ConfigError("n window must satisfy 1 <= n_lo <= n_hi");
    }
}

}  // namespace

WeightedWitness min_spanning(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps, bool weighted,
                             SolverKind solver)
{
    require_nonempty(z);
    return spanning_from(Trajectories(sys, n), z, n, eps, weighted, solver);
}

WeightedWitness max_separated(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps, bool weighted,
                              SolverKind solver)
{
    require_nonempty(z);
    return separated_from(Trajectories(sys, n), z, n, eps, weighted, solver);
}

SpanningResult spanning_cell(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps, SolverKind solver)
{
    require_nonempty(z);
    return cell_from(Trajectories(sys, n), z, n, eps, solver);
}

ClassicalReport classical_pressure(const NdsSystem& sys, const PointSet& z, const std::vector<double>& eps_ladder,
                                   std::size_t n_lo, std::size_t n_hi, const ClassicalOptions& options)
{
    require_nonempty(z);
    validate_ladder(eps_ladder, n_lo, n_hi);
    const std::size_t per_eps = n_hi - n_lo + 1;
    ClassicalReport report;
    report.cells = run_cells(sys, z, eps_ladder, n_lo, n_hi, options);
    report.pressure = surrogates(report.cells, eps_ladder, per_eps);
    if (options.with_entropy) {
        auto flat = sys.with_potential(std::vector<double>(sys.size(), 0.0));
        report.entropy = surrogates(run_cells(flat, z, eps_ladder, n_lo, n_hi, options), eps_ladder, per_eps);
    }
    return report;
}

DistanceMatrix sup_bowen_metric(const NdsSystem& sys, std::size_t n)
{
    const std::size_t p = sys.size();
    DistanceMatrix out(p);
    const std::size_t starts = sys.prefix_length() + sys.period();
    std::vector<std::size_t> orbit(p);
    for (std::size_t i = 1; i <= starts; ++i) {
        for (std::size_t x = 0; x < p; ++x) {
            orbit[x] = x;
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t x = 0; x < p; ++x) {
                for (std::size_t y = x + 1; y < p; ++y) {
                    double d = sys.metric()(orbit[x], orbit[y]);
                    if (d > out(x, y)) {
                        out.set(x, y, d);
                    }
                }
            }
            if (j + 1 < n) {
                const auto& f = sys.map_at(i + j);
                for (auto& v : orbit) {
                    v = f[v];
                }
            }
        }
    }
    return out;
}

SupEntropyResult sup_entropy(const NdsSystem& sys, const PointSet& z, const std::vector<double>& eps_ladder,
                             std::size_t n_lo, std::size_t n_hi, SolverKind solver)
{
    require_nonempty(z);
    validate_ladder(eps_ladder, n_lo, n_hi);
    const std::size_t p = sys.size();
    SupEntropyResult out;
    out.value = -std::numeric_limits<double>::infinity();
    std::vector<DistanceMatrix> metrics;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        metrics.push_back(sup_bowen_metric(sys, n));
    }
    for (auto eps : eps_ladder) {
        for (std::size_t n = n_lo; n <= n_hi; ++n) {
            const auto& d = metrics[n - n_lo];
            std::vector<PointSet> balls(p, PointSet(p));
            for (std::size_t x = 0; x < p; ++x) {
                for (std::size_t y = 0; y < p; ++y) {
                    if (d(x, y) <= eps) {
                        balls[x].insert(y);
                    }
                }
            }
            std::vector<double> ones(p, 1.0);
            auto sol = solve_weighted_cover(z, balls, ones, solver);
            SupEntropyCell cell{n, eps, sol.chosen.size(), sol.status};
            out.value = std::max(out.value, std::log(static_cast<double>(cell.spanning_count)) / static_cast<double>(n));
            out.cells.push_back(cell);
        }
    }
    return out;
}

}  // namespace thetapress
