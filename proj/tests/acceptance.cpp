// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <spdlog/spdlog.h>

#include "oracles.hpp"
#include "thetapress/commands.hpp"
#include "thetapress/cover_pressure.hpp"
#include "thetapress/factor.hpp"
#include "thetapress/generators.hpp"
#include "thetapress/harness.hpp"
#include "thetapress/io.hpp"
#include "thetapress/measure.hpp"

using namespace thetapress;

namespace {

constexpr double tol = 1e-6;
constexpr double two_tol = 2e-6;
constexpr double benchmark_band = 0.15;
constexpr double criterion1_seconds = 60.0;
constexpr double criterion6_seconds = 30.0;

struct Instance {
    std::string name;
    NdsSystem sys;
    PointSet z;
    double eps;
};

/// 20 seeded random systems: P <= 12, q <= 3, |phi| <= 1, eps in [0.2, 0.25].
std::vector<Instance> battery()
{
    std::vector<Instance> out;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto sys = random_system(seed);
        std::mt19937_64 rng(seed * 7919);
        auto z = random_subset(sys.size(), rng);
        double eps = std::uniform_real_distribution<double>(0.2, 0.25)(rng);
        out.push_back({"seed" + std::to_string(seed), sys, z, eps});
    }
    return out;
}

ProfileOptions options(SolverKind solver = SolverKind::automatic)
{
    ProfileOptions o;
    o.tol = tol;
    o.solver = solver;
    return o;
}

std::vector<Theta> grid11()
{
    std::vector<Theta> g;
    for (int k = 0; k <= 10; ++k) {
        g.emplace_back(k, 10);
    }
    return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::string num(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Outcome criterion1(const std::vector<Instance>& b)
{
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    double worst_oracle = 0.0;
    std::size_t scales = 0;
    for (const auto& in : b) {
        auto prof = pressure_profile(in.sys, in.z, in.eps, Theta(1, 1), 1, 8, options());
        auto cap = capacity_pressures(in.sys, in.z, in.eps, 1, 8);
        for (std::size_t i = 0; i < prof.scales.size(); ++i) {
            worst = std::max(worst, std::abs(prof.scales[i].alpha - cap.scales[i].value));
            double brute = oracle::capacity_value(in.sys, in.z, in.eps, prof.scales[i].N);
            worst_oracle = std::max(worst_oracle, std::abs(prof.scales[i].alpha - brute));
            ++scales;
        }
    }
    double secs = seconds_since(t0);
    Outcome o;
    o.passed = worst <= two_tol && worst_oracle <= two_tol && secs <= criterion1_seconds;
    o.detail = std::to_string(scales) + " scales, max |alpha - capacity| " + num(worst) + ", vs brute force " +
               num(worst_oracle) + ", " + num(secs) + " s";
    return o;
}

Outcome criterion2(const std::vector<Instance>& b)
{
    std::size_t violations = 0;
    std::size_t compared = 0;
    for (const auto& in : b) {
        auto sweep = theta_sweep(in.sys, in.z, in.eps, grid11(), 2, 8, options());
        for (std::size_t t = 0; t < sweep.size(); ++t) {
            for (std::size_t u = t + 1; u < sweep.size(); ++u) {
                for (std::size_t i = 0; i < sweep[t].scales.size(); ++i) {
                    const auto& a = sweep[t].scales[i];
                    const auto& c = sweep[u].scales[i];
                    if (a.status != SolveStatus::exact || c.status != SolveStatus::exact) {
                        continue;
                    }
                    ++compared;
                    violations += a.alpha > c.alpha ? 1 : 0;
                }
            }
        }
    }
    return {violations == 0, std::to_string(compared) + " exact pairs, " + std::to_string(violations) + " violations"};
}

Outcome criterion3(const std::vector<Instance>& b)
{
    double worst = 0.0;
    for (const auto& in : b) {
        for (auto theta : {Theta(0, 1), Theta(1, 2), Theta(1, 1)}) {
            auto base = pressure_profile(in.sys, in.z, in.eps, theta, 2, 8, options());
            for (double c : {-1.0, 0.5, 3.0}) {
                std::vector<double> phi(in.sys.potential().begin(), in.sys.potential().end());
                for (auto& v : phi) {
                    v += c;
                }
                auto shifted = pressure_profile(in.sys.with_potential(phi), in.z, in.eps, theta, 2, 8, options());
                for (std::size_t i = 0; i < base.scales.size(); ++i) {
                    worst = std::max(worst, std::abs(shifted.scales[i].alpha - base.scales[i].alpha - c));
                }
            }
        }
    }
    return {worst <= two_tol, "max |alpha(phi+c) - alpha(phi) - c| " + num(worst)};
}

Outcome criterion4(const std::vector<Instance>& b)
{
    double worst = -1.0;
    std::mt19937_64 rng(4);
    for (std::size_t k = 0; k < 50; ++k) {
        const auto& in = b[k % b.size()];
        auto phi = random_potential(in.sys.size(), 1.0, rng);
        auto psi = random_potential(in.sys.size(), 1.0, rng);
        double dist = 0.0;
        for (std::size_t x = 0; x < phi.size(); ++x) {
            dist = std::max(dist, std::abs(phi[x] - psi[x]));
        }
        Theta theta(static_cast<std::int64_t>(k % 5) + 1, 5);
        auto a = pressure_profile(in.sys.with_potential(phi), in.z, in.eps, theta, 2, 6, options());
        auto c = pressure_profile(in.sys.with_potential(psi), in.z, in.eps, theta, 2, 6, options());
        for (std::size_t i = 0; i < a.scales.size(); ++i) {
            worst = std::max(worst, std::abs(a.scales[i].alpha - c.scales[i].alpha) - dist);
        }
    }
    return {worst <= two_tol, "50 pairs, max excess over |phi - psi| " + num(worst)};
}

Outcome criterion5(const std::vector<Instance>& b)
{
    constexpr std::size_t N_lo = 6;
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& in : b) {
        const double M = in.sys.potential_norm();
        for (auto theta : {Theta(1, 4), Theta(1, 2)}) {
            Theta wider(2 * theta.numerator(), theta.denominator());
            auto a = pressure_profile(in.sys, in.z, in.eps, theta, N_lo, 8, options());
            auto c = pressure_profile(in.sys, in.z, in.eps, wider, N_lo, 8, options());
            const double ratio = wider.value() / theta.value();
            const double slack = (M + std::abs(a.upper)) * (2.0 / N_lo) + two_tol;
            const double margin = c.upper - (ratio * a.upper + (ratio - 1.0) * M + slack);
            worst = std::max(worst, margin);
            violations += margin > 0.0 ? 1 : 0;
        }
    }
    return {violations == 0, "40 comparisons, " + std::to_string(violations) + " violations, worst margin " +
                                 num(worst)};
}

Outcome criterion6()
{
    auto t0 = std::chrono::steady_clock::now();
    auto sys = doubling_system(16);
    auto z = PointSet::full(16);
    const double eps = 1.0 / 32.0;
    auto sweep = theta_sweep(sys, z, eps, grid11(), 4, 8, options());
    double secs = seconds_since(t0);
    // Reference from exhaustive covers at the scale m = 4.
    const double reference = oracle::capacity_value(sys, z, eps, 4);
    std::size_t inside = 0;
    std::string outside;
    for (const auto& p : sweep) {
        if (std::abs(p.upper - reference) <= benchmark_band) {
            ++inside;
        } else {
            outside += (outside.empty() ? "" : " ") + num(p.theta.value()) + ":" + num(p.upper);
        }
    }
    Outcome o;
    o.passed = inside == sweep.size() && secs <= criterion6_seconds && std::abs(reference - std::log(2.0)) < 1e-12;
    o.detail = "oracle " + num(reference) + ", " + std::to_string(inside) + "/" + std::to_string(sweep.size()) +
               " theta within " + num(benchmark_band) + ", " + num(secs) + " s";
    if (!outside.empty()) {
        o.detail += "; outside (theta:upper) " + outside;
    }
    return o;
}

Outcome criterion7()
{
    std::size_t failures = 0;
    RandomSystemOptions opts;
    opts.max_points = 10;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto sys = random_system(seed, opts);
        std::mt19937_64 rng(seed);
        auto z = random_subset(sys.size(), rng);
        auto mu = DiscreteMeasure::uniform(z);
        for (auto theta : {Theta(0, 1), Theta(1, 2), Theta(1, 1)}) {
            auto pm = measure_pressure_profile(sys, mu, 0.2, theta, 2, 5, options());
            auto pz = pressure_profile(sys, z, 0.2, theta, 2, 5, options());
            for (std::size_t i = 0; i < pm.scales.size(); ++i) {
                failures += pm.scales[i].alpha != pz.scales[i].alpha ? 1 : 0;
            }
            auto inf = variational_inf_check(sys, mu, 0.2, theta, 2, 5, options(), 1024, 64, seed);
            auto sup = variational_sup_check(sys, z, 0.2, theta, 2, 5, options(), 4, seed);
            failures += inf.passed ? 0 : 1;
            failures += sup.passed ? 0 : 1;
        }
    }
    return {failures == 0, "10 systems x 3 theta, " + std::to_string(failures) + " failures"};
}

Outcome criterion8()
{
    CheckParams params;
    params.profile = options();
    params.N_lo = 2;
    params.N_hi = 5;
    std::size_t failures = 0;
    std::size_t flips = 0;
    double worst_bijection_gap = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomSystemOptions opts;
        opts.max_points = 6;
        auto base = random_system(200 + seed, opts);
        std::mt19937_64 rng(seed);
        std::optional<FactorMap> fm;
        if (seed % 2 == 0) {
            std::vector<std::vector<bool>> fl(base.prefix_length() + base.period(), std::vector<bool>(base.size()));
            for (auto& row : fl) {
                for (std::size_t y = 0; y < row.size(); ++y) {
                    row[y] = rng() % 2 == 0;
                }
            }
            fm = product_projection(base, 0.5 / static_cast<double>(base.size()), fl);
        } else {
            MapTable perm(base.size());
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            fm = relabeling(base, perm);
        }
        auto z = random_subset(fm->source().size(), rng);
        auto conj = check_conjugacy(*fm, z, params);
        for (const auto& d : conj.details) {
            if (d.instance == "forward" || d.instance == "reverse") {
                flips += d.passed ? 0 : 1;
            }
            if (d.instance == "isometry") {
                worst_bijection_gap = std::max(worst_bijection_gap, d.observed);
            }
        }
        failures += conj.failures();
        failures += check_factor_supentropy(*fm, z, params).failures();
    }
    return {failures == 0 && flips == 0 && worst_bijection_gap <= two_tol,
            "10 triples, " + std::to_string(failures) + " failures, " + std::to_string(flips) +
                " direction flips, max bijection gap " + num(worst_bijection_gap)};
}

Outcome criterion9(const std::vector<Instance>& b)
{
    std::size_t failures = 0;
    std::size_t m1_mismatch = 0;
    for (const auto& in : b) {
        for (auto theta : {Theta(1, 2), Theta(1, 1)}) {
            CheckParams params;
            params.theta = theta;
            params.eps = in.eps;
            params.N_lo = 2;
            params.N_hi = 4;
            params.profile = options();
            failures += check_power_rule(in.sys, in.z, 2, params).failures();
            auto one = check_power_rule(in.sys, in.z, 1, params);
            m1_mismatch += derived_system_power(in.sys, 1) == in.sys && one.details.front().observed == 0.0 ? 0 : 1;
        }
    }
    return {failures == 0 && m1_mismatch == 0,
            "40 runs at m=2, " + std::to_string(failures) + " failures; m=1 inexact on " +
                std::to_string(m1_mismatch)};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion10()
{
    const char* config = R"({
      "schema_version": 1,
      "system": {
        "points": 12,
        "metric": "circle",
        "maps": {"tables": ["identity", "doubling", "rotation:5"], "prefix": 1, "period": 2},
        "potential": [0.3, -0.2, 0.5, 0.0, 0.1, -0.4, 0.2, 0.6, -0.1, 0.0, 0.4, -0.3]
      },
      "subset": [0, 1, 2, 3, 5, 8],
      "theta_grid": [0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1],
      "epsilon": [0.2, 0.1],
      "N": [2, 6]
    })";
    auto root = std::filesystem::temp_directory_path() / ("thetapress_acceptance_" + std::to_string(::getpid()));
    std::vector<std::string> runs;
    for (std::size_t jobs : {1, 8, 1}) {
        Overrides o;
        o.jobs = jobs;
        o.out = root / ("jobs" + std::to_string(jobs) + "_" + std::to_string(runs.size()));
        auto cfg = parse_config(config, ".", o);
        std::ostringstream sink;
        if (cmd_pressure(cfg, sink) != exit_ok) {
            return {false, "cmd_pressure failed"};
        }
        runs.push_back(slurp(*o.out / "profiles.csv") + slurp(*o.out / "alpha_ladder.csv"));
    }
    std::filesystem::remove_all(root);
    bool same = runs[0] == runs[1] && runs[0] == runs[2] && !runs[0].empty();
    return {same, "profiles.csv + alpha_ladder.csv, jobs 1/8/1: " + std::string(same ? "identical" : "DIFFER") + " (" +
                      std::to_string(runs[0].size()) + " bytes)"};
}

Outcome criterion11(const std::vector<Instance>& b)
{
    std::size_t sandwich_violations = 0;
    std::size_t pairs = 0;
    std::size_t problems = 0;
    std::size_t disagreements = 0;
    for (const auto& in : b) {
        for (auto theta : {Theta(0, 1), Theta(1, 3), Theta(2, 3), Theta(1, 1)}) {
            auto exact = pressure_profile(in.sys, in.z, in.eps, theta, 2, 6, options(SolverKind::exact));
            auto greedy = pressure_profile(in.sys, in.z, in.eps, theta, 2, 6, options(SolverKind::greedy));
            for (std::size_t i = 0; i < exact.scales.size(); ++i) {
                ++pairs;
                sandwich_violations += greedy.scales[i].alpha < exact.scales[i].alpha ? 1 : 0;
            }
            for (std::size_t N = 1; N <= 6; ++N) {
                auto window = ThetaWindow::make(N, theta, theta.is_zero() ? 2 * N : 0);
                auto cands = candidates_bowen(in.sys, in.z, in.eps, window);
                auto problem = CoverProblem::build(in.z, cands, WeightMode::sup_value, in.sys.size(),
                                                   in.sys.potential_norm());
                if (problem.candidates.size() > 12) {
                    continue;
                }
                std::vector<std::vector<std::size_t>> sets;
                for (const auto& m : problem.masks) {
                    sets.push_back(m.elements());
                }
                for (double alpha : {-1.0, 0.0, 0.3, 1.0, 2.5}) {
                    ++problems;
                    auto w = problem.weights(alpha);
                    double brute = oracle::exhaustive_cover(in.z.elements(), sets, w);
                    double got = min_weight_cover(problem, alpha, SolverKind::exact).value;
                    disagreements += std::abs(got - brute) <= 1e-12 * std::max(1.0, brute) ? 0 : 1;
                }
            }
        }
    }
    return {sandwich_violations == 0 && disagreements == 0 && problems > 0,
            std::to_string(pairs) + " greedy/exact scales, " + std::to_string(sandwich_violations) +
                " below exact; " + std::to_string(problems) + " small cover problems, " +
                std::to_string(disagreements) + " disagreements with enumeration"};
}

}  // namespace

int main()
{
    spdlog::set_level(spdlog::level::err);
    const auto b = battery();
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "theta=1 profile equals capacity pressures", [&] { return criterion1(b); }},
        {2, "theta monotonicity on exactly solved scales", [&] { return criterion2(b); }},
        {3, "additive constant", [&] { return criterion3(b); }},
        {4, "Lipschitz in the potential", [&] { return criterion4(b); }},
        {5, "comparison bound at N_lo = 6", [&] { return criterion5(b); }},
        {6, "doubling map entropy benchmark", [] { return criterion6(); }},
        {7, "finite-scale variational principles", [] { return criterion7(); }},
        {8, "factor and conjugacy inequalities", [] { return criterion8(); }},
        {9, "power rule", [&] { return criterion9(b); }},
        {10, "cmd_pressure determinism across job counts", [] { return criterion10(); }},
        {11, "exact/greedy sandwich and exhaustive agreement", [&] { return criterion11(b); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.passed ? 0 : 1;
        std::printf("[%s] %2d %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
