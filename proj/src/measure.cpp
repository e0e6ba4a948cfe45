#include "thetapress/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "thetapress/errors.hpp"

namespace thetapress {

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights, std::string name)
    : weights_(std::move(weights)), name_(std::move(name))
{
    if (weights_.empty()) {
        throw ConfigError("measure needs at least one point");
    }
    double total = 0.0;
    for (auto w : weights_) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ConfigError("measure weights must be finite and non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ConfigError("measure weights sum to " + std::to_string(total) + ", expected 1");
    }
}

namespace {

std::vector<double> normalised(std::vector<double> w)
{
    double total = 0.0;
    for (auto v : w) {
        total += v;
    }
    for (auto& v : w) {
        v /= total;
    }
    return w;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::dirac(std::size_t size, std::size_t x)
{
    if (x >= size) {
        throw ConfigError("dirac point out of range");
    }
    std::vector<double> w(size, 0.0);
    w[x] = 1.0;
    return DiscreteMeasure(std::move(w), "dirac:" + std::to_string(x));
}

DiscreteMeasure DiscreteMeasure::uniform(const PointSet& z)
{
    if (z.empty()) {
        throw ConfigError("uniform measure needs a nonempty set");
    }
    std::vector<double> w(z.universe_size(), 0.0);
    for (auto x : z.elements()) {
        w[x] = 1.0;
    }
    return DiscreteMeasure(normalised(std::move(w)), "uniform");
}

DiscreteMeasure DiscreteMeasure::geometric(const PointSet& z)
{
    if (z.empty()) {
        throw ConfigError("geometric measure needs a nonempty set");
    }
    std::vector<double> w(z.universe_size(), 0.0);
    double mass = 0.5;
    for (auto x : z.elements()) {
        w[x] = mass;
        mass /= 2.0;
    }
    return DiscreteMeasure(normalised(std::move(w)), "geometric");
}

DiscreteMeasure DiscreteMeasure::random(const PointSet& z, std::uint64_t seed)
{
    auto pts = z.elements();
    if (pts.empty()) {
        throw ConfigError("random measure needs a nonempty set");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> w(z.universe_size(), 0.0);
    bool any = false;
    for (auto x : pts) {
        if (rng() % 2 == 0) {
            w[x] = 0.05 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            any = true;
        }
    }
    if (!any) {
        w[pts[rng() % pts.size()]] = 1.0;
    }
    return DiscreteMeasure(normalised(std::move(w)), "random:" + std::to_string(seed));
}

PointSet DiscreteMeasure::support() const
{
    PointSet s(weights_.size());
    for (std::size_t x = 0; x < weights_.size(); ++x) {
        if (weights_[x] > 0.0) {
            s.insert(x);
        }
    }
    return s;
}

PressureProfile measure_pressure_profile(const NdsSystem& sys, const DiscreteMeasure& mu, double eps, Theta theta,
                                         std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options)
{
    if (mu.size() != sys.size()) {
        throw ConfigError("measure has " + std::to_string(mu.size()) + " points, system has " +
                          std::to_string(sys.size()));
    }
    return pressure_profile(sys, mu.support(), eps, theta, N_lo, N_hi, options);
}

VariationalCheck variational_inf_check(const NdsSystem& sys, const DiscreteMeasure& mu, double eps, Theta theta,
                                       std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options,
                                       std::size_t exhaustive_limit, std::size_t samples, std::uint64_t seed)
{
    VariationalCheck out;
    out.name = "variational_inf";
    const auto support = mu.support();
    const auto pm = measure_pressure_profile(sys, mu, eps, theta, N_lo, N_hi, options);

    std::vector<std::size_t> free;
    for (std::size_t x = 0; x < sys.size(); ++x) {
        if (!support.contains(x)) {
            free.push_back(x);
        }
    }
    std::vector<PointSet> supersets;
    const bool exhaustive = free.size() < 63 && (std::uint64_t{1} << free.size()) <= exhaustive_limit;
    if (exhaustive) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
            PointSet z = support;
            for (std::size_t i = 0; i < free.size(); ++i) {
                if (bits >> i & 1U) {
                    z.insert(free[i]);
                }
            }
            supersets.push_back(std::move(z));
        }
    } else {
        std::mt19937_64 rng(seed);
        supersets.push_back(support);
        supersets.push_back(PointSet::full(sys.size()));
        for (std::size_t s = 0; s < samples; ++s) {
            PointSet z = support;
            for (auto x : free) {
                if (rng() % 2 == 0) {
                    z.insert(x);
                }
            }
            supersets.push_back(std::move(z));
        }
    }

    std::vector<double> lowers(supersets.size());
    std::vector<double> uppers(supersets.size());
    auto inner = options;
    inner.jobs = 1;
    parallel_for(supersets.size(), options.jobs, [&](std::size_t i) {
        auto prof = pressure_profile(sys, supersets[i], eps, theta, N_lo, N_hi, inner);
        lowers[i] = prof.lower;
        uppers[i] = prof.upper;
    });
    const double min_lower = *std::min_element(lowers.begin(), lowers.end());
    const double min_upper = *std::min_element(uppers.begin(), uppers.end());
    out.evaluated = supersets.size();
    out.worst_gap = std::max(std::abs(pm.lower - min_lower), std::abs(pm.upper - min_upper)) - 2.0 * options.tol;
    out.passed = out.worst_gap <= 0.0;
    out.details.push_back(std::string(exhaustive ? "exhaustive" : "sampled") + " over " +
                          std::to_string(supersets.size()) + " full-measure sets; P_mu upper " +
                          std::to_string(pm.upper) + ", inf upper " + std::to_string(min_upper));
    return out;
}

VariationalCheck variational_sup_check(const NdsSystem& sys, const PointSet& z, double eps, Theta theta,
                                       std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options,
                                       std::size_t random_count, std::uint64_t seed)
{
    VariationalCheck out;
    out.name = "variational_sup";
    const auto pz = pressure_profile(sys, z, eps, theta, N_lo, N_hi, options);

    std::vector<DiscreteMeasure> family;
    for (auto x : z.elements()) {
        family.push_back(DiscreteMeasure::dirac(sys.size(), x));
    }
    family.push_back(DiscreteMeasure::uniform(z));
    family.push_back(DiscreteMeasure::geometric(z));
    std::mt19937_64 seeds(seed);
    for (std::size_t i = 0; i < random_count; ++i) {
        family.push_back(DiscreteMeasure::random(z, seeds()));
    }

    out.worst_gap = -std::numeric_limits<double>::infinity();
    double best_upper = -std::numeric_limits<double>::infinity();
    for (const auto& mu : family) {
        auto pm = measure_pressure_profile(sys, mu, eps, theta, N_lo, N_hi, options);
        ++out.evaluated;
        double gap = std::max(pm.lower - pz.lower, pm.upper - pz.upper) - 2.0 * options.tol;
        out.worst_gap = std::max(out.worst_gap, gap);
        best_upper = std::max(best_upper, pm.upper);
        if (gap > 0.0) {
            out.details.push_back(mu.name() + " exceeds P(Z) by " + std::to_string(gap));
        }
        if (mu.name() == "uniform") {
            double attain = std::max(std::abs(pm.lower - pz.lower), std::abs(pm.upper - pz.upper)) - 2.0 * options.tol;
            out.worst_gap = std::max(out.worst_gap, attain);
            if (attain > 0.0) {
                out.details.push_back("uniform measure misses P(Z) by " + std::to_string(attain));
            }
        }
    }
    out.passed = out.worst_gap <= 0.0;
    out.details.push_back("P(Z) upper " + std::to_string(pz.upper) + ", sup over " + std::to_string(family.size()) +
                          " measures " + std::to_string(best_upper));
    return out;
}

}  // namespace thetapress
