#include "thetapress/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thetapress/errors.hpp"

namespace thetapress {

DistanceMatrix circle_metric(std::size_t p)
{
    DistanceMatrix d(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            std::size_t k = std::min(j - i, p - (j - i));
            d.set(i, j, static_cast<double>(k) / static_cast<double>(p));
        }
    }
    return d;
}

DistanceMatrix line_metric(std::size_t p)
{
    DistanceMatrix d(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            d.set(i, j, static_cast<double>(j - i) / static_cast<double>(p));
        }
    }
    return d;
}

DistanceMatrix hamming_metric(std::size_t bits)
{
    if (bits == 0 || bits > 16) {
        throw ConfigError("hamming metric needs 1..16 bits");
    }
    const std::size_t p = std::size_t{1} << bits;
    DistanceMatrix d(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            d.set(i, j, static_cast<double>(std::popcount(i ^ j)) / static_cast<double>(bits));
        }
    }
    return d;
}

DistanceMatrix ultrametric_tree_metric(std::size_t branching, std::size_t depth)
{
    if (branching < 2 || depth == 0) {
        throw ConfigError("ultrametric tree needs branching >= 2 and depth >= 1");
    }
    std::size_t p = 1;
    for (std::size_t l = 0; l < depth; ++l) {
        p *= branching;
        if (p > 4096) {
            throw ConfigError("ultrametric tree too large");
        }
    }
    DistanceMatrix d(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            // Count leading base-b digits shared by i and j.
            std::size_t common = 0;
            std::size_t scale = p / branching;
            while (scale > 0 && i / scale % branching == j / scale % branching) {
                ++common;
                scale /= branching;
            }
            d.set(i, j, std::ldexp(1.0, -static_cast<int>(common)));
        }
    }
    return d;
}

MapTable doubling_map(std::size_t p)
{
    MapTable f(p);
    for (std::size_t x = 0; x < p; ++x) {
        f[x] = 2 * x % p;
    }
    return f;
}

MapTable rotation_map(std::size_t p, std::size_t shift)
{
    MapTable f(p);
    for (std::size_t x = 0; x < p; ++x) {
        f[x] = (x + shift) % p;
    }
    return f;
}

MapTable identity_map(std::size_t p) { return rotation_map(p, 0); }

MapTable constant_map(std::size_t p, std::size_t value)
{
    if (value >= p) {
        throw ConfigError("constant map value out of range");
    }
    return MapTable(p, value);
}

NdsSystem doubling_system(std::size_t p)
{
    return NdsSystem(circle_metric(p), {}, {doubling_map(p)}, std::vector<double>(p, 0.0));
}

std::vector<double> random_potential(std::size_t p, double norm, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-norm, norm);
    std::vector<double> phi(p);
    for (auto& v : phi) {
        v = u(rng);
    }
    return phi;
}

PointSet random_subset(std::size_t p, std::mt19937_64& rng)
{
    PointSet z(p);
    for (std::size_t x = 0; x < p; ++x) {
        if (rng() % 2 == 0) {
            z.insert(x);
        }
    }
    if (z.empty()) {
        z.insert(rng() % p);
    }
    return z;
}

NdsSystem random_system(std::uint64_t seed, const RandomSystemOptions& options)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
    const std::size_t p = pick(options.min_points, options.max_points);
    const std::size_t q = pick(1, options.max_period);
    const std::size_t r = pick(0, options.max_prefix);
    auto metric = rng() % 2 == 0 ? line_metric(p) : circle_metric(p);
    auto random_map = [&] {
        MapTable f(p);
        for (auto& v : f) {
            v = rng() % p;
        }
        return f;
    };
    std::vector<MapTable> prefix;
    std::vector<MapTable> period;
    for (std::size_t i = 0; i < r; ++i) {
        prefix.push_back(random_map());
    }
    for (std::size_t i = 0; i < q; ++i) {
        period.push_back(random_map());
    }
    auto phi = random_potential(p, options.potential_norm, rng);
    return NdsSystem(std::move(metric), std::move(prefix), std::move(period), std::move(phi));
}

}  // namespace thetapress
