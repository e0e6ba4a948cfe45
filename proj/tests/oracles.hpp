#pragma once

// Brute-force reference implementations used only by tests. They share no code
// with the library beyond the plain data types.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"

namespace oracle {

using thetapress::NdsSystem;
using thetapress::PointSet;

inline std::size_t orbit(const NdsSystem& sys, std::size_t x, std::size_t j)
{
    for (std::size_t i = 1; i <= j; ++i) {
        x = sys.map_at(i)[x];
    }
    return x;
}

inline double bowen(const NdsSystem& sys, std::size_t x, std::size_t y, std::size_t n)
{
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        d = std::max(d, sys.metric()(orbit(sys, x, j), orbit(sys, y, j)));
    }
    return d;
}

inline double birkhoff(const NdsSystem& sys, std::size_t x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        s += sys.potential_at(j + 1)[orbit(sys, x, j)];
    }
    return s;
}

/// Minimum total weight over all subcollections covering `universe` (+inf if none).
inline double exhaustive_cover(const std::vector<std::size_t>& universe, const std::vector<std::vector<std::size_t>>& sets,
                               const std::vector<double>& weights)
{
    double best = std::numeric_limits<double>::infinity();
    const std::size_t k = sets.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<bool> hit(1024, false);
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1U) {
                total += weights[i];
                for (auto e : sets[i]) {
                    hit[e] = true;
                }
            }
        }
        bool covers = true;
        for (auto e : universe) {
            covers = covers && hit[e];
        }
        if (covers) {
            best = std::min(best, total);
        }
    }
    return best;
}

/// Maximum total weight over vertex subsets with no edge inside (adjacency matrix).
inline double exhaustive_independent(const std::vector<std::vector<bool>>& adj, const std::vector<double>& weights)
{
    const std::size_t n = weights.size();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        bool ok = true;
        double total = 0.0;
        for (std::size_t a = 0; a < n && ok; ++a) {
            if (!(mask >> a & 1U)) {
                continue;
            }
            total += weights[a];
            for (std::size_t b = a + 1; b < n; ++b) {
                if ((mask >> b & 1U) && adj[a][b]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            best = std::max(best, total);
        }
    }
    return best;
}

/// Admissible lengths n with N <= n < N/theta + 1, theta = p/q > 0, by floating evaluation
/// with a margin that cannot misclassify for small integers.
inline std::vector<std::size_t> admissible(std::size_t N, long p, long q)
{
    std::vector<std::size_t> out;
    for (std::size_t n = N; n < N * static_cast<std::size_t>(q) + 3; ++n) {
        double bound = static_cast<double>(N) * static_cast<double>(q) / static_cast<double>(p) + 1.0;
        if (static_cast<double>(n) < bound - 1e-9) {
            out.push_back(n);
        }
    }
    return out;
}

/// (1/N) log Lambda for Bowen balls of length N (sup weights), by exhaustive cover search
/// over the distinct balls restricted to Z.
inline double capacity_value(const NdsSystem& sys, const PointSet& z, double eps, std::size_t N)
{
    std::vector<std::vector<std::size_t>> sets;
    std::vector<double> weights;
    for (std::size_t x = 0; x < sys.size(); ++x) {
        std::vector<std::size_t> members;
        double sup = -std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < sys.size(); ++y) {
            if (bowen(sys, x, y, N) < eps) {
                sup = std::max(sup, birkhoff(sys, y, N));
                if (z.contains(y)) {
                    members.push_back(y);
                }
            }
        }
        if (members.empty()) {
            continue;
        }
        bool dup = false;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            if (sets[k] == members) {
                weights[k] = std::min(weights[k], std::exp(sup));
                dup = true;
            }
        }
        if (!dup) {
            sets.push_back(members);
            weights.push_back(std::exp(sup));
        }
    }
    return std::log(exhaustive_cover(z.elements(), sets, weights)) / static_cast<double>(N);
}

}  // namespace oracle
