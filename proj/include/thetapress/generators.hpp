#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"

namespace thetapress {

/// P equally spaced points on the unit circle: d(i, j) = min(|i-j|, P-|i-j|) / P.
DistanceMatrix circle_metric(std::size_t p);
/// P points at spacing 1/P on a segment: d(i, j) = |i-j| / P.
DistanceMatrix line_metric(std::size_t p);
/// 2^bits binary words, normalised Hamming distance.
DistanceMatrix hamming_metric(std::size_t bits);
/// Leaves of a complete tree with `branching` children per node and `depth` levels;
/// d(x, y) = 2^-k where k is the length of the common ancestor path.
DistanceMatrix ultrametric_tree_metric(std::size_t branching, std::size_t depth);

MapTable doubling_map(std::size_t p);
MapTable rotation_map(std::size_t p, std::size_t shift);
MapTable identity_map(std::size_t p);
MapTable constant_map(std::size_t p, std::size_t value);

/// The x -> 2x mod P map on P circle points with zero potential.
NdsSystem doubling_system(std::size_t p);

struct RandomSystemOptions {
    std::size_t min_points = 4;
    std::size_t max_points = 12;
    std::size_t max_period = 3;
    std::size_t max_prefix = 1;
    double potential_norm = 1.0;
};

/// A random system: line or circle metric, random (not necessarily bijective) maps,
/// potential uniform in [-norm, norm]. Fully determined by `seed`.
NdsSystem random_system(std::uint64_t seed, const RandomSystemOptions& options = {});

/// A random nonempty subset of 0..p-1.
PointSet random_subset(std::size_t p, std::mt19937_64& rng);

/// A random potential with sup-norm at most `norm`.
std::vector<double> random_potential(std::size_t p, double norm, std::mt19937_64& rng);

}  // namespace thetapress
