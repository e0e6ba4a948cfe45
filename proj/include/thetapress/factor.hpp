#pragma once

#include <cstddef>
#include <vector>

#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"

namespace thetapress {

/// A point map pi: X -> Y with pi o f_i = g_i o pi for every i.
///
/// Both sequences are eventually periodic, so the identity is checked on steps
/// 1..r+q with r the larger prefix and q the lcm of the periods.
class FactorMap {
public:
    /// Throws NotSemiconjugate if pi is not onto or does not intertwine the maps.
    FactorMap(NdsSystem source, NdsSystem target, MapTable pi);

    const NdsSystem& source() const { return source_; }
    const NdsSystem& target() const { return target_; }
    const MapTable& pi() const { return pi_; }

    bool is_bijection() const { return bijection_; }
    /// Bijection with rho(pi x, pi y) = d(x, y) for all x, y.
    bool is_isometry() const { return isometry_; }
    /// pi^-1 as a table; bijections only.
    MapTable inverse() const;

    /// Target rewritten on the common (prefix, period) structure.
    NdsSystem aligned_target() const;
    /// Source on the common structure, carrying the pulled-back potentials phi_i o pi.
    NdsSystem lifted_source() const;

    PointSet image(const PointSet& z) const;
    PointSet preimage(std::size_t y) const;

private:
    NdsSystem source_;
    NdsSystem target_;
    MapTable pi_;
    std::size_t common_prefix_ = 0;
    std::size_t common_period_ = 1;
    bool bijection_ = false;
    bool isometry_ = false;
};

/// Source is `target` with points renamed: source point k plays the role of target point perm[k].
FactorMap relabeling(const NdsSystem& target, const MapTable& perm);

/// X = Y x {0,1} (point 2y + b), d = max(rho, fiber_distance * [b != b']),
/// f_i(y, b) = (g_i y, b xor flips[i-1][y]); pi is the projection. `flips` has one
/// row per prefix+period step of `base`; an empty `flips` means identity fibres.
FactorMap product_projection(const NdsSystem& base, double fiber_distance,
                             const std::vector<std::vector<bool>>& flips = {});

/// pi sends every point of `source` to the single point of a one-point target whose
/// potential is `value` at every step.
FactorMap collapse_all(const NdsSystem& source, double value = 0.0);

}  // namespace thetapress
