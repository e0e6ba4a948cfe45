#include "thetapress/factor.hpp"

#include <numeric>
#include <string>

#include "thetapress/errors.hpp"

namespace thetapress {

FactorMap::FactorMap(NdsSystem source, NdsSystem target, MapTable pi)
    : source_(std::move(source)), target_(std::move(target)), pi_(std::move(pi))
{
    const std::size_t p = source_.size();
    const std::size_t t = target_.size();
    if (pi_.size() != p) {
        throw NotSemiconjugate("pi has " + std::to_string(pi_.size()) + " entries, source has " + std::to_string(p) +
                               " points");
    }
    std::vector<std::size_t> hits(t, 0);
    for (auto y : pi_) {
        if (y >= t) {
            throw NotSemiconjugate("pi maps outside the target");
        }
        ++hits[y];
    }
    for (std::size_t y = 0; y < t; ++y) {
        if (hits[y] == 0) {
            throw NotSemiconjugate("pi misses target point " + std::to_string(y));
        }
    }
    common_prefix_ = std::max(source_.prefix_length(), target_.prefix_length());
    common_period_ = std::lcm(source_.period(), target_.period());
    for (std::size_t i = 1; i <= common_prefix_ + common_period_; ++i) {
        const auto& f = source_.map_at(i);
        const auto& g = target_.map_at(i);
        for (std::size_t x = 0; x < p; ++x) {
            if (pi_[f[x]] != g[pi_[x]]) {
                throw NotSemiconjugate("pi o f_" + std::to_string(i) + " != g_" + std::to_string(i) +
                                       " o pi at point " + std::to_string(x));
            }
        }
    }
    bijection_ = p == t;
    isometry_ = bijection_;
    for (std::size_t x = 0; x < p && isometry_; ++x) {
        for (std::size_t y = 0; y < p; ++y) {
            if (source_.metric()(x, y) != target_.metric()(pi_[x], pi_[y])) {
                isometry_ = false;
                break;
            }
        }
    }
}

MapTable FactorMap::inverse() const
{
    if (!bijection_) {
        throw Error("pi is not a bijection");
    }
    MapTable inv(pi_.size());
    for (std::size_t x = 0; x < pi_.size(); ++x) {
        inv[pi_[x]] = x;
    }
    return inv;
}

NdsSystem FactorMap::aligned_target() const { return target_.restructured(common_prefix_, common_period_); }

NdsSystem FactorMap::lifted_source() const
{
    auto src = source_.restructured(common_prefix_, common_period_);
    auto tgt = aligned_target();
    std::vector<std::vector<double>> potentials;
    for (std::size_t i = 1; i <= common_prefix_ + common_period_; ++i) {
        auto phi = tgt.potential_at(i);
        std::vector<double> lifted(pi_.size());
        for (std::size_t x = 0; x < pi_.size(); ++x) {
            lifted[x] = phi[pi_[x]];
        }
        potentials.push_back(std::move(lifted));
    }
    return src.with_step_potentials(potentials);
}

PointSet FactorMap::image(const PointSet& z) const
{
    PointSet out(target_.size());
    for (auto x : z.elements()) {
        out.insert(pi_[x]);
    }
    return out;
}

PointSet FactorMap::preimage(std::size_t y) const
{
    PointSet out(pi_.size());
    for (std::size_t x = 0; x < pi_.size(); ++x) {
        if (pi_[x] == y) {
            out.insert(x);
        }
    }
    return out;
}

FactorMap relabeling(const NdsSystem& target, const MapTable& perm)
{
    const std::size_t p = target.size();
    if (perm.size() != p) {
        throw ConfigError("relabeling permutation has wrong size");
    }
    MapTable inv(p, p);
    for (std::size_t k = 0; k < p; ++k) {
        if (perm[k] >= p || inv[perm[k]] != p) {
            throw ConfigError("relabeling is not a permutation");
        }
        inv[perm[k]] = k;
    }
    DistanceMatrix d(p);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t l = k + 1; l < p; ++l) {
            d.set(k, l, target.metric()(perm[k], perm[l]));
        }
    }
    auto convert = [&](const std::vector<Step>& steps) {
        std::vector<Step> out;
        for (const auto& s : steps) {
            Step t{MapTable(p), std::vector<double>(p)};
            for (std::size_t k = 0; k < p; ++k) {
                t.map[k] = inv[s.map[perm[k]]];
                t.potential[k] = s.potential[perm[k]];
            }
            out.push_back(std::move(t));
        }
        return out;
    };
    NdsSystem source(std::move(d), convert(target.prefix_steps()), convert(target.period_steps()), false);
    return FactorMap(std::move(source), target, perm);
}

FactorMap product_projection(const NdsSystem& base, double fiber_distance, const std::vector<std::vector<bool>>& flips)
{
    const std::size_t t = base.size();
    const std::size_t steps = base.prefix_length() + base.period();
    if (!flips.empty() && flips.size() != steps) {
        throw ConfigError("product_projection: need one flip row per step");
    }
    const std::size_t p = 2 * t;
    DistanceMatrix d(p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            double fiber = (a % 2 != b % 2) ? fiber_distance : 0.0;
            d.set(a, b, std::max(base.metric()(a / 2, b / 2), fiber));
        }
    }
    auto lift = [&](std::size_t i) {
        const auto& g = base.map_at(i);
        auto phi = base.potential_at(i);
        Step s{MapTable(p), std::vector<double>(p)};
        for (std::size_t x = 0; x < p; ++x) {
            std::size_t y = x / 2;
            std::size_t bit = x % 2;
            if (!flips.empty() && flips[i - 1].at(y)) {
                bit ^= 1U;
            }
            s.map[x] = 2 * g[y] + bit;
            s.potential[x] = phi[y];
        }
        return s;
    };
    std::vector<Step> prefix;
    std::vector<Step> period;
    for (std::size_t i = 1; i <= base.prefix_length(); ++i) {
        prefix.push_back(lift(i));
    }
    for (std::size_t i = base.prefix_length() + 1; i <= steps; ++i) {
        period.push_back(lift(i));
    }
    MapTable pi(p);
    for (std::size_t x = 0; x < p; ++x) {
        pi[x] = x / 2;
    }
    NdsSystem source(std::move(d), std::move(prefix), std::move(period));
    return FactorMap(std::move(source), base, std::move(pi));
}

FactorMap collapse_all(const NdsSystem& source, double value)
{
    NdsSystem point(DistanceMatrix(1), {}, {MapTable{0}}, std::vector<double>{value});
    return FactorMap(source, std::move(point), MapTable(source.size(), 0));
}

}  // namespace thetapress
