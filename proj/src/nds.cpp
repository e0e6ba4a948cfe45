#include "thetapress/nds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "thetapress/errors.hpp"

namespace thetapress {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> row_major) : n_(n), d_(std::move(row_major))
{
    if (d_.size() != n * n) {
        throw InvalidSystem("metric has " + std::to_string(d_.size()) + " entries, expected " +
                            std::to_string(n * n));
    }
}

double DistanceMatrix::diameter() const
{
    double best = 0.0;
    for (auto v : d_) {
        best = std::max(best, v);
    }
    return best;
}

double DistanceMatrix::min_positive() const
{
    double best = std::numeric_limits<double>::infinity();
    for (auto v : d_) {
        if (v > 0.0) {
            best = std::min(best, v);
        }
    }
    return best;
}

void DistanceMatrix::validate(bool check_triangle) const
{
    if (n_ == 0) {
        throw InvalidSystem("metric must have at least one point");
    }
    for (std::size_t x = 0; x < n_; ++x) {
        if ((*this)(x, x) != 0.0) {
            throw InvalidSystem("metric[" + std::to_string(x) + "][" + std::to_string(x) + "] != 0");
        }
        for (std::size_t y = 0; y < n_; ++y) {
            double v = (*this)(x, y);
            if (!std::isfinite(v) || v < 0.0) {
                throw InvalidSystem("metric entry (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is negative or not finite");
            }
            if (v != (*this)(y, x)) {
                throw InvalidSystem("metric is not symmetric at (" + std::to_string(x) + "," +
                                    std::to_string(y) + ")");
            }
            if (x != y && v == 0.0) {
                throw InvalidSystem("distinct points " + std::to_string(x) + " and " + std::to_string(y) +
                                    " are at distance 0");
            }
        }
    }
    if (!check_triangle) {
        return;
    }
    // Relative slack absorbs rounding in generated metrics (e.g. normalized Hamming).
    for (std::size_t x = 0; x < n_; ++x) {
        for (std::size_t y = 0; y < n_; ++y) {
            for (std::size_t z = 0; z < n_; ++z) {
                double lhs = (*this)(x, z);
                double rhs = (*this)(x, y) + (*this)(y, z);
                if (lhs > rhs * (1.0 + 1e-12)) {
                    throw InvalidSystem("triangle inequality fails for (" + std::to_string(x) + "," +
                                        std::to_string(y) + "," + std::to_string(z) + ")");
                }
            }
        }
    }
}

namespace {

std::vector<Step> steps_from(std::vector<MapTable> maps, const std::vector<double>& potential)
{
    std::vector<Step> out;
    out.reserve(maps.size());
    for (auto& m : maps) {
        out.push_back(Step{std::move(m), potential});
    }
    return out;
}

}  // namespace

NdsSystem::NdsSystem(DistanceMatrix metric, std::vector<MapTable> prefix, std::vector<MapTable> period,
                     std::vector<double> potential, bool validate_metric)
    : NdsSystem(std::move(metric), steps_from(std::move(prefix), potential), steps_from(std::move(period), potential),
                validate_metric)
{
}

NdsSystem::NdsSystem(DistanceMatrix metric, std::vector<Step> prefix, std::vector<Step> period, bool validate_metric)
    : metric_(std::move(metric)), prefix_(std::move(prefix)), period_(std::move(period))
{
    if (metric_.size() == 0) {
        throw InvalidSystem("system must have at least one point");
    }
    metric_.validate(validate_metric);
    validate_steps();
}

void NdsSystem::validate_steps() const
{
    if (period_.empty()) {
        throw InvalidSystem("map period must be >= 1");
    }
    auto check = [&](const Step& s, std::size_t index) {
        if (s.map.size() != size()) {
            throw InvalidSystem("map " + std::to_string(index) + " has " + std::to_string(s.map.size()) +
                                " entries, expected " + std::to_string(size()));
        }
        for (auto v : s.map) {
            if (v >= size()) {
                throw InvalidSystem("map " + std::to_string(index) + " sends a point outside 0.." +
                                    std::to_string(size() - 1));
            }
        }
        if (s.potential.size() != size()) {
            throw InvalidSystem("potential at step " + std::to_string(index) + " has wrong length");
        }
        for (auto v : s.potential) {
            if (!std::isfinite(v)) {
                throw InvalidSystem("potential must be finite");
            }
        }
    };
    std::size_t i = 1;
    for (const auto& s : prefix_) {
        check(s, i++);
    }
    for (const auto& s : period_) {
        check(s, i++);
    }
}

const Step& NdsSystem::step(std::size_t i) const
{
    if (i <= prefix_.size()) {
        return prefix_[i - 1];
    }
    return period_[(i - prefix_.size() - 1) % period_.size()];
}

bool NdsSystem::has_static_potential() const
{
    const auto& first = step(1).potential;
    auto same = [&](const Step& s) { return s.potential == first; };
    return std::all_of(prefix_.begin(), prefix_.end(), same) && std::all_of(period_.begin(), period_.end(), same);
}

double NdsSystem::potential_norm() const
{
    double best = 0.0;
    auto scan = [&](const Step& s) {
        for (auto v : s.potential) {
            best = std::max(best, std::abs(v));
        }
    };
    std::for_each(prefix_.begin(), prefix_.end(), scan);
    std::for_each(period_.begin(), period_.end(), scan);
    return best;
}

NdsSystem NdsSystem::shifted(std::size_t k) const
{
    if (k <= 1) {
        return *this;
    }
    std::size_t drop = k - 1;
    std::vector<Step> prefix;
    std::vector<Step> period;
    if (drop <= prefix_.size()) {
        prefix.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(drop), prefix_.end());
        period = period_;
    } else {
        std::size_t rot = (drop - prefix_.size()) % period_.size();
        for (std::size_t j = 0; j < period_.size(); ++j) {
            period.push_back(period_[(rot + j) % period_.size()]);
        }
    }
    return NdsSystem(metric_, std::move(prefix), std::move(period), false);
}

NdsSystem NdsSystem::restructured(std::size_t new_prefix, std::size_t new_period) const
{
    if (new_prefix < prefix_.size() || new_period == 0 || new_period % period_.size() != 0) {
        throw InvalidSystem("restructured: prefix must not shrink and period must be a multiple of " +
                            std::to_string(period_.size()));
    }
    std::vector<Step> prefix;
    std::vector<Step> period;
    for (std::size_t i = 1; i <= new_prefix; ++i) {
        prefix.push_back(step(i));
    }
    for (std::size_t i = new_prefix + 1; i <= new_prefix + new_period; ++i) {
        period.push_back(step(i));
    }
    return NdsSystem(metric_, std::move(prefix), std::move(period), false);
}

NdsSystem NdsSystem::with_potential(std::vector<double> potential) const
{
    std::vector<std::vector<double>> all(prefix_.size() + period_.size(), potential);
    return with_step_potentials(all);
}

NdsSystem NdsSystem::with_step_potentials(const std::vector<std::vector<double>>& potentials) const
{
    if (potentials.size() != prefix_.size() + period_.size()) {
        throw InvalidSystem("with_step_potentials: expected one potential per step");
    }
    auto prefix = prefix_;
    auto period = period_;
    std::size_t i = 0;
    for (auto& s : prefix) {
        s.potential = potentials[i++];
    }
    for (auto& s : period) {
        s.potential = potentials[i++];
    }
    return NdsSystem(metric_, std::move(prefix), std::move(period), false);
}

OpenCover::OpenCover(std::vector<PointSet> sets) : sets_(std::move(sets))
{
    if (sets_.empty()) {
        throw InvalidSystem("cover must contain at least one set");
    }
    PointSet all(sets_.front().universe_size());
    for (const auto& s : sets_) {
        if (s.empty()) {
            throw InvalidSystem("cover sets must be nonempty");
        }
        all |= s;
    }
    if (all.count() != all.universe_size()) {
        throw InvalidSystem("cover sets do not cover every point");
    }
}

double OpenCover::mesh(const DistanceMatrix& metric) const
{
    double best = 0.0;
    for (const auto& s : sets_) {
        auto e = s.elements();
        for (auto x : e) {
            for (auto y : e) {
                best = std::max(best, metric(x, y));
            }
        }
    }
    return best;
}

double CoverCandidate::weight(double alpha, bool center_value) const
{
    double s = center_value ? center_birkhoff : sup_birkhoff;
    return std::exp(-alpha * static_cast<double>(length) + s);
}

MapTable compose(const NdsSystem& sys, std::size_t start, std::size_t steps)
{
    MapTable out(sys.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    for (std::size_t s = 0; s < steps; ++s) {
        const auto& f = sys.map_at(start + s);
        for (auto& v : out) {
            v = f[v];
        }
    }
    return out;
}

double bowen_distance(const NdsSystem& sys, std::size_t x, std::size_t y, std::size_t n)
{
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        best = std::max(best, sys.metric()(x, y));
        x = sys.map_at(j + 1)[x];
        y = sys.map_at(j + 1)[y];
    }
    return best;
}

double birkhoff_sum(const NdsSystem& sys, std::size_t x, std::size_t n)
{
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sum += sys.potential_at(j + 1)[x];
        x = sys.map_at(j + 1)[x];
    }
    return sum;
}

CoverCandidate bowen_ball(const NdsSystem& sys, std::size_t x, std::size_t n, double eps)
{
    CoverCandidate c;
    c.kind = CandidateKind::bowen_ball;
    c.center = x;
    c.radius = eps;
    c.length = n;
    c.members = PointSet(sys.size());
    c.sup_birkhoff = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < sys.size(); ++y) {
        if (bowen_distance(sys, x, y, n) < eps) {
            c.members.insert(y);
            c.sup_birkhoff = std::max(c.sup_birkhoff, birkhoff_sum(sys, y, n));
        }
    }
    c.center_birkhoff = birkhoff_sum(sys, x, n);
    return c;
}

CoverCandidate string_set(const NdsSystem& sys, const OpenCover& cover, std::span<const std::size_t> word)
{
    CoverCandidate c;
    c.kind = CandidateKind::string_cover;
    c.word.assign(word.begin(), word.end());
    c.length = word.size();
    c.members = PointSet(sys.size());
    c.sup_birkhoff = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < sys.size(); ++x) {
        std::size_t y = x;
        bool inside = true;
        for (std::size_t j = 0; j < word.size(); ++j) {
            if (!cover[word[j]].contains(y)) {
                inside = false;
                break;
            }
            y = sys.map_at(j + 1)[y];
        }
        if (inside) {
            c.members.insert(x);
            c.sup_birkhoff = std::max(c.sup_birkhoff, birkhoff_sum(sys, x, word.size()));
        }
    }
    c.center_birkhoff = c.sup_birkhoff;
    return c;
}

PointSet image(const MapTable& map, const PointSet& z)
{
    PointSet out(z.universe_size());
    for (auto x : z.elements()) {
        out.insert(map[x]);
    }
    return out;
}

double oscillation(const NdsSystem& sys, double radius)
{
    double best = 0.0;
    const auto& d = sys.metric();
    auto scan = [&](const Step& s) {
        for (std::size_t x = 0; x < sys.size(); ++x) {
            for (std::size_t y = 0; y < sys.size(); ++y) {
                if (d(x, y) < radius) {
                    best = std::max(best, std::abs(s.potential[x] - s.potential[y]));
                }
            }
        }
    };
    std::for_each(sys.prefix_steps().begin(), sys.prefix_steps().end(), scan);
    std::for_each(sys.period_steps().begin(), sys.period_steps().end(), scan);
    return best;
}

Trajectories::Trajectories(const NdsSystem& sys, std::size_t horizon)
    : p_(sys.size()),
      horizon_(horizon),
      orbit_((horizon + 1) * p_),
      birkhoff_((horizon + 1) * p_, 0.0),
      bowen_(horizon * p_ * p_, 0.0)
{
    const auto& d = sys.metric();
    for (std::size_t x = 0; x < p_; ++x) {
        orbit_[x] = x;
    }
    for (std::size_t j = 1; j <= horizon; ++j) {
        const auto& step = sys.step(j);
        for (std::size_t x = 0; x < p_; ++x) {
            auto prev = orbit_[(j - 1) * p_ + x];
            orbit_[j * p_ + x] = step.map[prev];
            birkhoff_[j * p_ + x] = birkhoff_[(j - 1) * p_ + x] + step.potential[prev];
        }
    }
    for (std::size_t n = 1; n <= horizon; ++n) {
        for (std::size_t x = 0; x < p_; ++x) {
            auto fx = orbit_[(n - 1) * p_ + x];
            for (std::size_t y = 0; y < p_; ++y) {
                double here = d(fx, orbit_[(n - 1) * p_ + y]);
                double prev = n > 1 ? bowen_[((n - 2) * p_ + x) * p_ + y] : 0.0;
                bowen_[((n - 1) * p_ + x) * p_ + y] = std::max(prev, here);
            }
        }
    }
}

PointSet Trajectories::ball(std::size_t n, std::size_t x, double eps, bool closed) const
{
    PointSet out(p_);
    const double* row = &bowen_[((n - 1) * p_ + x) * p_];
    for (std::size_t y = 0; y < p_; ++y) {
        if (closed ? row[y] <= eps : row[y] < eps) {
            out.insert(y);
        }
    }
    return out;
}

}  // namespace thetapress
