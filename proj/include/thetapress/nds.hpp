#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "thetapress/point_set.hpp"

namespace thetapress {

/// A total self-map of 0..P-1 given as a lookup table.
using MapTable = std::vector<std::size_t>;

/// Symmetric P x P matrix of non-negative distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}
    DistanceMatrix(std::size_t n, std::vector<double> row_major);

    std::size_t size() const { return n_; }
    double operator()(std::size_t x, std::size_t y) const { return d_[x * n_ + y]; }
    void set(std::size_t x, std::size_t y, double v)
    {
        d_[x * n_ + y] = v;
        d_[y * n_ + x] = v;
    }

    double diameter() const;
    /// Smallest strictly positive entry, or +inf for a one-point space.
    double min_positive() const;

    /// Throws InvalidSystem on a violated metric axiom. The triangle check is O(P^3).
    void validate(bool check_triangle = true) const;

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// One time step of a nonautonomous system: the map f_i and the potential applied at time i.
struct Step {
    MapTable map;
    std::vector<double> potential;

    friend bool operator==(const Step&, const Step&) = default;
};

/// Finite metric space with an eventually periodic map sequence and a potential.
///
/// Time indices are 1-based. Steps 1..r form the prefix; afterwards the sequence
/// repeats with period q, so f_i = period[(i - r - 1) mod q] for i > r. Each step
/// carries its own potential so that derived systems (powers, shifts) stay exact;
/// a system built from a single potential vector simply repeats it.
class NdsSystem {
public:
    NdsSystem(DistanceMatrix metric, std::vector<MapTable> prefix, std::vector<MapTable> period,
              std::vector<double> potential, bool validate_metric = true);

    NdsSystem(DistanceMatrix metric, std::vector<Step> prefix, std::vector<Step> period,
              bool validate_metric = true);

    std::size_t size() const { return metric_.size(); }
    const DistanceMatrix& metric() const { return metric_; }
    std::size_t prefix_length() const { return prefix_.size(); }
    std::size_t period() const { return period_.size(); }

    const Step& step(std::size_t i) const;
    const MapTable& map_at(std::size_t i) const { return step(i).map; }
    std::span<const double> potential_at(std::size_t i) const { return step(i).potential; }
    /// The potential at time 1.
    std::span<const double> potential() const { return potential_at(1); }
    bool has_static_potential() const;

    /// max over steps and points of |phi_i(x)|.
    double potential_norm() const;

    const std::vector<Step>& prefix_steps() const { return prefix_; }
    const std::vector<Step>& period_steps() const { return period_; }

    /// The shifted sequence {f_i}_{i >= k}, k >= 1.
    NdsSystem shifted(std::size_t k) const;

    /// Same sequence rewritten with prefix length r' >= r and period q' (a multiple of q).
    NdsSystem restructured(std::size_t new_prefix, std::size_t new_period) const;

    /// Replace every step potential by the same vector.
    NdsSystem with_potential(std::vector<double> potential) const;

    /// Replace step potentials; `potentials` has one entry per prefix+period step.
    NdsSystem with_step_potentials(const std::vector<std::vector<double>>& potentials) const;

    friend bool operator==(const NdsSystem&, const NdsSystem&) = default;

private:
    void validate_steps() const;

    DistanceMatrix metric_;
    std::vector<Step> prefix_;
    std::vector<Step> period_;
};

/// A finite cover of the point set by nonempty subsets.
class OpenCover {
public:
    explicit OpenCover(std::vector<PointSet> sets);

    const std::vector<PointSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    const PointSet& operator[](std::size_t i) const { return sets_[i]; }

    double mesh(const DistanceMatrix& metric) const;

private:
    std::vector<PointSet> sets_;
};

enum class CandidateKind { bowen_ball, string_cover };

/// A Bowen ball B_n(x, eps) or a string set X(U), with its Birkhoff data.
struct CoverCandidate {
    CandidateKind kind = CandidateKind::bowen_ball;
    std::size_t center = 0;   // bowen_ball only
    double radius = 0.0;      // bowen_ball only
    std::vector<std::size_t> word;  // string_cover only
    std::size_t length = 1;
    PointSet members;
    /// max over members of S_n phi; -inf when members is empty.
    double sup_birkhoff = 0.0;
    /// S_n phi(center) for balls; equals sup_birkhoff for strings.
    double center_birkhoff = 0.0;

    double weight(double alpha, bool center_value = false) const;
};

/// Function table for f_i^n = f_{i+n-1} o ... o f_i; identity when n = 0.
MapTable compose(const NdsSystem& sys, std::size_t start, std::size_t steps);

/// d_n(x, y) = max_{j<n} d(f_1^j x, f_1^j y).
double bowen_distance(const NdsSystem& sys, std::size_t x, std::size_t y, std::size_t n);

/// S_n phi(x) = sum_{j<n} phi_{j+1}(f_1^j x).
double birkhoff_sum(const NdsSystem& sys, std::size_t x, std::size_t n);

/// {y : d_n(x, y) < eps}, strict inequality.
CoverCandidate bowen_ball(const NdsSystem& sys, std::size_t x, std::size_t n, double eps);

/// X(U) = {x : f_1^j(x) in U_{word[j]} for all j}.
CoverCandidate string_set(const NdsSystem& sys, const OpenCover& cover, std::span<const std::size_t> word);

/// Image of a point set under a map table.
PointSet image(const MapTable& map, const PointSet& z);

/// max{|phi_i(x) - phi_i(y)| : d(x, y) < radius} over all step potentials.
double oscillation(const NdsSystem& sys, double radius);

/// Precomputed orbits f_1^j(x), Birkhoff sums and Bowen distances up to a fixed horizon.
class Trajectories {
public:
    Trajectories(const NdsSystem& sys, std::size_t horizon);

    std::size_t horizon() const { return horizon_; }
    std::size_t size() const { return p_; }
    /// f_1^j(x) for 0 <= j <= horizon.
    std::size_t point(std::size_t j, std::size_t x) const { return orbit_[j * p_ + x]; }
    /// S_n phi(x) for 0 <= n <= horizon.
    double birkhoff(std::size_t n, std::size_t x) const { return birkhoff_[n * p_ + x]; }
    /// d_n(x, y) for 1 <= n <= horizon.
    double bowen(std::size_t n, std::size_t x, std::size_t y) const { return bowen_[((n - 1) * p_ + x) * p_ + y]; }

    /// Bowen ball members {y : d_n(x,y) < eps} (or <= eps when closed).
    PointSet ball(std::size_t n, std::size_t x, double eps, bool closed = false) const;

private:
    std::size_t p_;
    std::size_t horizon_;
    std::vector<std::size_t> orbit_;
    std::vector<double> birkhoff_;
    std::vector<double> bowen_;
};

}  // namespace thetapress
