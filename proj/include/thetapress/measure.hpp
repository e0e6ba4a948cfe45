#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "thetapress/cover_pressure.hpp"
#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"

namespace thetapress {

/// A probability vector on 0..P-1.
class DiscreteMeasure {
public:
    /// Throws ConfigError unless all weights are finite, non-negative and sum to 1 within 1e-12.
    explicit DiscreteMeasure(std::vector<double> weights, std::string name = "explicit");

    static DiscreteMeasure dirac(std::size_t size, std::size_t x);
    static DiscreteMeasure uniform(const PointSet& z);
    /// mu(y_i) proportional to 2^-i over the elements of z in index order (i = 1, 2, ...).
    static DiscreteMeasure geometric(const PointSet& z);
    /// Random weights on a random nonempty subset of z; reproducible from `seed`.
    static DiscreteMeasure random(const PointSet& z, std::uint64_t seed);

    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::string& name() const { return name_; }
    PointSet support() const;

private:
    std::vector<double> weights_;
    std::string name_;
};

/// Pressure profile over finite mu-covers. On a finite space a family of balls has
/// full measure exactly when it covers the support, so this is the Bowen-ball
/// profile with universe support(mu).
PressureProfile measure_pressure_profile(const NdsSystem& sys, const DiscreteMeasure& mu, double eps, Theta theta,
                                         std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options = {});

struct VariationalCheck {
    std::string name;
    bool passed = true;
    /// Largest violation of the asserted relation (<= 0 when it holds with room).
    double worst_gap = 0.0;
    std::size_t evaluated = 0;
    std::vector<std::string> details;
};

/// Compares P_mu with min over full-measure sets Z (supersets of the support) of P(Z),
/// on both the lower and the upper surrogate. Supersets are enumerated exhaustively
/// when there are at most `exhaustive_limit` of them, otherwise `samples` random ones
/// plus the support and X are used.
VariationalCheck variational_inf_check(const NdsSystem& sys, const DiscreteMeasure& mu, double eps, Theta theta,
                                       std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options = {},
                                       std::size_t exhaustive_limit = 4096, std::size_t samples = 64,
                                       std::uint64_t seed = 1);

/// Evaluates P_mu over Diracs on Z, uniform on Z, geometric on Z and `random_count`
/// random measures on Z; asserts every value <= P(Z) + 2 tol and that the uniform
/// measure attains P(Z) within 2 tol.
VariationalCheck variational_sup_check(const NdsSystem& sys, const PointSet& z, double eps, Theta theta,
                                       std::size_t N_lo, std::size_t N_hi, const ProfileOptions& options = {},
                                       std::size_t random_count = 4, std::uint64_t seed = 1);

}  // namespace thetapress
