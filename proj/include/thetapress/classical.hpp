#pragma once

#include <cstddef>
#include <vector>

#include "thetapress/nds.hpp"
#include "thetapress/point_set.hpp"
#include "thetapress/set_cover.hpp"

namespace thetapress {

/// An optimal (or greedy) weighted point set with its witness.
struct WeightedWitness {
    double value = 0.0;
    SolveStatus status = SolveStatus::exact;
    std::vector<std::size_t> points;
};

/// Q_n and P_n at one (n, eps) cell.
///
/// Spanning uses closed balls d_n <= eps with centres anywhere in X; separation
/// means pairwise d_n > eps inside Z. Both conventions differ from the strict
/// Bowen balls used by the cover engine.
struct SpanningResult {
    std::size_t n = 0;
    double epsilon = 0.0;
    double spanning_value = 0.0;
    double separated_value = 0.0;
    WeightedWitness spanning;
    WeightedWitness separated;
};

/// min sum_{x in F} e^{S_n phi(x)} over (n, eps)-spanning sets F of Z (cardinality when !weighted).
WeightedWitness min_spanning(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps, bool weighted,
                             SolverKind solver = SolverKind::automatic);

/// max sum_{x in E} e^{S_n phi(x)} over (n, eps)-separated sets E inside Z.
WeightedWitness max_separated(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps, bool weighted,
                              SolverKind solver = SolverKind::automatic);

/// Both values at one cell.
SpanningResult spanning_cell(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps,
                             SolverKind solver = SolverKind::automatic);

/// Per-epsilon limsup surrogates: max over the n window of (1/n) log Q_n and (1/n) log P_n.
struct ClassicalSurrogate {
    double epsilon = 0.0;
    double spanning = 0.0;
    double separated = 0.0;
};

struct ClassicalReport {
    /// Cells in epsilon-ladder order, n ascending within each epsilon.
    std::vector<SpanningResult> cells;
    std::vector<ClassicalSurrogate> pressure;
    /// Same surrogates with phi = 0.
    std::vector<ClassicalSurrogate> entropy;
};

struct ClassicalOptions {
    SolverKind solver = SolverKind::automatic;
    /// Also compute the phi = 0 specialisation.
    bool with_entropy = true;
    std::size_t jobs = 1;
};

ClassicalReport classical_pressure(const NdsSystem& sys, const PointSet& z, const std::vector<double>& eps_ladder,
                                   std::size_t n_lo, std::size_t n_hi, const ClassicalOptions& options = {});

/// d_n^*(x, y) = max over starting times i and j < n of d(f_i^j x, f_i^j y).
///
/// Beyond the prefix, f_i^j depends on i only modulo the period, so i ranges over
/// 1..r+q. The result is a P x P matrix.
DistanceMatrix sup_bowen_metric(const NdsSystem& sys, std::size_t n);

struct SupEntropyCell {
    std::size_t n = 0;
    double epsilon = 0.0;
    /// r_n^*: minimal cardinality of an (n, eps)^*-spanning set (centres in X).
    std::size_t spanning_count = 0;
    SolveStatus status = SolveStatus::exact;
};

struct SupEntropyResult {
    std::vector<SupEntropyCell> cells;
    /// max over cells of (1/n) log r_n^*.
    double value = 0.0;
};

/// Finite-scale topological sup-entropy of Z.
SupEntropyResult sup_entropy(const NdsSystem& sys, const PointSet& z, const std::vector<double>& eps_ladder,
                             std::size_t n_lo, std::size_t n_hi, SolverKind solver = SolverKind::automatic);

}  // namespace thetapress
