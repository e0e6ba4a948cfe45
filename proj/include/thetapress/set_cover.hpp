#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "thetapress/point_set.hpp"

namespace thetapress {

enum class SolverKind { exact, greedy, automatic };
enum class SolveStatus { exact, greedy };

std::string_view to_string(SolveStatus s);
std::string_view to_string(SolverKind s);
SolverKind parse_solver(std::string_view text);

/// Universes up to this size (and candidate counts up to exact_candidate_limit) are solved
/// exactly under SolverKind::automatic.
inline constexpr std::size_t exact_universe_limit = 24;
inline constexpr std::size_t exact_candidate_limit = 5000;

struct CoverSolution {
    /// Sum of chosen weights, accumulated in ascending order.
    double value = 0.0;
    SolveStatus status = SolveStatus::exact;
    /// Indices into the input set list.
    std::vector<std::size_t> chosen;
};

/// Minimum-weight subfamily of `sets` whose union contains `universe`.
///
/// The exact path is a depth-first branch-and-bound over bitmasks: branching on the
/// uncovered point with the fewest covering sets, pruning with the fractional bound
/// sum_e min_{S ni e} w_S / |S cap uncovered| and a memo of the cheapest cost seen per
/// covered mask. Sets equal on the universe are collapsed and dominated sets (a superset
/// with no larger weight exists) are dropped before the search. The greedy path picks
/// the best weight per newly covered point and is within 1 + ln|universe| of optimal.
///
/// Throws Infeasible when the union of `sets` misses part of `universe`.
CoverSolution solve_weighted_cover(const PointSet& universe, std::span<const PointSet> sets,
                                   std::span<const double> weights, SolverKind solver);

/// Resolves SolverKind::automatic for a problem of the given shape.
SolveStatus pick_solver(SolverKind solver, std::size_t universe_size, std::size_t candidate_count);

/// Maximum-weight subset of vertices 0..n-1 with no two adjacent (adjacency as bit rows).
///
/// Exact branch-and-bound with a greedy colouring bound for n <= 64; greedy
/// (heaviest-first) otherwise or when requested.
struct IndependentSet {
    double value = 0.0;
    SolveStatus status = SolveStatus::exact;
    std::vector<std::size_t> chosen;
};

IndependentSet max_weight_independent_set(const std::vector<PointSet>& adjacency, std::span<const double> weights,
                                          SolverKind solver);

}  // namespace thetapress
