#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thetapress/errors.hpp"
#include "thetapress/set_cover.hpp"

using namespace thetapress;

namespace {

struct RandomInstance {
    PointSet universe;
    std::vector<PointSet> sets;
    std::vector<double> weights;
};

RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k)
{
    RandomInstance inst{PointSet(n), {}, {}};
    for (std::size_t e = 0; e < n; ++e) {
        if (rng() % 3 != 0) {
            inst.universe.insert(e);
        }
    }
    std::uniform_real_distribution<double> w(0.05, 3.0);
    for (std::size_t i = 0; i < k; ++i) {
        PointSet s(n);
        for (std::size_t e = 0; e < n; ++e) {
            if (rng() % 3 == 0) {
                s.insert(e);
            }
        }
        s.insert(rng() % n);
        inst.sets.push_back(s);
        inst.weights.push_back(w(rng));
    }
    // guarantee feasibility
    PointSet all = PointSet::full(n);
    inst.sets.push_back(all);
    inst.weights.push_back(w(rng) + 3.0);
    return inst;
}

std::vector<std::vector<std::size_t>> as_lists(const std::vector<PointSet>& sets)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : sets) {
        out.push_back(s.elements());
    }
    return out;
}

}  // namespace

TEST_CASE("weighted cover: worked examples")
{
    PointSet u = PointSet::of(3, {0, 1, 2});
    std::vector<PointSet> sets{PointSet::of(3, {0, 1}), PointSet::of(3, {1, 2}), PointSet::of(3, {0, 1, 2})};
    std::vector<double> w{1.0, 1.0, 1.9};
    auto sol = solve_weighted_cover(u, sets, w, SolverKind::exact);
    CHECK(sol.value == doctest::Approx(1.9));
    CHECK(sol.chosen == std::vector<std::size_t>{2});
    CHECK(sol.status == SolveStatus::exact);

    CHECK(solve_weighted_cover(PointSet(3), sets, w, SolverKind::exact).value == 0.0);

    std::vector<PointSet> one{PointSet::of(3, {0, 1, 2})};
    std::vector<double> es{std::exp(0.7)};
    CHECK(solve_weighted_cover(u, one, es, SolverKind::exact).value == doctest::Approx(std::exp(0.7)));

    std::vector<PointSet> partial{PointSet::of(3, {0, 1})};
    std::vector<double> w1{1.0};
    CHECK_THROWS_AS(solve_weighted_cover(u, partial, w1, SolverKind::exact), Infeasible);
}

TEST_CASE("exact cover matches exhaustive enumeration; greedy is never below")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 3 + rng() % 14;
        std::size_t k = 2 + rng() % 10;
        auto inst = random_instance(rng, n, k);
        double expected = oracle::exhaustive_cover(inst.universe.elements(), as_lists(inst.sets), inst.weights);
        auto exact = solve_weighted_cover(inst.universe, inst.sets, inst.weights, SolverKind::exact);
        auto greedy = solve_weighted_cover(inst.universe, inst.sets, inst.weights, SolverKind::greedy);
        CHECK(exact.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(greedy.value >= exact.value * (1 - 1e-12));
        CHECK(greedy.status == SolveStatus::greedy);
        double ln = 1.0 + std::log(static_cast<double>(std::max<std::size_t>(1, inst.universe.count())));
        CHECK(greedy.value <= ln * exact.value * (1 + 1e-12));

        PointSet covered(n);
        double total = 0.0;
        for (auto i : exact.chosen) {
            covered |= inst.sets[i];
            total += inst.weights[i];
        }
        CHECK(inst.universe.is_subset_of(covered));
        CHECK(total == doctest::Approx(exact.value));
    }
}

TEST_CASE("exact cover on universes wider than one machine word")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 70;
        std::size_t k = 4 + rng() % 8;
        auto inst = random_instance(rng, n, k);
        // keep the oracle happy: only the listed points matter
        double expected = oracle::exhaustive_cover(inst.universe.elements(), as_lists(inst.sets), inst.weights);
        auto exact = solve_weighted_cover(inst.universe, inst.sets, inst.weights, SolverKind::exact);
        CHECK(exact.value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("automatic solver selection")
{
    CHECK(pick_solver(SolverKind::automatic, 24, 5000) == SolveStatus::exact);
    CHECK(pick_solver(SolverKind::automatic, 25, 10) == SolveStatus::greedy);
    CHECK(pick_solver(SolverKind::automatic, 10, 5001) == SolveStatus::greedy);
    CHECK(pick_solver(SolverKind::greedy, 1, 1) == SolveStatus::greedy);
    CHECK(parse_solver("exact") == SolverKind::exact);
    CHECK_THROWS(parse_solver("ilp"));
}

TEST_CASE("maximum weight independent set")
{
    // path 0 - 1 - 2
    std::vector<PointSet> path{PointSet::of(3, {1}), PointSet::of(3, {0, 2}), PointSet::of(3, {1})};
    std::vector<double> ones{1, 1, 1};
    auto sol = max_weight_independent_set(path, ones, SolverKind::exact);
    CHECK(sol.value == 2.0);
    CHECK(sol.chosen == std::vector<std::size_t>{0, 2});

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> w(0.1, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 14;
        std::vector<PointSet> adj(n, PointSet(n));
        std::vector<std::vector<bool>> matrix(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (rng() % 3 == 0) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                    matrix[a][b] = matrix[b][a] = true;
                }
            }
        }
        std::vector<double> weights(n);
        for (auto& v : weights) {
            v = w(rng);
        }
        auto exact = max_weight_independent_set(adj, weights, SolverKind::exact);
        auto greedy = max_weight_independent_set(adj, weights, SolverKind::greedy);
        CHECK(exact.value == doctest::Approx(oracle::exhaustive_independent(matrix, weights)));
        CHECK(greedy.value <= exact.value + 1e-12);
    }
}
