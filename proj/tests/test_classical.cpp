#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thetapress/classical.hpp"
#include "thetapress/errors.hpp"
#include "thetapress/generators.hpp"

using namespace thetapress;

namespace {

NdsSystem identity_system(DistanceMatrix d, std::vector<double> phi)
{
    const auto p = d.size();
    return NdsSystem(std::move(d), std::vector<MapTable>{}, std::vector<MapTable>{identity_map(p)}, std::move(phi));
}

DistanceMatrix all_ones(std::size_t p)
{
    DistanceMatrix d(p);
    for (std::size_t x = 0; x < p; ++x) {
        for (std::size_t y = x + 1; y < p; ++y) {
            d.set(x, y, 1.0);
        }
    }
    return d;
}

// Minimum weighted spanning set by enumerating every subset of X.
double brute_spanning(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps)
{
    const std::size_t p = sys.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask < (std::size_t{1} << p); ++mask) {
        bool spans = true;
        for (auto y : z.elements()) {
            bool hit = false;
            for (std::size_t x = 0; x < p && !hit; ++x) {
                hit = (mask >> x & 1U) && oracle::bowen(sys, x, y, n) <= eps;
            }
            spans = spans && hit;
        }
        if (!spans) {
            continue;
        }
        double total = 0.0;
        for (std::size_t x = 0; x < p; ++x) {
            if (mask >> x & 1U) {
                total += std::exp(oracle::birkhoff(sys, x, n));
            }
        }
        best = std::min(best, total);
    }
    return best;
}

double brute_separated(const NdsSystem& sys, const PointSet& z, std::size_t n, double eps)
{
    auto pts = z.elements();
    std::vector<std::vector<bool>> adj(pts.size(), std::vector<bool>(pts.size(), false));
    std::vector<double> w;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        w.push_back(std::exp(oracle::birkhoff(sys, pts[a], n)));
        for (std::size_t b = 0; b < pts.size(); ++b) {
            adj[a][b] = a != b && oracle::bowen(sys, pts[a], pts[b], n) <= eps;
        }
    }
    return oracle::exhaustive_independent(adj, w);
}

}  // namespace

TEST_CASE("three points at mutual distance one need three centres")
{
    auto sys = identity_system(all_ones(3), {0.0, 0.0, 0.0});
    auto z = PointSet::full(3);
    CHECK(min_spanning(sys, z, 1, 0.5, false).value == doctest::Approx(3.0));
    CHECK(max_separated(sys, z, 1, 0.5, false).value == doctest::Approx(3.0));
    CHECK(min_spanning(sys, z, 4, 1.0, false).value == doctest::Approx(1.0));
}

TEST_CASE("path metric separates only the endpoints")
{
    DistanceMatrix d(3);
    d.set(0, 1, 1.0);
    d.set(1, 2, 1.0);
    d.set(0, 2, 2.0);
    auto sys = identity_system(d, {0.0, 0.0, 0.0});
    auto z = PointSet::full(3);
    auto sep = max_separated(sys, z, 1, 1.5, false);
    CHECK(sep.value == doctest::Approx(2.0));
    CHECK(sep.points == std::vector<std::size_t>{0, 2});
    auto span = min_spanning(sys, z, 1, 1.5, false);
    CHECK(span.value == doctest::Approx(1.0));
    CHECK(span.points == std::vector<std::size_t>{1});
}

TEST_CASE("spanning centres may lie outside Z")
{
    DistanceMatrix d(3);
    d.set(0, 1, 1.0);
    d.set(1, 2, 1.0);
    d.set(0, 2, 2.0);
    auto sys = identity_system(d, {0.0, -5.0, 0.0});
    auto z = PointSet::of(3, {0, 2});
    auto span = min_spanning(sys, z, 1, 1.0, true);
    CHECK(span.points == std::vector<std::size_t>{1});
    CHECK(span.value == doctest::Approx(std::exp(-5.0)));
}

TEST_CASE("weighted spanning and separated values match enumeration")
{
    RandomSystemOptions opts;
    opts.max_points = 7;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto sys = random_system(seed, opts);
        std::mt19937_64 rng(seed);
        auto z = random_subset(sys.size(), rng);
        for (std::size_t n : {1, 2, 4}) {
            for (double eps : {0.15, 0.3}) {
                auto cell = spanning_cell(sys, z, n, eps);
                CAPTURE(seed);
                CAPTURE(n);
                CHECK(cell.spanning_value == doctest::Approx(brute_spanning(sys, z, n, eps)).epsilon(1e-12));
                CHECK(cell.separated_value == doctest::Approx(brute_separated(sys, z, n, eps)).epsilon(1e-12));
                // A maximal separated set spans, so Q_n <= P_n.
                CHECK(cell.spanning_value <= cell.separated_value * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("classical surrogates at a fixed point equal the potential")
{
    NdsSystem sys(DistanceMatrix(1), std::vector<MapTable>{}, std::vector<MapTable>{MapTable{0}},
                  std::vector<double>{0.7});
    auto report = classical_pressure(sys, PointSet::full(1), {0.5, 0.1}, 2, 5);
    REQUIRE(report.cells.size() == 8);
    CHECK(report.cells[0].epsilon == 0.5);
    CHECK(report.cells[0].n == 2);
    CHECK(report.cells[7].epsilon == 0.1);
    CHECK(report.cells[7].n == 5);
    for (const auto& s : report.pressure) {
        CHECK(s.spanning == doctest::Approx(0.7));
        CHECK(s.separated == doctest::Approx(0.7));
    }
    for (const auto& s : report.entropy) {
        CHECK(s.spanning == doctest::Approx(0.0));
    }
}

TEST_CASE("classical surrogate is the max over the n window")
{
    auto sys = random_system(11);
    auto z = PointSet::full(sys.size());
    ClassicalOptions opt;
    opt.jobs = 3;
    auto report = classical_pressure(sys, z, {0.2}, 1, 4, opt);
    double expect = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= 4; ++n) {
        expect = std::max(expect, std::log(brute_separated(sys, z, n, 0.2)) / static_cast<double>(n));
    }
    CHECK(report.pressure[0].separated == doctest::Approx(expect));
}

TEST_CASE("classical input validation")
{
    auto sys = doubling_system(4);
    CHECK_THROWS_AS(classical_pressure(sys, PointSet(4), {0.1}, 1, 2), ConfigError);
    CHECK_THROWS_AS(classical_pressure(sys, PointSet::full(4), {}, 1, 2), ConfigError);
    CHECK_THROWS_AS(classical_pressure(sys, PointSet::full(4), {-0.1}, 1, 2), ConfigError);
    CHECK_THROWS_AS(classical_pressure(sys, PointSet::full(4), {0.1}, 3, 2), ConfigError);
}

TEST_CASE("sup Bowen metric takes every starting time")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sys = random_system(seed);
        for (std::size_t n : {1, 3}) {
            auto d = sup_bowen_metric(sys, n);
            for (std::size_t x = 0; x < sys.size(); ++x) {
                for (std::size_t y = 0; y < sys.size(); ++y) {
                    double expect = 0.0;
                    for (std::size_t i = 1; i <= sys.prefix_length() + sys.period(); ++i) {
                        for (std::size_t j = 0; j < n; ++j) {
                            auto f = compose(sys, i, j);
                            expect = std::max(expect, sys.metric()(f[x], f[y]));
                        }
                    }
                    CHECK(d(x, y) == expect);
                }
            }
        }
    }
}

TEST_CASE("sup entropy of identity maps counts the separated points")
{
    auto sys = identity_system(circle_metric(6), std::vector<double>(6, 0.0));
    auto z = PointSet::of(6, {0, 2, 4});
    auto r = sup_entropy(sys, z, {0.1}, 2, 4);
    for (const auto& c : r.cells) {
        CHECK(c.spanning_count == 3);
    }
    CHECK(r.value == doctest::Approx(std::log(3.0) / 2.0));
}

TEST_CASE("sup entropy of a single point is zero")
{
    auto sys = doubling_system(8);
    CHECK(sup_entropy(sys, PointSet::of(8, {3}), {0.1, 0.05}, 1, 3).value == 0.0);
}
