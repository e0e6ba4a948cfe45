#include <doctest.h>

#include <random>

#include "thetapress/errors.hpp"
#include "thetapress/generators.hpp"
#include "thetapress/measure.hpp"

using namespace thetapress;

TEST_CASE("measure weights are validated")
{
    CHECK_THROWS_AS(DiscreteMeasure({0.5, 0.4}), ConfigError);
    CHECK_THROWS_AS(DiscreteMeasure({1.5, -0.5}), ConfigError);
    CHECK_THROWS_AS(DiscreteMeasure({}), ConfigError);
    CHECK_NOTHROW(DiscreteMeasure({0.25, 0.75, 0.0}));
    CHECK_THROWS_AS(DiscreteMeasure::dirac(3, 3), ConfigError);
    CHECK_THROWS_AS(DiscreteMeasure::uniform(PointSet(3)), ConfigError);
}

TEST_CASE("factory measures have the expected weights and supports")
{
    auto z = PointSet::of(6, {1, 3, 4});
    auto u = DiscreteMeasure::uniform(z);
    CHECK(u.support() == z);
    CHECK(u.weights()[3] == doctest::Approx(1.0 / 3.0));
    CHECK(u.weights()[0] == 0.0);

    auto g = DiscreteMeasure::geometric(z);
    CHECK(g.support() == z);
    CHECK(g.weights()[1] == doctest::Approx(4.0 / 7.0));
    CHECK(g.weights()[3] == doctest::Approx(2.0 / 7.0));
    CHECK(g.weights()[4] == doctest::Approx(1.0 / 7.0));

    auto d = DiscreteMeasure::dirac(6, 2);
    CHECK(d.support() == PointSet::of(6, {2}));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto r = DiscreteMeasure::random(z, seed);
        CHECK(!r.support().empty());
        CHECK(r.support().is_subset_of(z));
        CHECK(r.weights() == DiscreteMeasure::random(z, seed).weights());
    }
}

TEST_CASE("measure pressure is the pressure of the support")
{
    auto sys = random_system(5);
    std::mt19937_64 rng(5);
    auto z = random_subset(sys.size(), rng);
    auto mu = DiscreteMeasure::geometric(z);
    auto a = measure_pressure_profile(sys, mu, 0.2, Theta(1, 2), 2, 4);
    auto b = pressure_profile(sys, z, 0.2, Theta(1, 2), 2, 4);
    REQUIRE(a.scales.size() == b.scales.size());
    for (std::size_t i = 0; i < a.scales.size(); ++i) {
        CHECK(a.scales[i].alpha == b.scales[i].alpha);
    }
    CHECK_THROWS_AS(measure_pressure_profile(sys, DiscreteMeasure::dirac(sys.size() + 1, 0), 0.2, Theta(1, 2), 2, 4),
                    ConfigError);
}

TEST_CASE("variational identities hold on random systems")
{
    RandomSystemOptions opts;
    opts.max_points = 8;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto sys = random_system(seed, opts);
        std::mt19937_64 rng(seed);
        auto z = random_subset(sys.size(), rng);
        auto inf = variational_inf_check(sys, DiscreteMeasure::uniform(z), 0.2, Theta(1, 2), 2, 3, {});
        auto sup = variational_sup_check(sys, z, 0.2, Theta(1, 2), 2, 3, {}, 2, seed);
        CAPTURE(seed);
        CHECK(inf.passed);
        CHECK(sup.passed);
        CHECK(sup.evaluated == z.count() + 4);
    }
}

TEST_CASE("variational infimum falls back to sampling on large complements")
{
    auto sys = random_system(2);
    auto mu = DiscreteMeasure::dirac(sys.size(), 0);
    auto check = variational_inf_check(sys, mu, 0.2, Theta(1, 1), 2, 3, {}, 1, 5, 3);
    CHECK(check.evaluated == 7);
    CHECK(check.passed);
}
