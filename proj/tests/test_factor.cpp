#include <doctest.h>

#include <numeric>
#include <random>

#include "thetapress/cover_pressure.hpp"
#include "thetapress/errors.hpp"
#include "thetapress/factor.hpp"
#include "thetapress/generators.hpp"

using namespace thetapress;

TEST_CASE("relabeling is an isometric conjugacy with equal profiles")
{
    auto target = random_system(3);
    MapTable perm(target.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(3);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto fm = relabeling(target, perm);
    CHECK(fm.is_bijection());
    CHECK(fm.is_isometry());
    auto inv = fm.inverse();
    for (std::size_t k = 0; k < perm.size(); ++k) {
        CHECK(inv[perm[k]] == k);
    }
    auto a = pressure_profile(fm.lifted_source(), PointSet::full(target.size()), 0.2, Theta(1, 2), 2, 4);
    auto b = pressure_profile(target, PointSet::full(target.size()), 0.2, Theta(1, 2), 2, 4);
    for (std::size_t i = 0; i < a.scales.size(); ++i) {
        CHECK(std::abs(a.scales[i].alpha - b.scales[i].alpha) <= 2e-6);
    }
    CHECK_THROWS_AS(relabeling(target, MapTable(target.size(), 0)), ConfigError);
}

TEST_CASE("product projection builds the product metric and fibre maps")
{
    auto base = doubling_system(4);
    std::vector<std::vector<bool>> flips{{true, false, false, true}};
    auto fm = product_projection(base, 0.3, flips);
    const auto& src = fm.source();
    REQUIRE(src.size() == 8);
    CHECK(!fm.is_bijection());
    CHECK(!fm.is_isometry());
    CHECK(src.metric()(0, 1) == doctest::Approx(0.3));
    CHECK(src.metric()(0, 2) == doctest::Approx(0.25));
    CHECK(src.metric()(0, 3) == doctest::Approx(0.3));
    CHECK(src.metric()(0, 4) == doctest::Approx(0.5));
    // (0, 0) -> (0, 1) because the flip at base point 0 is set.
    CHECK(src.map_at(1)[0] == 1);
    CHECK(src.map_at(1)[2] == 4);
    CHECK(fm.preimage(2) == PointSet::of(8, {4, 5}));
    CHECK(fm.image(PointSet::of(8, {1, 6})) == PointSet::of(4, {0, 3}));
    CHECK_THROWS_AS(product_projection(base, 0.3, {{true}, {false}}), ConfigError);
}

TEST_CASE("non-intertwining maps are rejected")
{
    auto base = doubling_system(4);
    auto src = product_projection(base, 0.3).source();
    MapTable pi{0, 0, 1, 1, 2, 2, 3, 3};
    CHECK_NOTHROW(FactorMap(src, base, pi));
    pi[0] = 1;
    CHECK_THROWS_AS(FactorMap(src, base, pi), NotSemiconjugate);
    CHECK_THROWS_AS(FactorMap(src, base, MapTable(8, 0)), NotSemiconjugate);
    CHECK_THROWS_AS(FactorMap(src, base, MapTable(3, 0)), NotSemiconjugate);
}

TEST_CASE("factor systems share a common time structure")
{
    NdsSystem target(circle_metric(4), std::vector<MapTable>{}, std::vector<MapTable>{rotation_map(4, 1), identity_map(4)},
                     std::vector<double>{0.1, 0.2, 0.3, 0.4});
    auto fm = product_projection(target, 0.25, {{false, false, false, false}, {true, true, true, true}});
    auto src = fm.lifted_source();
    auto tgt = fm.aligned_target();
    CHECK(src.period() == tgt.period());
    CHECK(src.prefix_length() == tgt.prefix_length());
    for (std::size_t x = 0; x < src.size(); ++x) {
        CHECK(src.potential_at(2)[x] == tgt.potential_at(2)[fm.pi()[x]]);
    }
}

TEST_CASE("collapsing to a point")
{
    auto fm = collapse_all(random_system(1), 0.5);
    CHECK(fm.target().size() == 1);
    CHECK(fm.preimage(0) == PointSet::full(fm.source().size()));
    auto lifted = fm.lifted_source();
    CHECK(lifted.potential_norm() == 0.5);
}
