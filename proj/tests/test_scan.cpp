#include "catch_amalgamated.hpp"

#include "compvar/errors.hpp"
#include "compvar/scan.hpp"
#include "fixtures.hpp"

using namespace compvar;
using namespace fixtures;

TEST_CASE("enumeration of small slices", "[scan]") {
    Field f2 = Field::prime(2);
    ScanBudget budget;

    ScanSpec line{ground_field_algebra(f2), {1, 1}, std::nullopt};
    CHECK(free_coordinate_count(line) == 1);
    auto pts = enumerate_points(line, budget);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].diff(1).is_zero());
    CHECK(pts[1].diff(1) == Matrix::from_ints(f2, {{1}}));

    auto d = dual_numbers(f2);
    CHECK(enumerate_points(ScanSpec{d, {1}, std::nullopt}, budget).size() == 1);
    auto zero = enumerate_points(ScanSpec{d, {0, 0}, std::nullopt}, budget);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].is_zero());

    for (const auto& x : enumerate_points(ScanSpec{d, {1, 2}, std::nullopt}, budget)) CHECK(!validate_point(x));
}

TEST_CASE("module slices count nilpotent matrices", "[scan][oracle]") {
    // n×n nilpotent matrices over F_q number q^(n²−n)
    for (std::uint32_t p : {2u, 3u}) {
        Field f = Field::prime(p);
        auto d = dual_numbers(f);
        CHECK(enumerate_points(ScanSpec{d, {1}, std::nullopt}, ScanBudget{}).size() == 1);
        CHECK(enumerate_points(ScanSpec{d, {2}, std::nullopt}, ScanBudget{}).size() == p * p);
    }
    Field f2 = Field::prime(2);
    CHECK(enumerate_points(ScanSpec{truncated_polynomial_algebra(f2, 3), {3}, std::nullopt}, ScanBudget{1u << 18, 10000, 0})
              .size() == 64);
}

TEST_CASE("budget is enforced before enumeration", "[scan]") {
    Field f2 = Field::prime(2);
    ScanSpec big{dual_numbers(f2), {3, 3}, std::nullopt};
    CHECK(free_coordinate_count(big) == 27);
    try {
        enumerate_points(big, ScanBudget{});
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == (std::uint64_t(1) << 27));
    }
    CHECK_THROWS_AS(enumerate_points(ScanSpec{dual_numbers(Field::rationals()), {1}, std::nullopt}, ScanBudget{}),
                    UnsupportedCharacteristic);
}

TEST_CASE("orbit census of the line and of two-dimensional modules", "[scan][census]") {
    Field f2 = Field::prime(2);
    ScanBudget budget;
    ScanSpec line{ground_field_algebra(f2), {1, 1}, std::nullopt};
    auto pts = enumerate_points(line, budget);
    OrbitCensus oc = orbit_census(pts, line, budget);
    CHECK(oc.representatives.size() == 2);
    CHECK(oc.group_checked);
    CHECK(oc.group_size == 1);
    CHECK(oc.partitions_agree);

    for (std::uint32_t p : {2u, 3u}) {
        Field f = Field::prime(p);
        ScanSpec mods{dual_numbers(f), {2}, std::nullopt};
        auto mp = enumerate_points(mods, budget);
        OrbitCensus mc = orbit_census(mp, mods, budget);
        CHECK(mc.representatives.size() == 2);
        CHECK(mc.group_checked);
        CHECK(mc.partitions_agree);
    }

    ScanSpec zero{dual_numbers(f2), {0}, std::nullopt};
    OrbitCensus zc = orbit_census(enumerate_points(zero, budget), zero, budget);
    CHECK(zc.representatives.size() == 1);
}

TEST_CASE("isomorphism and group orbits agree on complex slices", "[scan][census]") {
    Field f2 = Field::prime(2);
    ScanBudget budget;
    auto d = dual_numbers(f2);
    for (auto dims : {std::vector<std::size_t>{1, 1}, std::vector<std::size_t>{2, 1}, std::vector<std::size_t>{1, 1, 1}}) {
        ScanSpec spec{d, dims, std::nullopt};
        auto pts = enumerate_points(spec, budget);
        OrbitCensus oc = orbit_census(pts, spec, budget);
        CHECK(oc.group_checked);
        CHECK(oc.partitions_agree);
        // orbits are closed under the group action
        std::mt19937_64 rng(3);
        for (std::size_t k = 0; k < pts.size(); k += 3) {
            ChainComplex y = act(random_group_element(pts[k], rng), pts[k]);
            CHECK(complexes_isomorphic(y, pts[k]).isomorphic());
        }
    }
    auto a = a2(f2);
    ScanSpec quiver{a, {1, 1}, std::nullopt};
    OrbitCensus qc = orbit_census(enumerate_points(quiver, budget), quiver, budget);
    CHECK(qc.partitions_agree);
    // modules of dimension one: S1, S2; the complexes are pairs with ∂ = 0 or the identity on equal simples
    CHECK(qc.representatives.size() == 6);
}

TEST_CASE("rigid census", "[scan][rigid]") {
    Field f2 = Field::prime(2);
    ScanBudget budget;
    RigidCensus line = rigid_census(ScanSpec{ground_field_algebra(f2), {1, 1}, std::nullopt}, budget);
    CHECK(line.point_count == 2);
    CHECK(line.orbit_count == 2);
    REQUIRE(line.rigid.size() == 1);
    CHECK(line.rigid[0].representative.diff(1) == Matrix::from_ints(f2, {{1}}));
    CHECK(line.rigid[0].check_ok);

    RigidCensus point = rigid_census(ScanSpec{ground_field_algebra(f2), {1}, std::nullopt}, budget);
    CHECK(point.rigid.size() == 1);

    auto d = dual_numbers(f2);
    ModuleRep reg = regular_module(d);
    RigidCensus pinned = rigid_census(ScanSpec{d, {2, 2}, std::vector<ModuleRep>{reg, reg}}, budget);
    CHECK(pinned.point_count == 4);
    CHECK(pinned.orbit_count == 3);
    CHECK(pinned.orbits.partitions_agree);
    REQUIRE(pinned.rigid.size() == 1);
    CHECK(is_invertible(pinned.rigid[0].representative.diff(1)));
    CHECK(pinned.rigid[0].points == 2);
    CHECK(pinned.rigid[0].quotient == 0);

    // the multiplication-by-x class is not rigid
    ChainComplex mx = mult_x_complex(f2);
    CHECK_FALSE(is_rigid(mx));

    RigidCensus full = rigid_census(ScanSpec{d, {2, 2}, std::nullopt}, budget);
    CHECK(full.orbits.group_checked);
    CHECK(full.orbits.partitions_agree);
    for (const auto& r : full.rigid) {
        CHECK(r.check_ok);
        CHECK(r.quotient == 0);
    }
    for (std::size_t i = 0; i < full.rigid.size(); ++i)
        for (std::size_t j = i + 1; j < full.rigid.size(); ++j)
            CHECK_FALSE(complexes_isomorphic(full.rigid[i].representative, full.rigid[j].representative).isomorphic());

    RigidCensus again = rigid_census(ScanSpec{d, {2, 2}, std::nullopt}, budget);
    CHECK(again.orbits.class_of == full.orbits.class_of);
}
