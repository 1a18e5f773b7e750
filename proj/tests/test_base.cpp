#include <doctest.h>

#include "pepos/base.hpp"
#include "pepos/bundle.hpp"

using namespace pepos;

TEST_CASE("base construction") {
    BaseVariety p2 = make_projective_space(2);
    CHECK(p2.dim == 2);
    CHECK(p2.picard_rank == 1);
    CHECK(canonical_coefficients(p2)[0] == -3);

    BaseVariety genus2 = make_curve(2);
    CHECK(genus2.dim == 1);
    CHECK(genus2.serrano_known);
    CHECK(canonical_coefficients(genus2)[0] == 2);

    CHECK_THROWS_AS(make_projective_space(0), error);
    CHECK_THROWS_AS(make_curve(-1), error);
    CHECK_THROWS_AS(make_abstract(0, 1, false, {}, std::nullopt), error);

    toric::Fan broken = toric::product_p1_p1_fan();
    broken.max_cones.pop_back();
    CHECK_THROWS_WITH_AS(make_toric(broken), doctest::Contains("not complete"), error);

    CurveFamily bad;
    bad.label = "C";
    bad.degree_data = {Rational(1), Rational(0)}; // wrong length for rho = 1
    CHECK_THROWS_AS(make_abstract(2, 1, false, {bad}, std::nullopt), error);
}

TEST_CASE("toric bases pull canonical data from the fan") {
    BaseVariety f1 = make_toric(toric::hirzebruch_fan(1));
    CHECK(f1.dim == 2);
    CHECK(f1.picard_rank == 2);
    CHECK(f1.fan_walls.size() == 4);
    // K_X . C = -(2 + sum of relation coefficients) on each wall.
    for (const auto& family : test_curve_families(f1, make_equivariant(2, {
                                                          {"w0", {Int(0), Int(0)}},
                                                          {"w1", {Int(0), Int(0)}},
                                                          {"w2", {Int(0), Int(0)}},
                                                          {"w3", {Int(0), Int(0)}},
                                                      }))) {
        Rational minus_k = -family.canonical_degree;
        CHECK(minus_k >= 1); // -K of F_1 is ample
    }
}

TEST_CASE("test curve families") {
    SUBCASE("P^2 with a split bundle: one line family, C(3,2) members") {
        auto families = test_curve_families(make_projective_space(2), make_split({Int(1), Int(1)}));
        REQUIRE(families.size() == 1);
        CHECK(families[0].label == "lines");
        CHECK(families[0].exactness == Exactness::cone_generating);
        CHECK(families[0].member_count == 3);
        CHECK(families[0].canonical_degree == -3);
    }
    SUBCASE("curve base: the base curve itself") {
        auto families = test_curve_families(make_curve(1), make_hn_curve(hn_of_split({Int(1), Int(0)})));
        REQUIRE(families.size() == 1);
        CHECK(families[0].exactness == Exactness::cone_generating);
        CHECK(families[0].canonical_degree == 0);
    }
    SUBCASE("Hirzebruch base: one family per wall") {
        BaseVariety f1 = make_toric(toric::hirzebruch_fan(1));
        std::map<std::string, std::vector<Int>> table;
        for (const auto& wall : f1.fan_walls)
            table[wall.label] = {Int(1), Int(1)};
        auto families = test_curve_families(f1, make_equivariant(2, table));
        CHECK(families.size() == 4);
    }
    SUBCASE("incompatible pairs are rejected") {
        CHECK_THROWS_AS(test_curve_families(make_toric(toric::hirzebruch_fan(0)),
                                            make_hn_curve(hn_of_split({Int(1), Int(0)}))),
                        error);
        CHECK_THROWS_AS(test_curve_families(make_curve(0), make_split({Int(1), Int(1)})), error);
        BaseVariety f1 = make_toric(toric::hirzebruch_fan(1));
        CHECK_THROWS_WITH_AS(
            test_curve_families(f1, make_equivariant(2, {{"w0", {Int(1), Int(1)}}})),
            doctest::Contains("missing wall"), error);
    }
}

TEST_CASE("every test family meets some basis divisor positively") {
    std::vector<BaseVariety> bases;
    bases.push_back(make_projective_space(2));
    bases.push_back(make_projective_space(3));
    bases.push_back(make_curve(2));
    bases.push_back(make_toric(toric::hirzebruch_fan(2)));
    bases.push_back(make_toric(toric::product_p1_p1_fan()));
    for (const auto& base : bases) {
        BundleDescriptor bundle;
        if (base.kind == BaseKind::curve)
            bundle = make_hn_curve(hn_of_split({Int(1), Int(0)}));
        else if (base.kind == BaseKind::projective_space)
            bundle = make_split({Int(1), Int(1)});
        else {
            std::map<std::string, std::vector<Int>> table;
            for (const auto& wall : base.fan_walls)
                table[wall.label] = {Int(1), Int(1)};
            bundle = make_equivariant(2, table);
        }
        for (const auto& family : test_curve_families(base, bundle)) {
            bool positive = false;
            for (const auto& degree : family.degree_data)
                if (degree > 0)
                    positive = true;
            CHECK(positive);
        }
    }
}

TEST_CASE("canonical pairing of curve(g) is 2g-2 for g in 0..20") {
    for (int g = 0; g <= 20; ++g)
        CHECK(canonical_coefficients(make_curve(g))[0] == 2 * g - 2);
}

TEST_CASE("invariant curve count matches the fan wall count") {
    for (int n = 1; n <= 4; ++n)
        CHECK(invariant_curve_count_pn(n) ==
              static_cast<long>(toric::walls(toric::projective_space_fan(n)).size()));
}
