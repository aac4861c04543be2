#include "doctest.h"
#include "kss/config_space.hpp"

using namespace kss;

namespace {
Term x(int i, int j) { return Term(Gen::config(i, j)); }
Term br(const Term& a, const Term& b) { return Term(a, b); }
}  // namespace

TEST_CASE("orientation normalization") {
    auto [g1, s1] = orient_normalize(1, 2, 3);
    CHECK(g1 == Gen::config(1, 2));
    CHECK(s1 == 1);
    auto [g2, s2] = orient_normalize(2, 1, 3);
    CHECK(g2 == Gen::config(1, 2));
    CHECK(s2 == -1);
    CHECK_THROWS_AS(orient_normalize(1, 1, 3), Error);
    CHECK_THROWS_AS(orient_normalize(0, 2, 3), Error);
    CHECK_THROWS_AS(orient_normalize(1, 4, 3), Error);
}

TEST_CASE("disjoint support vanishing") {
    CHECK(disjoint_support_vanishes(br(x(1, 2), x(3, 4))));
    CHECK_FALSE(disjoint_support_vanishes(br(x(1, 2), x(2, 3))));
    CHECK(disjoint_support_vanishes(br(br(x(1, 2), x(2, 3)), x(4, 5))));
    // an inner disjoint node kills the class even when the top overlaps
    CHECK(disjoint_support_vanishes(br(br(x(1, 2), x(3, 4)), x(2, 3))));
    CHECK_FALSE(disjoint_support_vanishes(br(br(x(1, 2), x(2, 3)), x(3, 4))));
    CHECK_FALSE(disjoint_support_vanishes(x(1, 2)));
    CHECK_THROWS_AS(disjoint_support_vanishes(br(Term(Gen::tangent(1)), x(1, 2))), Error);
}

TEST_CASE("one-common-strand triple rewrite") {
    // shared strand in adjacent position: forms match the relation directly
    auto f = triple_rewrite(br(x(1, 2), x(2, 3)));
    CHECK(f[0].term == br(x(1, 2), x(2, 3)));
    CHECK(f[0].sign == 1);
    CHECK(f[1].term == br(x(1, 2), x(1, 3)));
    CHECK(f[1].sign == -1);
    CHECK(f[2].term == br(x(1, 3), x(2, 3)));
    CHECK(f[2].sign == -1);

    // shared strand sits first in the second generator: orientation signs flip
    auto g = triple_rewrite(br(x(1, 3), x(2, 3)));
    CHECK(g[0].term == br(x(1, 3), x(2, 3)));
    CHECK(g[0].sign == 1);
    CHECK(g[1].term == br(x(1, 3), x(1, 2)));
    CHECK(g[1].sign == 1);
    CHECK(g[2].term == br(x(1, 2), x(2, 3)));
    CHECK(g[2].sign == -1);

    CHECK_THROWS_AS(triple_rewrite(br(x(1, 2), x(3, 4))), Error);   // no common strand
    CHECK_THROWS_AS(triple_rewrite(br(x(1, 2), x(1, 2))), Error);   // two common strands
    CHECK_THROWS_AS(triple_rewrite(br(br(x(1, 2), x(2, 3)), x(1, 2))), Error);
}

TEST_CASE("sphere symbol table") {
    CHECK(SphereSym{3, 2}.str() == "pi_3(S^2)");
    REQUIRE(SphereSym{3, 2}.known().has_value());
    CHECK(SphereSym{3, 2}.known()->describe() == "Z");
    CHECK(SphereSym{4, 4}.known()->describe() == "Z");
    CHECK(SphereSym{4, 3}.known()->describe() == "Z/2");
    CHECK(SphereSym{5, 4}.known()->describe() == "Z/2");
    CHECK(SphereSym{2, 3}.known()->describe() == "0");
    CHECK_FALSE(SphereSym{4, 2}.known().has_value());  // stays formal
    CHECK_FALSE(SphereSym{6, 3}.known().has_value());
}

TEST_CASE("configuration space homotopy decomposition") {
    // three points, third homotopy: three 2-sphere classes and one 3-sphere class
    auto dec = pi_decomposition(3, 3);
    REQUIRE(dec.size() == 4);
    CHECK(dec[0].first == x(1, 2));
    CHECK(dec[0].second.str() == "pi_3(S^2)");
    CHECK(dec[1].first == x(1, 3));
    CHECK(dec[2].first == x(2, 3));
    CHECK(dec[3].first == br(x(1, 3), x(2, 3)));
    CHECK(dec[3].second.str() == "pi_3(S^3)");

    // two points: a single 2-sphere
    auto dec2 = pi_decomposition(2, 2);
    REQUIRE(dec2.size() == 1);
    CHECK(dec2[0].first == x(1, 2));
    CHECK(dec2[0].second.known()->describe() == "Z");

    // one point: contractible
    CHECK(pi_decomposition(1, 2).empty());
    CHECK_THROWS_AS(pi_decomposition(0, 2), Error);
    CHECK_THROWS_AS(pi_decomposition(2, 1), Error);
}
