#include <vector>

#include "doctest.h"
#include "kss/cosimplicial.hpp"

using namespace kss;

namespace {
Term x(int i, int j) { return Term(Gen::config(i, j)); }
Term y(int k) { return Term(Gen::tangent(k)); }
Term br(const Term& a, const Term& b) { return Term(a, b); }

std::vector<Gen> level_gens(int n) {
    std::vector<Gen> out;
    for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i) out.push_back(Gen::config(i, j));
    for (int k = 1; k <= n; ++k) out.push_back(Gen::tangent(k));
    return out;
}

LinearCombo apply_seq(const std::vector<SimplicialDirection>& dirs, const Gen& g) {
    LinearCombo c{Term(g)};
    for (const auto& d : dirs) c = push_through_bracket(d, c);
    return c;
}

SimplicialDirection coface(int l, int n) { return {MapKind::Coface, l, n}; }
SimplicialDirection codegen(int l, int n) { return {MapKind::Codegeneracy, l, n}; }
}  // namespace

TEST_CASE("codegeneracy pushforwards of fixed generators") {
    CHECK(codegeneracy_push(0, Gen::config(1, 2), 2).is_zero());
    CHECK(codegeneracy_push(0, Gen::config(2, 3), 3) == LinearCombo(x(1, 2)));
    CHECK(codegeneracy_push(1, Gen::config(1, 3), 3) == LinearCombo(x(1, 2)));
    CHECK(codegeneracy_push(2, Gen::config(1, 3), 3).is_zero());
    CHECK(codegeneracy_push(2, Gen::config(1, 2), 3) == LinearCombo(x(1, 2)));
    CHECK(codegeneracy_push(0, Gen::config(3, 4), 4) == LinearCombo(x(2, 3)));

    CHECK(codegeneracy_push(0, Gen::tangent(1), 2).is_zero());
    CHECK(codegeneracy_push(0, Gen::tangent(2), 2) == LinearCombo(y(1)));
    CHECK(codegeneracy_push(2, Gen::tangent(1), 3) == LinearCombo(y(1)));

    CHECK_THROWS_AS(codegeneracy_push(2, Gen::config(1, 2), 2), Error);
    CHECK_THROWS_AS(codegeneracy_push(-1, Gen::config(1, 2), 2), Error);
    CHECK_THROWS_AS(codegeneracy_push(0, Gen::config(1, 3), 2), Error);
}

TEST_CASE("coface pushforwards of fixed generators") {
    LinearCombo d0 = coface_push(0, Gen::config(1, 2), 2);
    CHECK(d0 == LinearCombo(x(2, 3)));
    LinearCombo d1 = coface_push(1, Gen::config(1, 2), 2);
    LinearCombo e1(x(1, 3));
    e1.add(x(2, 3), 1);
    CHECK(d1 == e1);
    LinearCombo d2 = coface_push(2, Gen::config(1, 2), 2);
    LinearCombo e2(x(1, 2));
    e2.add(x(1, 3), 1);
    CHECK(d2 == e2);
    CHECK(coface_push(3, Gen::config(1, 2), 2) == LinearCombo(x(1, 2)));

    LinearCombo t1 = coface_push(1, Gen::tangent(1), 1);
    LinearCombo et(x(1, 2));
    et.add(y(1), 1);
    et.add(y(2), 1);
    CHECK(t1 == et);
    CHECK(coface_push(0, Gen::tangent(1), 1) == LinearCombo(y(2)));
    CHECK(coface_push(2, Gen::tangent(1), 1) == LinearCombo(y(1)));

    CHECK_THROWS_AS(coface_push(4, Gen::config(1, 2), 2), Error);
}

TEST_CASE("alternating coface sums on low levels") {
    // level 1 -> 2: the tangent generator maps to -x(1,2)
    LinearCombo d_y1;
    for (int l = 0; l <= 2; ++l) {
        LinearCombo c = coface_push(l, Gen::tangent(1), 1);
        d_y1 += c * Int(l % 2 == 0 ? 1 : -1);
    }
    CHECK(d_y1 == LinearCombo(x(1, 2), -1));

    // level 2 -> 3: x(1,2) maps to zero on the nose
    LinearCombo d_x12;
    for (int l = 0; l <= 3; ++l) {
        LinearCombo c = coface_push(l, Gen::config(1, 2), 2);
        d_x12 += c * Int(l % 2 == 0 ? 1 : -1);
    }
    CHECK(d_x12.is_zero());
}

TEST_CASE("pushforward through brackets") {
    // every codegeneracy kills [x(1,3),x(2,3)]
    Term w = br(x(1, 3), x(2, 3));
    for (int l = 0; l <= 2; ++l) CHECK(push_through_bracket(codegen(l, 3), w).is_zero());

    // first coface relabels both strands upward
    CHECK(push_through_bracket(coface(0, 3), w) == LinearCombo(br(x(2, 4), x(3, 4))));

    // doubling strand 3 expands bilinearly; the two cross terms have disjoint
    // supports and vanish
    LinearCombo c3 = push_through_bracket(coface(3, 3), w);
    LinearCombo expect;
    expect.add(br(x(1, 3), x(2, 3)), 1);
    expect.add(br(x(1, 4), x(2, 4)), 1);
    CHECK(c3 == expect);

    // a lone tangent leaf pushes directly; tangent inside a bracket is an error
    CHECK(push_through_bracket(coface(0, 2), y(2)) == LinearCombo(y(3)));
    CHECK_THROWS_AS(push_through_bracket(coface(0, 2), br(x(1, 2), y(1))), Error);
}

TEST_CASE("cosimplicial identities on generators through level 5") {
    for (int n = 1; n <= 5; ++n) {
        for (const Gen& g : level_gens(n)) {
            // codegeneracy-coface composites
            for (int i = 0; i <= n + 1; ++i) {
                for (int j = 0; j <= n; ++j) {
                    LinearCombo lhs = apply_seq({coface(i, n), codegen(j, n + 1)}, g);
                    if (i == j || i == j + 1) {
                        CHECK(lhs == LinearCombo(Term(g)));
                    } else if (i < j) {
                        CHECK(lhs == apply_seq({codegen(j - 1, n), coface(i, n - 1)}, g));
                    } else {
                        CHECK(lhs == apply_seq({codegen(j, n), coface(i - 1, n - 1)}, g));
                    }
                }
            }
            // coface-coface composites
            for (int i = 0; i <= n + 1; ++i)
                for (int j = i + 1; j <= n + 2; ++j)
                    CHECK(apply_seq({coface(i, n), coface(j, n + 1)}, g) ==
                          apply_seq({coface(j - 1, n), coface(i, n + 1)}, g));
            // codegeneracy-codegeneracy composites
            for (int i = 0; i <= n - 1; ++i)
                for (int j = i; j <= n - 2; ++j)
                    CHECK(apply_seq({codegen(i, n), codegen(j, n - 1)}, g) ==
                          apply_seq({codegen(j + 1, n), codegen(i, n - 1)}, g));
        }
    }
}
