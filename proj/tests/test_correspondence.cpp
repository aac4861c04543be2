#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "kss/correspondence.hpp"
#include "kss/hall.hpp"

using namespace kss;

namespace {
Term x(int i, int j) { return Term(Gen::config(i, j)); }

// all order-preserving bracketings of a leaf sequence (Catalan many)
std::vector<Term> all_bracketings(const std::vector<Term>& leaves, std::size_t lo,
                                  std::size_t hi) {
    if (hi - lo == 1) return {leaves[lo]};
    std::vector<Term> out;
    for (std::size_t m = lo + 1; m < hi; ++m)
        for (const Term& a : all_bracketings(leaves, lo, m))
            for (const Term& b : all_bracketings(leaves, m, hi))
                out.push_back(Term(a, b));
    return out;
}

Term random_bracketing(std::vector<Term> pool, std::mt19937& rng) {
    while (pool.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        if (a > b) std::swap(a, b);
        Term joined(pool[a], pool[b]);
        pool.erase(pool.begin() + b);
        pool[a] = joined;
    }
    return pool[0];
}

// a random multilinear bracketing over x(perm(1), m+1) .. x(perm(m), m+1)
Term random_multilinear(int m, std::mt19937& rng) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Term> leaves;
    for (int i : perm) leaves.emplace_back(x(i, m + 1));
    return random_bracketing(std::move(leaves), rng);
}

// internal (node-to-node) half-edges of a tree, each edge counted once
std::vector<int> internal_ends(const Utg& g) {
    std::vector<int> out;
    for (int node = 0; node < g.node_count(); ++node)
        for (int slot = 0; slot < 3; ++slot) {
            const int e = slot_end(node, slot);
            const int o = g.opposite(e);
            if (!is_leaf_end(o) && end_node(o) > node) out.push_back(e);
        }
    return out;
}

// the transported differential: push the separated class down through the
// bracket-side differential and read the result back as trees
GraphCombo transported_d1(const MarkedUtg& m) {
    const auto sd = dsep_of_marked(m);
    const LinearCombo alg = d1_simplified(sd.element) * Int(sd.sign);
    GraphCombo out;
    for (const auto& [t, c] : alg.terms()) {
        const auto sg = tree_of_bracket(t);
        out.add(sg.graph, c * sg.sign);
    }
    return out;
}

SparseVec marked_coords(const std::map<int, Int>& acc) {
    SparseVec v;
    for (const auto& [i, c] : acc)
        if (c != 0) v.emplace_back(i, c);
    return v;
}
}  // namespace

TEST_CASE("brackets map to labelled trees with tracked signs") {
    const auto s0 = tree_of_bracket(x(1, 2));
    CHECK(s0.graph.key() == "t:1");
    CHECK(s0.sign == 1);

    const auto sa = tree_of_bracket(Term(x(1, 3), x(2, 3)));
    CHECK(sa.graph.key() == "t:(1,2)");
    CHECK(sa.sign == 1);

    const auto sb = tree_of_bracket(Term(x(2, 3), x(1, 3)));
    CHECK(sb.graph.key() == "t:(2,1)");
    CHECK(sb.sign == -1);

    // joining at a lower strand lands on the same tree
    const auto sc = tree_of_bracket(Term(x(1, 2), x(1, 3)));
    CHECK(sc.graph.key() == "t:(1,2)");
    CHECK(sc.sign == 1);

    const auto sd = tree_of_bracket(Term(Term(x(1, 4), x(2, 4)), x(3, 4)));
    CHECK(sd.graph.key() == "t:((1,2),3)");
    CHECK(sd.sign == -1);

    // sides must share exactly one strand, labels must be contiguous from 1,
    // and tangent generators have no tree image
    CHECK_THROWS_AS(tree_of_bracket(Term(x(1, 3), Term(x(1, 3), x(2, 3)))), Error);
    CHECK_THROWS_AS(tree_of_bracket(Term(x(1, 2), x(3, 4))), Error);
    CHECK_THROWS_AS(tree_of_bracket(x(2, 3)), Error);
    CHECK_THROWS_AS(tree_of_bracket(Term(Gen::tangent(1))), Error);
}

TEST_CASE("bracket and tree translations invert each other") {
    // bracket -> tree -> bracket on every multilinear bracketing
    for (int m = 2; m <= 5; ++m) {
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i + 1;
        long checked = 0;
        do {
            std::vector<Term> leaves;
            for (int i : perm) leaves.emplace_back(x(i, m + 1));
            for (const Term& t : all_bracketings(leaves, 0, leaves.size())) {
                const auto sg = tree_of_bracket(t);
                const auto back = bracket_of_tree(sg.graph);
                REQUIRE(back.term == t);
                REQUIRE(back.sign * sg.sign == 1);
                ++checked;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        // (m-1)! * Catalan(m-1) bracketings
        const long expected[] = {0, 0, 2, 12, 120, 1680};
        CHECK(checked == expected[m]);
    }

    // tree -> bracket -> tree on every tree
    for (int d = 1; d <= 5; ++d) {
        for (const Utg& g : enumerate_trees(d)) {
            const auto st = bracket_of_tree(g);
            const auto back = tree_of_bracket(st.term);
            REQUIRE(back.graph == g);
            REQUIRE(back.sign * st.sign == 1);
        }
    }
}

TEST_CASE("separated generators and marked graphs invert each other") {
    const auto ds4 = dsep_generators(4);
    REQUIRE(ds4.size() == 2);
    const auto m0 = marked_of_dsep(ds4[0]);
    CHECK(ds4[0].term.key() == "[[x(1,3),x(2,3)],x(1,3)]");
    CHECK(m0.graph.key() == "l:(((3,@),1),2)|m1,3");
    CHECK(m0.sign == 1);
    const auto m1 = marked_of_dsep(ds4[1]);
    CHECK(ds4[1].term.key() == "[[x(1,3),x(2,3)],x(2,3)]");
    CHECK(m1.graph.key() == "l:(((2,@),3),1)|m2,3");
    CHECK(m1.sign == 1);

    for (int p = 4; p <= 5; ++p) {
        const auto ds = dsep_generators(p);
        const auto marked = enumerate_marked(p - 1);

        // forward-backward is the identity on separated generators, and the
        // images are pairwise distinct
        std::set<std::string> image;
        for (const auto& w : ds) {
            const auto sm = marked_of_dsep(w);
            image.insert(sm.graph.key());
            const auto back = dsep_of_marked(sm.graph);
            REQUIRE(back.element.term == w.term);
            REQUIRE(back.sign * sm.sign == 1);
        }
        CHECK(image.size() == ds.size());

        // backward-forward returns every marked graph, directly or through
        // the tracked orientation flip at the top mark
        for (const auto& m : marked) {
            const auto sd = dsep_of_marked(m);
            const auto fwd = marked_of_dsep(sd.element);
            const bool direct = fwd.graph.key() == m.key() && fwd.sign * sd.sign == 1;
            const auto flipped = as_marked(m.graph.flipped(m.mark_j_node()), m.i, m.j);
            const bool via_flip =
                flipped && fwd.graph.key() == flipped->key() && fwd.sign * sd.sign == -1;
            REQUIRE((direct || via_flip));
        }
    }
}

TEST_CASE("bracket relations match graph relations") {
    std::mt19937 rng(20260825);

    SUBCASE("antisymmetry lands in the AS span") {
        for (int d = 2; d <= 5; ++d) {
            const auto trees = enumerate_trees(d);
            const Subgroup as_span(trees.size(), tree_relation_rows(trees, RelKind::AS));
            int nontrivial = 0;
            for (int trial = 0; trial < 100; ++trial) {
                const Term t = random_multilinear(d, rng);
                const auto [canon, s] = antisym_canonical(t);
                if (t == canon) continue;
                ++nontrivial;
                const auto a = tree_of_bracket(t);
                const auto b = tree_of_bracket(canon);
                GraphCombo combo;
                combo.add(a.graph, a.sign);
                combo.add(b.graph, -s * b.sign);
                if (combo.is_zero()) continue;
                REQUIRE(as_span.contains(combo.coords(trees)));
            }
            CHECK(nontrivial > 20);
        }
    }

    SUBCASE("IHX triples map to Jacobi relations") {
        // exhaustive through degree 4, sampled at degree 5
        for (int d = 3; d <= 4; ++d) {
            std::vector<Gen> gens;
            for (int i = 1; i <= d; ++i) gens.push_back(Gen::config(i, d + 1));
            HallRewriter rw(gens);
            long checked = 0;
            for (const Utg& g : enumerate_trees(d))
                for (int e : internal_ends(g)) {
                    const auto [g1, g2] = g.ihx_at(e);
                    const auto sa = bracket_of_tree(g);
                    const auto sb = bracket_of_tree(g1);
                    const auto sc = bracket_of_tree(g2);
                    LinearCombo l(sa.term, sa.sign);
                    l.add(sb.term, -sb.sign);
                    l.add(sc.term, sc.sign);
                    REQUIRE(rw.normalize(l).is_zero());
                    ++checked;
                }
            CHECK(checked == (d == 3 ? 12 : 240));
        }
        const auto trees = enumerate_trees(5);
        std::vector<Gen> gens;
        for (int i = 1; i <= 5; ++i) gens.push_back(Gen::config(i, 6));
        HallRewriter rw(gens);
        std::uniform_int_distribution<std::size_t> pick(0, trees.size() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            const Utg& g = trees[pick(rng)];
            const auto ends = internal_ends(g);
            std::uniform_int_distribution<std::size_t> pe(0, ends.size() - 1);
            const auto [g1, g2] = g.ihx_at(ends[pe(rng)]);
            const auto sa = bracket_of_tree(g);
            const auto sb = bracket_of_tree(g1);
            const auto sc = bracket_of_tree(g2);
            LinearCombo l(sa.term, sa.sign);
            l.add(sb.term, -sb.sign);
            l.add(sc.term, sc.sign);
            REQUIRE(rw.normalize(l).is_zero());
        }
    }

    SUBCASE("Jacobi instances land in the AS and IHX span") {
        for (int d = 3; d <= 5; ++d) {
            const auto trees = enumerate_trees(d);
            auto rows = tree_relation_rows(trees, RelKind::AS);
            const auto ihx = tree_relation_rows(trees, RelKind::IHX);
            rows.insert(rows.end(), ihx.begin(), ihx.end());
            const Subgroup span(trees.size(), rows);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<int> perm(d);
                for (int i = 0; i < d; ++i) perm[i] = i + 1;
                std::shuffle(perm.begin(), perm.end(), rng);
                std::uniform_int_distribution<int> cut1(1, d - 2);
                const int c1 = cut1(rng);
                std::uniform_int_distribution<int> cut2(c1 + 1, d - 1);
                const int c2 = cut2(rng);
                auto build = [&](int lo, int hi) {
                    std::vector<Term> leaves;
                    for (int i = lo; i < hi; ++i) leaves.emplace_back(x(perm[i], d + 1));
                    return random_bracketing(std::move(leaves), rng);
                };
                const Term u = build(0, c1), c = build(c1, c2), w = build(c2, d);
                const int e1 = u.weight() * (c.weight() + 1) + w.weight() * (u.weight() + 1);
                const int e2 = c.weight() * (w.weight() + 1) + w.weight() * (u.weight() + 1);
                const auto s0 = tree_of_bracket(Term(u, Term(c, w)));
                const auto s1 = tree_of_bracket(Term(c, Term(w, u)));
                const auto s2 = tree_of_bracket(Term(w, Term(u, c)));
                GraphCombo combo;
                combo.add(s0.graph, s0.sign);
                combo.add(s1.graph, (e1 % 2 ? -1 : 1) * s1.sign);
                combo.add(s2.graph, (e2 % 2 ? -1 : 1) * s2.sign);
                if (combo.is_zero()) continue;
                REQUIRE(span.contains(combo.coords(trees)));
            }
        }
    }

    SUBCASE("separated Jacobi instances match the marked IHX span") {
        CHECK(separated_jacobi_instances(4).empty());
        CHECK(marked_relation_rows(enumerate_marked(3), RelKind::IHXsep).empty());

        const int p = 5;
        const auto marked = enumerate_marked(p - 1);
        const auto ds = dsep_generators(p);
        std::map<std::string, int> midx;
        for (std::size_t i = 0; i < marked.size(); ++i) midx[marked[i].key()] = (int)i;

        auto mrows = marked_relation_rows(marked, RelKind::AS);
        const auto sep = marked_relation_rows(marked, RelKind::IHXsep);
        CHECK(sep.size() == 144);
        mrows.insert(mrows.end(), sep.begin(), sep.end());
        const Subgroup marked_span(marked.size(), mrows);

        const auto instances = separated_jacobi_instances(p);
        REQUIRE(instances.size() == 3);
        for (const auto& inst : instances) {
            std::map<int, Int> acc;
            for (const auto& [t, c] : inst.terms()) {
                const auto el = as_dsep(t, p);
                REQUIRE(el.has_value());
                const auto sm = marked_of_dsep(*el);
                acc[midx.at(sm.graph.key())] += c * sm.sign;
            }
            const SparseVec v = marked_coords(acc);
            if (v.empty()) continue;
            CHECK(marked_span.contains(v));
        }

        // and back: every marked IHX row maps into the Jacobi span
        std::map<std::string, int> didx;
        for (std::size_t i = 0; i < ds.size(); ++i) didx[ds[i].term.key()] = (int)i;
        auto dsep_coords = [&](const LinearCombo& l) {
            SparseVec v;
            for (const auto& [t, c] : l.terms()) v.emplace_back(didx.at(t.key()), c);
            std::sort(v.begin(), v.end());
            return v;
        };
        std::vector<SparseVec> jac;
        for (const auto& inst : instances) jac.push_back(dsep_coords(inst));
        const Subgroup jac_span(ds.size(), jac);
        for (const auto& row : sep) {
            LinearCombo total;
            for (const auto& [col, c] : row) {
                const auto sd = dsep_of_marked(marked[col]);
                total += reduce_to_dsep(sd.element.term, p) * (c * sd.sign);
            }
            if (total.is_zero()) continue;
            CHECK(jac_span.contains(dsep_coords(total)));
        }
    }
}

TEST_CASE("the marked-graph differential matches the transported one") {
    // a frozen image, and its top-mark flip negating it
    const auto ds4 = dsep_generators(4);
    const MarkedUtg m0 = marked_of_dsep(ds4[0]).graph;
    CHECK(d1_graphs(m0).str() ==
          "-t:((1,3),2) + t:((2,3),1) - t:((3,1),2) + t:(1,(2,3))");
    const auto flipped = as_marked(m0.graph.flipped(m0.mark_j_node()), m0.i, m0.j);
    REQUIRE(flipped.has_value());
    CHECK(d1_graphs(*flipped) == d1_graphs(m0) * Int(-1));

    for (int p = 4; p <= 5; ++p) {
        const auto marked = enumerate_marked(p - 1);
        for (const auto& m : marked) REQUIRE(d1_graphs(m) == transported_d1(m));
        // no marked graph has a vanishing differential at these degrees
        const auto trees = enumerate_trees(p - 1);
        CHECK(d1_graph_rows(marked, trees).size() == marked.size());
    }
}

TEST_CASE("diagonal second page entries") {
    CHECK(e2_diagonal(0).describe() == "0");
    CHECK(e2_diagonal(1).describe() == "0");
    CHECK(e2_diagonal(2).describe() == "0");
    CHECK(e2_diagonal(3).describe() == "Z");
    CHECK(e2_diagonal(4).describe() == "Z");
    CHECK(e2_diagonal(5).describe() == "Z^2");
    CHECK_THROWS_AS(e2_diagonal(-1), Error);

    // the differential image and the STU^2 rows cut out the same subgroup
    for (int p = 4; p <= 5; ++p) {
        const auto trees = enumerate_trees(p - 1);
        auto left = tree_relation_rows(trees, RelKind::AS);
        const auto ihx = tree_relation_rows(trees, RelKind::IHX);
        left.insert(left.end(), ihx.begin(), ihx.end());
        auto right = left;
        const auto d1rows = d1_graph_rows(enumerate_marked(p - 1), trees);
        const auto stu2 = stu2_rows(enumerate_oneloop(p - 1), trees);
        left.insert(left.end(), d1rows.begin(), d1rows.end());
        right.insert(right.end(), stu2.begin(), stu2.end());
        CHECK(subgroup_equal(trees.size(), left, right));
    }
}
