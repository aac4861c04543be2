#include <algorithm>
#include <set>

#include "doctest.h"
#include "kss/utg.hpp"

using namespace kss;

namespace {

std::size_t count_with_cycle_nodes(const std::vector<Utg>& gs, int n) {
    std::size_t total = 0;
    for (const auto& g : gs) {
        int on = 0;
        for (int v = 0; v < g.node_count(); ++v) on += g.node_on_cycle(v);
        total += on == n;
    }
    return total;
}

}  // namespace

TEST_CASE("endpoint encoding round trips") {
    CHECK(is_leaf_end(leaf_end(1)));
    CHECK(end_label(leaf_end(7)) == 7);
    CHECK_FALSE(is_leaf_end(slot_end(0, 0)));
    CHECK(end_node(slot_end(4, 2)) == 4);
    CHECK(end_slot(slot_end(4, 2)) == 2);
}

TEST_CASE("construction validates unitrivalent structure") {
    // the two-leaf tree is the smallest valid graph
    const Utg edge(2, 0, {{leaf_end(1), leaf_end(2)}});
    CHECK(edge.is_tree());
    CHECK(edge.degree() == 1);
    CHECK(edge.key() == "t:1");
    CHECK(edge.leaf_node(1) == -1);

    // wrong trivalent count
    CHECK_THROWS_AS(Utg(3, 0, {{leaf_end(1), leaf_end(2)}}), Error);
    // self-loop
    CHECK_THROWS_AS(Utg(1, 1, {{slot_end(0, 0), slot_end(0, 1)}, {slot_end(0, 2), leaf_end(1)}}),
                    Error);
    // endpoint used twice
    CHECK_THROWS_AS(Utg(2, 0, {{leaf_end(1), leaf_end(2)}, {leaf_end(1), leaf_end(2)}}), Error);
    // disconnected: a leaf pair plus a triple edge between two nodes
    CHECK_THROWS_AS(Utg(4, 2,
                        {{leaf_end(1), leaf_end(2)},
                         {leaf_end(3), leaf_end(4)},
                         {slot_end(0, 0), slot_end(1, 0)},
                         {slot_end(0, 1), slot_end(1, 1)},
                         {slot_end(0, 2), slot_end(1, 2)}}),
                    Error);
}

TEST_CASE("canonical keys are representation independent") {
    const Utg a(3, 1, {{slot_end(0, 0), leaf_end(3)}, {slot_end(0, 1), leaf_end(1)}, {slot_end(0, 2), leaf_end(2)}});
    // same cyclic order written starting from another slot, edges shuffled
    const Utg b(3, 1, {{slot_end(0, 2), leaf_end(1)}, {slot_end(0, 0), leaf_end(2)}, {slot_end(0, 1), leaf_end(3)}});
    // the opposite cyclic order
    const Utg c(3, 1, {{slot_end(0, 0), leaf_end(3)}, {slot_end(0, 1), leaf_end(2)}, {slot_end(0, 2), leaf_end(1)}});
    CHECK(a.key() == "t:(1,2)");
    CHECK(b.key() == "t:(1,2)");
    CHECK(c.key() == "t:(2,1)");
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("tree enumeration matches the closed count") {
    // degree d has Catalan(d-1) * d! labelled trees
    const std::size_t expected[] = {1, 2, 12, 120, 1680};
    for (int d = 1; d <= 5; ++d) {
        const auto trees = enumerate_trees(d);
        CHECK(trees.size() == expected[d - 1]);
        std::set<std::string> keys;
        for (const auto& t : trees) {
            keys.insert(t.key());
            CHECK(t.is_tree());
            CHECK(t.degree() == d);
            CHECK(t.leaf_count() == d + 1);
        }
        CHECK(keys.size() == trees.size());
        if (d <= 4) {
            for (const auto& t : trees) CHECK(Utg::decode(t.key()).key() == t.key());
        }
    }
    CHECK_THROWS_AS(enumerate_trees(0), Error);
}

TEST_CASE("one-loop enumeration and cycle detection") {
    CHECK(enumerate_oneloop(2).size() == 2);
    const auto d3 = enumerate_oneloop(3);
    CHECK(d3.size() == 20);
    CHECK(count_with_cycle_nodes(d3, 2) == 12);  // parallel-edge cycles
    CHECK(count_with_cycle_nodes(d3, 3) == 8);
    CHECK(enumerate_oneloop(4).size() == 264);
    CHECK(enumerate_oneloop(5).size() == 4464);
    for (const auto& g : d3) {
        CHECK(g.is_oneloop());
        CHECK(g.degree() == 3);
        CHECK(Utg::decode(g.key()).key() == g.key());
    }
    // a parallel-edge graph: leaves 1 and 2 hang off a node away from the cycle
    const Utg twocycle = Utg::decode("l:(((1,2),@),3)");
    CHECK(twocycle.leaf_node(1) == twocycle.leaf_node(2));
    CHECK_FALSE(twocycle.node_on_cycle(twocycle.leaf_node(1)));
    CHECK(twocycle.node_on_cycle(twocycle.leaf_node(3)));
    CHECK_THROWS_AS(enumerate_oneloop(1), Error);
}

TEST_CASE("orientation flips reverse one node's cyclic order") {
    const Utg t = Utg::decode("t:((1,2),3)");
    CHECK(t.flipped(0).key() == "t:(3,(1,2))");
    CHECK(t.flipped(1).key() == "t:((2,1),3)");
    CHECK(t.flipped(0).flipped(0) == t);
    CHECK(t.flipped(0).flipped(1).key() == t.flipped(1).flipped(0).key());
}

TEST_CASE("IHX surgery rewires one internal edge") {
    const Utg t = Utg::decode("t:((1,2),3)");
    const auto edges = t.edges();
    int internal = 0;
    for (const auto& [a, b] : edges) {
        if (is_leaf_end(a) || is_leaf_end(b)) continue;
        ++internal;
        const auto [g1, g2] = t.ihx_at(a);
        CHECK(g1.key() == "t:(1,(2,3))");
        CHECK(g2.key() == "t:(2,(1,3))");
        CHECK(g1.degree() == t.degree());
        CHECK(g2.degree() == t.degree());
    }
    CHECK(internal == 1);
    // leaf edges are not IHX sites
    CHECK_THROWS_AS(t.ihx_at(t.opposite(leaf_end(1))), Error);
}

TEST_CASE("STU expansion splits a cycle leaf into two tree leaves") {
    const Utg g = Utg::decode("l:(((1,@),2),3)");
    const auto [a1, a2] = g.stu_at(3);
    CHECK(a1.key() == "t:((2,3),1)");
    CHECK(a2.key() == "t:((1,3),2)");
    const auto [b1, b2] = g.stu_at(1);
    CHECK(b1.key() == "t:(2,(1,3))");
    CHECK(b2.key() == "t:(1,(2,3))");
    for (const Utg* out : {&a1, &a2, &b1, &b2}) {
        CHECK(out->is_tree());
        CHECK(out->leaf_count() == 4);
        CHECK(out->degree() == 3);
    }
    // a tree has no loop to open
    CHECK_THROWS_AS(Utg::decode("t:(1,2)").stu_at(1), Error);
    // a leaf away from the cycle would disconnect the graph
    CHECK_THROWS_AS(Utg::decode("l:(((1,2),@),3)").stu_at(1), Error);
    CHECK_THROWS_AS(g.stu_at(9), Error);
}

TEST_CASE("marked graph recognition and enumeration") {
    const auto m3 = enumerate_marked(3);
    CHECK(m3.size() == 16);
    for (int i = 1; i <= 2; ++i)
        CHECK(std::count_if(m3.begin(), m3.end(), [&](const MarkedUtg& m) { return m.i == i; }) == 8);
    for (const auto& m : m3) {
        CHECK(m.j == 3);
        CHECK(m.mark_i_node() != m.mark_j_node());
        CHECK(m.graph.node_on_cycle(m.mark_i_node()));
        CHECK(m.graph.node_on_cycle(m.mark_j_node()));
    }
    const auto m4 = enumerate_marked(4);
    CHECK(m4.size() == 192);
    for (int i = 1; i <= 3; ++i)
        CHECK(std::count_if(m4.begin(), m4.end(), [&](const MarkedUtg& m) { return m.i == i; }) == 64);

    // rejections: trees, wrong top label, leaves away from the cycle
    CHECK_FALSE(as_marked(Utg::decode("t:((1,2),3)"), 1, 4).has_value());
    const Utg g = Utg::decode("l:(((1,@),2),3)");
    CHECK(as_marked(g, 1, 3).has_value());
    CHECK_FALSE(as_marked(g, 1, 2).has_value());
    CHECK_FALSE(as_marked(g, 3, 3).has_value());
    const Utg offcycle = Utg::decode("l:(((1,2),@),3)");
    CHECK_FALSE(as_marked(offcycle, 1, 3).has_value());
    CHECK_THROWS_AS(enumerate_marked(2), Error);
}

TEST_CASE("tree classes modulo AS and IHX are free of factorial rank") {
    const char* expected[] = {"Z", "Z", "Z^2", "Z^6", "Z^24"};
    for (int d = 1; d <= 5; ++d) {
        const auto trees = enumerate_trees(d);
        const auto as = tree_relation_rows(trees, RelKind::AS);
        const auto ihx = tree_relation_rows(trees, RelKind::IHX);
        for (const auto& row : as) {
            CHECK(row.size() == 2);  // never a self-identification at these degrees
            CHECK(row.front().second == 1);
            CHECK(row.back().second == 1);
        }
        const auto q = quotient_group(trees.size(), {as, ihx});
        CHECK(q.describe() == expected[d - 1]);
        CHECK(q.invariant_factors.empty());
    }
    CHECK_THROWS_AS(tree_relation_rows(enumerate_trees(2), RelKind::IHXsep), Error);
}

TEST_CASE("marked classes modulo AS and separated IHX") {
    const auto m3 = enumerate_marked(3);
    const auto as3 = marked_relation_rows(m3, RelKind::AS);
    const auto sep3 = marked_relation_rows(m3, RelKind::IHXsep);
    CHECK(sep3.empty());  // every internal edge touches a marked node at this degree
    CHECK(quotient_group(m3.size(), {as3, sep3}).describe() == "Z^2");

    const auto m4 = enumerate_marked(4);
    const auto as4 = marked_relation_rows(m4, RelKind::AS);
    const auto sep4 = marked_relation_rows(m4, RelKind::IHXsep);
    CHECK(sep4.size() == 144);
    CHECK(quotient_group(m4.size(), {as4, sep4}).describe() == "Z^9");
    CHECK_THROWS_AS(marked_relation_rows(m4, RelKind::IHX), Error);
}

TEST_CASE("trees modulo AS, IHX and STU-squared") {
    const char* expected[] = {"Z", "Z", "Z^2"};
    const std::size_t row_counts[] = {0, 22, 384};
    for (int d = 2; d <= 4; ++d) {
        const auto trees = enumerate_trees(d);
        const auto loops = enumerate_oneloop(d);
        const auto stu2 = stu2_rows(loops, trees);
        CHECK(stu2.size() == row_counts[d - 2]);
        const auto q = quotient_group(trees.size(),
                                      {tree_relation_rows(trees, RelKind::AS),
                                       tree_relation_rows(trees, RelKind::IHX), stu2});
        CHECK(q.describe() == expected[d - 2]);
    }
}

TEST_CASE("graphviz export is deterministic and marks the marked nodes") {
    const auto m3 = enumerate_marked(3);
    const MarkedUtg& m = m3.front();
    const std::string dot = m.graph.dot("g", {m.mark_i_node(), m.mark_j_node()});
    CHECK(dot.find("graph \"g\"") != std::string::npos);
    CHECK(dot.find("rank=same") != std::string::npos);
    CHECK(dot.find("style=filled") != std::string::npos);
    CHECK(dot == m.graph.dot("g", {m.mark_i_node(), m.mark_j_node()}));
    const std::string plain = m.graph.dot("g");
    CHECK(plain.find("style=filled") == std::string::npos);
}

TEST_CASE("decoding rejects malformed keys") {
    CHECK_THROWS_AS(Utg::decode("x:1"), Error);
    CHECK_THROWS_AS(Utg::decode("t:((1,2)"), Error);
    CHECK_THROWS_AS(Utg::decode("t:(1,1)"), Error);
    CHECK_THROWS_AS(Utg::decode("l:(1,2)"), Error);   // no reconnection point
    CHECK_THROWS_AS(Utg::decode("t:(1,@)"), Error);   // trees have no cut
    CHECK_THROWS_AS(Utg::decode(""), Error);
    CHECK_THROWS_AS(Utg::decode("t:2"), Error);
}

TEST_CASE("relation outputs must stay inside the generator list") {
    auto trees = enumerate_trees(2);
    trees.pop_back();  // drop one orientation; its AS partner now dangles
    CHECK_THROWS_AS(tree_relation_rows(trees, RelKind::AS), Error);
}
