// Labelled unitrivalent graphs: trees and one-loop graphs with a cyclic order
// at every trivalent node, their canonical string encodings, enumeration by
// degree, the local surgeries (orientation flip, IHX, STU), marked one-loop
// graphs, and integer relation rows over keyed generator lists.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kss/zlinalg.hpp"

namespace kss {

// Endpoint encoding: the end of an edge is either a leaf, encoded as -label
// (labels are 1-based), or slot s of trivalent node n, encoded as 3n + s.
// Slots 0 -> 1 -> 2 -> 0 give the cyclic order at the node.
inline int leaf_end(int label) { return -label; }
inline int slot_end(int node, int slot) { return 3 * node + slot; }
inline bool is_leaf_end(int e) { return e < 0; }
inline int end_label(int e) { return -e; }
inline int end_node(int e) { return e / 3; }
inline int end_slot(int e) { return e % 3; }

// An immutable labelled unitrivalent graph. Construction validates that every
// endpoint is used exactly once, the graph is connected, has no self-loops,
// and is either a tree (trivalent count = leaves - 2) or has exactly one
// simple cycle (trivalent count = leaves). Parallel edges are allowed; they
// arise as length-two cycles. The canonical key is computed on construction:
// trees are encoded as plane binary trees rooted at the highest leaf, loop
// graphs by cutting each directed cycle edge and taking the minimal tree
// encoding, so equal keys mean label- and cyclic-order-preserving isomorphic.
class Utg {
  public:
    Utg(int leaves, int nodes, const std::vector<std::pair<int, int>>& edges);

    int leaf_count() const { return leaves_; }
    int node_count() const { return nodes_; }
    int degree() const { return (leaves_ + nodes_) / 2; }
    bool is_tree() const { return nodes_ == leaves_ - 2; }
    bool is_oneloop() const { return nodes_ == leaves_; }

    int opposite(int end) const;
    // trivalent node adjacent to the leaf; -1 for the two-leaf tree
    int leaf_node(int label) const;
    bool node_on_cycle(int node) const;
    // each edge once, as an (end, end) pair with the smaller encoding first
    std::vector<std::pair<int, int>> edges() const;

    const std::string& key() const { return key_; }
    static Utg decode(const std::string& key);
    // Graphviz rendering; leaves sit on one rank in label order, and the
    // optional marked nodes are drawn filled
    std::string dot(const std::string& name, const std::vector<int>& marked_nodes = {}) const;

    // reverses the cyclic order at one trivalent node
    Utg flipped(int node) const;
    // IHX surgery at the edge whose ends are two distinct trivalent nodes;
    // returns the two rewired graphs (the relation reads g = first - second)
    std::pair<Utg, Utg> ihx_at(int end) const;
    // STU expansion at a leaf adjacent to a cycle node of a one-loop graph;
    // returns two trees with one more leaf (labels above the input leaf are
    // shifted up, and the new leaves take the input label and its successor)
    std::pair<Utg, Utg> stu_at(int leaf_label) const;

    friend bool operator==(const Utg& a, const Utg& b) { return a.key_ == b.key_; }
    friend bool operator<(const Utg& a, const Utg& b) { return a.key_ < b.key_; }

  private:
    int leaves_ = 0;
    int nodes_ = 0;
    std::vector<int> leaf_opp_;                // by label-1
    std::vector<std::array<int, 3>> node_opp_; // by node, slot
    std::vector<bool> cycle_node_;
    std::string key_;

    void compute_cycle();
    void compute_key();
    std::string encode_from(int node, int in_slot, int banned_end) const;
};

// All labelled unitrivalent trees of the given degree (degree d has d+1
// leaves); there are Catalan(d-1) * d! of them, in canonical-key order.
std::vector<Utg> enumerate_trees(int degree);

// All connected one-loop graphs of the given degree (equal numbers of leaves
// and trivalent nodes, cycle length at least two), in canonical-key order.
std::vector<Utg> enumerate_oneloop(int degree);

// A one-loop graph marked at the trivalent nodes adjacent to leaves i and j.
// Validity: i < j = leaf count = degree, both nodes on the cycle. The two
// marked nodes are distinct automatically.
struct MarkedUtg {
    Utg graph;
    int i = 0;
    int j = 0;

    int mark_i_node() const { return graph.leaf_node(i); }
    int mark_j_node() const { return graph.leaf_node(j); }
    std::string key() const;
};

std::optional<MarkedUtg> as_marked(const Utg& g, int i, int j);

// All (i,j)-marked graphs of degree j for i = 1..j-1, ordered by (i, key).
std::vector<MarkedUtg> enumerate_marked(int j);

enum class RelKind { AS, IHX, IHXsep };

// Relation rows over the generator list, one sparse row per relation
// instance: AS gives g + g' for every (generator, trivalent node); IHX gives
// g - g' + g'' for every edge between two trivalent nodes. A relation output
// falling outside the generator list is an error (the enumeration was not
// closed). IHXsep is rejected here; it needs marks.
std::vector<SparseVec> tree_relation_rows(const std::vector<Utg>& gens, RelKind kind);

// Same over marked generators; IHXsep skips edges incident to a marked node,
// and marks are carried through the surgery unchanged.
std::vector<SparseVec> marked_relation_rows(const std::vector<MarkedUtg>& gens, RelKind kind);

// STU-squared rows over the tree list: for every one-loop graph of the same
// degree and every pair of leaves at cycle nodes, the difference of the two
// STU expansions.
std::vector<SparseVec> stu2_rows(const std::vector<Utg>& oneloop_gens, const std::vector<Utg>& tree_gens);

// Cokernel of the stacked relation rows on the generator lattice.
GroupPresentation quotient_group(std::size_t generator_count, const std::vector<std::vector<SparseVec>>& row_blocks);

}  // namespace kss
