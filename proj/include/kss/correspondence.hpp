// Signed translations between the bracket calculus on configuration
// generators and labelled unitrivalent graphs: brackets to trees and back,
// separated superdiagonal generators to marked one-loop graphs and back, the
// tree-level differential of a marked graph, and the diagonal second page.
#pragma once

#include <map>

#include "kss/config_space.hpp"
#include "kss/spectral.hpp"
#include "kss/utg.hpp"

namespace kss {

// An integer linear combination of unitrivalent graphs, keyed by canonical
// encoding; mirrors LinearCombo on the graph side.
class GraphCombo {
  public:
    GraphCombo() = default;
    GraphCombo(const Utg& g, const Int& c = 1) { add(g, c); }

    void add(const Utg& g, const Int& c);
    GraphCombo& operator+=(const GraphCombo& o);
    GraphCombo& operator-=(const GraphCombo& o);
    GraphCombo operator+(const GraphCombo& o) const;
    GraphCombo operator-(const GraphCombo& o) const;
    GraphCombo operator*(const Int& c) const;

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Utg, Int>& terms() const { return terms_; }
    std::string str() const;
    // coordinates over a generator list; unknown graphs are an error
    SparseVec coords(const std::vector<Utg>& basis) const;

    friend bool operator==(const GraphCombo& a, const GraphCombo& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GraphCombo& a, const GraphCombo& b) { return !(a == b); }

  private:
    std::map<Utg, Int> terms_;
};

struct SignedGraph {
    Utg graph;
    int sign = 1;
};

struct SignedMarked {
    MarkedUtg graph;
    int sign = 1;
};

struct SignedDsep {
    DsepElement element;
    int sign = 1;
};

// Bracket to tree. The input is an iterated bracket of configuration
// generators in which the two sides of every bracket node share exactly one
// strand index (the joint), and whose strand labels together form 1..n. Each
// generator x(i,j) becomes the edge joining leaves i and j; a bracket joins
// its sides at the shared leaf, hanging a fresh copy of that leaf off the new
// trivalent node. The sign accumulates, per bracket node, the size of the
// left side's label set plus the number of descending label pairs between the
// two sides (joint labels excluded).
SignedGraph tree_of_bracket(const Term& t);

// Inverse over trees with leaves 1..n: an iterated bracket of x(i,n),
// multilinear in the other strands, with the matching sign.
SignedTerm bracket_of_tree(const Utg& tree);

// Separated generator [c1,c2] to the (k,p-1)-marked one-loop graph: the two
// factor trees are joined at both shared leaves (the repeated index k and the
// top strand p-1). The sign multiplies the two factors' tree signs by the
// descending-pair count between their label sets.
SignedMarked marked_of_dsep(const DsepElement& w);

// Inverse: splits the cycle at the two marked nodes into two factor trees.
// Graphs whose cyclic orders at the marks do not match the joined shape are
// first flipped at the mark next to the top leaf, at the cost of a sign.
SignedDsep dsep_of_marked(const MarkedUtg& g);

// The tree-level differential of a marked graph: the signed difference of the
// two STU expansions at the top leaf minus the signed difference at the
// repeated leaf. Graphs not in the reference orientation contribute through
// their top-mark flip with the opposite sign, matching dsep_of_marked.
GraphCombo d1_graphs(const MarkedUtg& g);

// Rows of d1_graphs over the tree generator list, one per marked graph.
std::vector<SparseVec> d1_graph_rows(const std::vector<MarkedUtg>& marked,
                                     const std::vector<Utg>& trees);

// The diagonal entry of the second page: zero through p=2; from p=3 on,
// trees of degree p-1 modulo AS, IHX, and (from p=4) the differential image.
GroupPresentation e2_diagonal(int p);

}  // namespace kss
