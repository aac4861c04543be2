// Relations among the homotopy generators of ordered configuration spaces of
// points in 3-space, and the wedge decomposition of their homotopy groups:
// orientation reversal x(j,i) = -x(i,j), vanishing of brackets with disjoint
// strand support, the three equal forms of a one-common-index bracket, and
// the sphere-symbol bookkeeping for homotopy groups that are not free.
#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "kss/bracket.hpp"

namespace kss {

// x(i,j) with i > j is -x(j,i); returns the oriented generator and the sign.
// Indices must be distinct and within 1..n.
std::pair<Gen, int> orient_normalize(int i, int j, int n);

// True when some bracket node of t has children with disjoint strand support;
// such a class is zero. Leaves must all be Config generators.
bool disjoint_support_vanishes(const Term& t);

struct SignedTerm {
    Term term;
    int sign = 1;
};

// For a bracket [x(i,j), x(j,k)] of two generators sharing exactly one
// strand, the three equal signed forms of the same class (the input first,
// with sign +1). Anything else is an error.
std::array<SignedTerm, 3> triple_rewrite(const Term& t);

// The symbol pi_q(S^m). Groups known exactly: m > q gives 0, m = q gives Z,
// m = q-1 with q >= 4 gives Z/2, and (q,m) = (3,2) gives Z. Everything else
// stays formal.
struct SphereSym {
    int q = 0;
    int m = 0;
    std::optional<GroupPresentation> known() const;
    std::string str() const;  // "pi_3(S^2)"
};

// pi_q of the configuration space of n points in R^3 as a list of free
// homotopy summands: one basic product per wedge summand generator, tagged
// with its sphere symbol pi_q(S^{weight+1}). The configuration space of n
// points splits as a product over j = 2..n of wedges of j-1 two-spheres;
// summands are listed by j, then by weight and Hall order.
std::vector<std::pair<Term, SphereSym>> pi_decomposition(int n, int q);

}  // namespace kss
