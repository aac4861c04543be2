// The cosimplicial structure on the tower of compactified configuration
// spaces: pushforwards of homotopy generators along cofaces (which double a
// point) and codegeneracies (which forget a point), and the induced maps on
// bracket expressions. Level n carries Config generators x(i,j), 1 <= i < j
// <= n, and Tangent generators y(1)..y(n).
#pragma once

#include "kss/bracket.hpp"

namespace kss {

enum class MapKind { Coface, Codegeneracy };

// A single cosimplicial structure map applied at a given level: the coface
// delta^l maps level n to n+1 (0 <= l <= n+1), the codegeneracy s^l maps
// level n to n-1 (0 <= l <= n-1).
struct SimplicialDirection {
    MapKind kind = MapKind::Coface;
    int l = 0;
    int source_level = 1;

    int target_level() const { return kind == MapKind::Coface ? source_level + 1 : source_level - 1; }
    std::string str() const;
};

// Pushforward of one generator of level n along s^l. Zero, one generator, or
// (never here) a sum; out-of-range l or generator indices are errors.
LinearCombo codegeneracy_push(int l, const Gen& g, int n);

// Pushforward of one generator of level n along delta^l: up to three terms.
LinearCombo coface_push(int l, const Gen& g, int n);

// Pushforward of a whole bracket term: replaces every leaf by its pushed
// combination, expands multilinearly, and discards bracket terms some node of
// which has disjoint-support children (those classes vanish). Terms of weight
// >= 2 must be Config-only; a lone Tangent leaf is pushed directly.
LinearCombo push_through_bracket(const SimplicialDirection& dir, const Term& t);
LinearCombo push_through_bracket(const SimplicialDirection& dir, const LinearCombo& c);

}  // namespace kss
