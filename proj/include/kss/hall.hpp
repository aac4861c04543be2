// Hall-basis machinery for the free graded quasi-Lie algebra on weight-one
// generators: the basic-product order, the basic-product predicate, exhaustive
// enumeration by weight, and rewriting of arbitrary bracket terms into the
// basic-product basis using graded antisymmetry and the graded Jacobi
// identity. There is no [x,x] = 0 relation: self-brackets are legitimate
// classes and survive normalization when nothing destroys them.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kss/bracket.hpp"

namespace kss {

// The Hall order on bracket terms: by weight first; equal-weight leaves by
// generator order; equal-weight brackets lexicographically by (left, right).
bool bp_less(const Term& a, const Term& b);

// True when t is a basic product: a generator leaf, or [a,b] with a, b basic,
// a < b in the Hall order, and (when b = [c,d]) c <= a.
bool is_basic(const Term& t);

// All basic products over the given generators with weight <= max_weight,
// grouped implicitly by weight and sorted by the Hall order. `keep` is applied
// to every candidate *including intermediate subproducts*, so it must be
// hereditary (true for a term implies true for its subterms); multiplicity
// caps per generator are the intended use. Pass nullptr for no filter.
std::vector<Term> basic_products(const std::vector<Gen>& gens, int max_weight,
                                 const std::function<bool(const Term&)>& keep = nullptr);

// Basic products of weight m over exactly the given m generators, each
// appearing once. There are (m-1)! of them.
std::vector<Term> multilinear_basic_products(const std::vector<Gen>& gens);

// Rewrites bracket terms into the basic-product basis. Results are memoized
// for the lifetime of the rewriter. Only Config generators may appear in
// terms of weight >= 2 (a Tangent leaf inside a bracket is an error), and
// every leaf must be one of the declared generators.
//
// Self-brackets [u,u] are kept as stuck normal forms when they appear at the
// top of a term; nested ones are destroyed by the Jacobi rewrite. When u has
// even weight, graded antisymmetry forces 2[u,u] = 0, so coefficients of such
// stuck terms are reduced mod 2. An input whose rewrite recurses into itself
// (possible only for pathological self-similar inputs) raises Error instead
// of looping.
class HallRewriter {
  public:
    explicit HallRewriter(const std::vector<Gen>& generators);

    LinearCombo normalize(const Term& t);
    LinearCombo normalize(const LinearCombo& c);

  private:
    LinearCombo normalize_uncached(const Term& t);
    LinearCombo bracket_combos(const LinearCombo& a, const LinearCombo& b);

    std::map<std::string, bool> declared_;
    std::map<std::string, LinearCombo> memo_;
    std::map<std::string, bool> in_progress_;
};

}  // namespace kss
