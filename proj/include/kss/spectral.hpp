// First-page entries and first differential of the homotopy spectral sequence
// of the cosimplicial configuration-space model: closed-form bases for the
// diagonal and superdiagonal entries, the separated two-factor generators of
// the superdiagonal, the alternating coface sum as a brute-force differential,
// and its closed-form counterpart on separated generators.
#pragma once

#include <optional>
#include <vector>

#include "kss/config_space.hpp"
#include "kss/cosimplicial.hpp"
#include "kss/hall.hpp"

namespace kss {

// One wedge summand of an E^1 entry: a basic product carrying pi_q of the
// sphere of its homotopy dimension.
struct E1Summand {
    Term term;
    SphereSym symbol;
};

// E^1_{p,q}: the summands, plus the split into an exactly-known free part
// (the terms whose symbol is pi_q(S^q), one copy of Z each) and the rest.
struct E1Entry {
    int p = 0;
    int q = 0;
    std::vector<E1Summand> summands;  // all of them, deterministic order
    std::vector<Term> free_basis;     // summands contributing Z
    std::vector<E1Summand> other;     // torsion or formal summands
    bool fully_known = true;          // no formal symbols among `other`
    std::string describe() const;     // "Z^2", "Z^2 + Z/2 + pi_6(S^3)", "0"
};

// The entry E^1_{p,q} for q >= p: basic products over x(1,p)..x(p-1,p) of
// weight <= q-1 using every generator at least once, intersected with the
// kernels of all codegeneracies (which that support condition guarantees).
// For p = 1 the single strand contributes its tangent sphere; p = 0 and
// q < p give the zero entry.
E1Entry e1_entry(int p, int q);

// A separated generator of the superdiagonal entry E^1_{p-1,p}: a bracket
// [c1,c2] of weight p-1 over x(1,p-1)..x(p-2,p-1) whose two sides repeat
// exactly the generator x(k,p-1) and cover all the others once between them.
struct DsepElement {
    Term term;           // [c1,c2]; canonical when produced by dsep_generators
    int p = 0;           // superdiagonal column: entry E^1_{p-1,p}
    int k = 0;           // the repeated first index
    std::set<int> left_indices;   // first indices in c1, including k
    std::set<int> right_indices;  // first indices in c2, including k

    Term c1() const { return term.left(); }
    Term c2() const { return term.right(); }
};

// All separated generators for column p >= 4, deduplicated up to
// antisymmetry, in deterministic order. Their classes generate the free part
// of E^1_{p-1,p}.
std::vector<DsepElement> dsep_generators(int p);

// Validates a separated two-factor term (any antisymmetry representative,
// not only the canonical one) and returns its bookkeeping if it is one.
std::optional<DsepElement> as_dsep(const Term& t, int p);

// Rewrites a weight-(p-1) bracket over x(.,p-1) whose multidegree repeats one
// generator as a signed combination of canonical separated terms, using
// antisymmetry and the graded Jacobi identity only.
LinearCombo reduce_to_dsep(const Term& t, int p);
LinearCombo reduce_to_dsep(const LinearCombo& c, int p);

// The first differential E^1_{p-1,p} -> E^1_{p,p} as the alternating sum of
// the coface pushforwards of level p-1. Accepts any combination over
// generators of level p-1 (weight-1 terms may include Tangent generators).
// No normalization is applied to the output.
LinearCombo d1_bruteforce(const LinearCombo& w, int p);

// Closed form of the same differential on a separated generator: for each
// repeated-index slot k' = k and the top index, two relabelled two-factor
// terms with an alternating sign. Produces exactly the same signed term
// multiset as d1_bruteforce.
LinearCombo d1_simplified(const DsepElement& w);

// The superdiagonal entry split: F = weight-(p-1) basic products over
// x(.,p-1) that repeat one generator (free summands), T = multilinear basic
// products of weight p-2 (each a pi_p(S^{p-1}) = Z/2 summand for p >= 4).
struct SuperdiagonalEntry {
    int p = 0;
    std::vector<Term> f_basis;
    std::vector<Term> t_basis;
};
SuperdiagonalEntry superdiagonal_entry(int p);

// Instances of the graded Jacobi identity that stay inside the separated
// span: rotations at internal nodes strictly below the top bracket. Each
// instance is returned as a combination over canonical separated terms that
// equals zero.
std::vector<LinearCombo> separated_jacobi_instances(int p);

}  // namespace kss
