// Terms of the free graded quasi-Lie calculus of Whitehead brackets: generator
// symbols, binary bracket trees, integer linear combinations, and the graded
// swap sign. A generator has weight 1 and lives in homotopy dimension 2; a
// bracket of weight w lives in dimension w+1.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "kss/zlinalg.hpp"

namespace kss {

// A homotopy generator symbol: x(i,j) is the class of the sphere pulling
// strand i around strand j (stored with i < j); y(k) is the generator of the
// k-th tangent-sphere factor.
struct Gen {
    enum class Kind { Config, Tangent };
    Kind kind = Kind::Config;
    int i = 0, j = 0;  // Config only, i < j
    int k = 0;         // Tangent only

    static Gen config(int i, int j);
    static Gen tangent(int k);
    std::string str() const;  // "x(1,3)" or "y(2)"
    // strand indices used by this generator
    std::set<int> support() const;

    friend bool operator==(const Gen& a, const Gen& b);
    // The fixed generator order: Config symbols by (j, i) ascending, then
    // Tangent symbols by k. Within a fixed second index this makes
    // x(1,p) < x(2,p) < ... < x(p-1,p).
    friend bool operator<(const Gen& a, const Gen& b);
};

// An immutable binary bracket tree over generator symbols. Structure is
// shared; weight, support and the canonical rendering are cached on
// construction. The canonical rendering ("[x(1,3),[x(1,3),x(2,3)]]") doubles
// as the term's identity for maps and equality.
class Term {
  public:
    explicit Term(const Gen& g);
    Term(const Term& left, const Term& right);

    bool is_leaf() const;
    const Gen& gen() const;  // leaf only
    Term left() const;       // bracket only
    Term right() const;      // bracket only

    int weight() const;                        // leaf count; homotopy dim is weight()+1
    const std::set<int>& support() const;      // strand indices across all leaves
    std::map<std::string, int> multidegree() const;  // generator key -> multiplicity
    bool config_only() const;                  // no Tangent leaves
    const std::string& key() const;            // canonical rendering

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b);
    friend bool operator<(const Term& a, const Term& b);  // by key; container order only

  private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// (-1)^((w1+1)(w2+1)): the sign picked up when the two sides of a bracket of
// weights w1, w2 are exchanged.
int swap_sign(int w1, int w2);

// A finite integer linear combination of terms. No zero coefficients are
// stored; iteration order is the canonical term order, so rendering is
// deterministic.
class LinearCombo {
  public:
    LinearCombo() = default;
    LinearCombo(const Term& t, const Int& c = 1);

    void add(const Term& t, const Int& c);
    LinearCombo& operator+=(const LinearCombo& o);
    LinearCombo& operator-=(const LinearCombo& o);
    LinearCombo operator+(const LinearCombo& o) const;
    LinearCombo operator-(const LinearCombo& o) const;
    LinearCombo operator*(const Int& c) const;

    bool is_zero() const;
    std::size_t size() const;
    const std::map<Term, Int>& terms() const;
    std::string str() const;  // "[x(1,2),x(1,3)] - 2*x(2,3)"; "0" when empty

    friend bool operator==(const LinearCombo& a, const LinearCombo& b);
    friend bool operator!=(const LinearCombo& a, const LinearCombo& b);

  private:
    std::map<Term, Int> terms_;
};

// A formal bracket expression whose leaves are linear combinations; expand()
// multiplies everything out by bilinearity. Used to push combinations through
// bracket shapes without committing to any normalization.
class BracketExpr {
  public:
    explicit BracketExpr(const LinearCombo& leaf);
    BracketExpr(const BracketExpr& a, const BracketExpr& b);
    LinearCombo expand() const;

  private:
    struct Node;
    static LinearCombo expand_node(const Node* n);
    std::shared_ptr<const Node> n_;
};

// Bilinear expansion of a single bracket of two combinations.
LinearCombo expand_bilinear(const LinearCombo& a, const LinearCombo& b);

// Orders the children of every bracket node by canonical key, accumulating
// the graded swap sign; returns the canonical representative and the sign
// relating it to the input (input = sign * canonical).
std::pair<Term, int> antisym_canonical(const Term& t);

}  // namespace kss
