#include "kss/config_space.hpp"

#include <algorithm>

#include "kss/hall.hpp"

namespace kss {

std::pair<Gen, int> orient_normalize(int i, int j, int n) {
    if (i == j) throw Error("orient_normalize: indices must be distinct");
    if (i < 1 || j < 1 || i > n || j > n) throw Error("orient_normalize: index out of range 1.." + std::to_string(n));
    if (i < j) return {Gen::config(i, j), 1};
    return {Gen::config(j, i), -1};
}

namespace {
bool has_disjoint_node(const Term& t) {
    if (t.is_leaf()) {
        if (t.gen().kind != Gen::Kind::Config) throw Error("disjoint_support_vanishes: Tangent leaf in " + t.key());
        return false;
    }
    Term l = t.left(), r = t.right();
    const std::set<int>&a = l.support(), &b = r.support();
    bool disjoint = std::none_of(a.begin(), a.end(), [&b](int s) { return b.count(s) != 0; });
    if (disjoint) return true;
    return has_disjoint_node(l) || has_disjoint_node(r);
}
}  // namespace

bool disjoint_support_vanishes(const Term& t) { return has_disjoint_node(t); }

std::array<SignedTerm, 3> triple_rewrite(const Term& t) {
    if (t.is_leaf() || !t.left().is_leaf() || !t.right().is_leaf())
        throw Error("triple_rewrite expects a bracket of two generators");
    const Gen &g1 = t.left().gen(), &g2 = t.right().gen();
    if (g1.kind != Gen::Kind::Config || g2.kind != Gen::Kind::Config)
        throw Error("triple_rewrite expects Config generators");
    std::set<int> s1 = g1.support(), s2 = g2.support(), common;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::inserter(common, common.begin()));
    if (common.size() != 1)
        throw Error("triple_rewrite expects generators sharing exactly one strand, got " + t.key());
    const int jj = *common.begin();
    auto other = [jj](const Gen& g) { return g.i == jj ? g.j : g.i; };
    const int ii = other(g1), kk = other(g2);
    const int n = std::max({ii, jj, kk});

    // The class [x_{ij}, x_{jk}] equals [x_{ji}, x_{ik}] and [x_{ik}, x_{kj}];
    // orient each raw pair and carry the signs, including the sign relating
    // the oriented input to the raw pattern [x_{ij}, x_{jk}] itself.
    auto oriented = [n](int a, int b, int c, int d) {
        auto [gl, sl] = orient_normalize(a, b, n);
        auto [gr, sr] = orient_normalize(c, d, n);
        return SignedTerm{Term(Term(gl), Term(gr)), sl * sr};
    };
    SignedTerm pattern = oriented(ii, jj, jj, kk);  // term equals the input
    SignedTerm f2 = oriented(jj, ii, ii, kk);
    SignedTerm f3 = oriented(ii, kk, kk, jj);
    f2.sign *= pattern.sign;
    f3.sign *= pattern.sign;
    return {SignedTerm{t, 1}, f2, f3};
}

std::optional<GroupPresentation> SphereSym::known() const {
    auto make = [](std::size_t free_rank, std::vector<Int> torsion) {
        GroupPresentation g;
        g.generator_count = free_rank + torsion.size();
        g.rank = torsion.size();
        g.invariant_factors = std::move(torsion);
        for (std::size_t t = 0; t < g.invariant_factors.size(); ++t)
            g.relations.push_back({{static_cast<int>(free_rank + t), g.invariant_factors[t]}});
        return g;
    };
    if (m > q) return make(0, {});
    if (m == q) return make(1, {});
    if (q == 3 && m == 2) return make(1, {});
    if (m == q - 1 && q >= 4) return make(0, {Int(2)});
    return std::nullopt;
}

std::string SphereSym::str() const {
    return "pi_" + std::to_string(q) + "(S^" + std::to_string(m) + ")";
}

std::vector<std::pair<Term, SphereSym>> pi_decomposition(int n, int q) {
    if (n < 1) throw Error("pi_decomposition: need n >= 1");
    if (q < 2) throw Error("pi_decomposition: need q >= 2");
    std::vector<std::pair<Term, SphereSym>> out;
    for (int j = 2; j <= n; ++j) {
        std::vector<Gen> gens;
        for (int i = 1; i < j; ++i) gens.push_back(Gen::config(i, j));
        for (const Term& t : basic_products(gens, q - 1))
            out.emplace_back(t, SphereSym{q, t.weight() + 1});
    }
    return out;
}

}  // namespace kss
