#include "kss/hall.hpp"

#include <algorithm>

namespace kss {

bool bp_less(const Term& a, const Term& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.is_leaf() && b.is_leaf()) return a.gen() < b.gen();
    if (a.is_leaf() != b.is_leaf()) return a.key() < b.key();  // unreachable for weight-1 == leaf terms
    Term al = a.left(), bl = b.left();
    if (al != bl) return bp_less(al, bl);
    return bp_less(a.right(), b.right());
}

bool is_basic(const Term& t) {
    if (t.is_leaf()) return true;
    Term l = t.left(), r = t.right();
    if (!is_basic(l) || !is_basic(r)) return false;
    if (!bp_less(l, r)) return false;
    if (!r.is_leaf() && bp_less(l, r.left())) return false;
    return true;
}

std::vector<Term> basic_products(const std::vector<Gen>& gens, int max_weight,
                                 const std::function<bool(const Term&)>& keep) {
    if (max_weight < 1) return {};
    std::vector<std::vector<Term>> byw(static_cast<std::size_t>(max_weight) + 1);
    for (const Gen& g : gens) {
        Term t(g);
        if (keep && !keep(t)) continue;
        byw[1].push_back(t);
    }
    std::sort(byw[1].begin(), byw[1].end(), bp_less);
    for (int w = 2; w <= max_weight; ++w) {
        for (int w1 = 1; w1 < w; ++w1) {
            int w2 = w - w1;
            for (const Term& a : byw[w1]) {
                for (const Term& b : byw[static_cast<std::size_t>(w2)]) {
                    if (!bp_less(a, b)) continue;
                    if (!b.is_leaf() && bp_less(a, b.left())) continue;
                    Term t(a, b);
                    if (keep && !keep(t)) continue;
                    byw[static_cast<std::size_t>(w)].push_back(t);
                }
            }
        }
        std::sort(byw[static_cast<std::size_t>(w)].begin(), byw[static_cast<std::size_t>(w)].end(), bp_less);
    }
    std::vector<Term> out;
    for (int w = 1; w <= max_weight; ++w)
        out.insert(out.end(), byw[static_cast<std::size_t>(w)].begin(), byw[static_cast<std::size_t>(w)].end());
    return out;
}

std::vector<Term> multilinear_basic_products(const std::vector<Gen>& gens) {
    const int m = static_cast<int>(gens.size());
    if (m == 0) return {};
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            if (gens[a] == gens[b]) throw Error("multilinear_basic_products: repeated generator " + gens[a].str());
    auto cap = [](const Term& t) {
        for (const auto& [g, mult] : t.multidegree())
            if (mult > 1) return false;
        return true;
    };
    std::vector<Term> all = basic_products(gens, m, cap);
    std::vector<Term> out;
    for (const Term& t : all)
        if (t.weight() == m) out.push_back(t);
    return out;
}

namespace {

bool is_self_bracket(const Term& t) { return !t.is_leaf() && t.left() == t.right(); }

// A stuck [u,u] with u of even weight satisfies [u,u] = -[u,u] by graded
// antisymmetry, so its coefficient only carries meaning mod 2. Reducing here
// keeps rewriting confluent; it is sound because any bracket built on top of
// a 2-torsion class is again 2-torsion.
LinearCombo reduce_torsion(const LinearCombo& c) {
    LinearCombo out;
    for (const auto& [t, k] : c.terms()) {
        if (is_self_bracket(t) && t.left().weight() % 2 == 0) {
            if (k % 2 != 0) out.add(t, 1);
            continue;
        }
        out.add(t, k);
    }
    return out;
}

}  // namespace

HallRewriter::HallRewriter(const std::vector<Gen>& generators) {
    for (const Gen& g : generators) declared_[g.str()] = true;
}

LinearCombo HallRewriter::normalize(const LinearCombo& c) {
    LinearCombo out;
    for (const auto& [t, k] : c.terms()) out += normalize(t) * k;
    return reduce_torsion(out);
}

LinearCombo HallRewriter::normalize(const Term& t) {
    auto it = memo_.find(t.key());
    if (it != memo_.end()) return it->second;
    if (in_progress_.count(t.key())) throw Error("normalize: rewrite of " + t.key() + " recurses into itself");
    in_progress_[t.key()] = true;
    LinearCombo result;
    try {
        result = normalize_uncached(t);
    } catch (...) {
        in_progress_.erase(t.key());
        throw;
    }
    in_progress_.erase(t.key());
    memo_[t.key()] = result;
    return result;
}

LinearCombo HallRewriter::normalize_uncached(const Term& t) {
    if (t.is_leaf()) {
        if (!declared_.count(t.gen().str())) throw Error("normalize: unknown generator " + t.gen().str());
        return LinearCombo(t);
    }
    if (!t.config_only()) throw Error("normalize: Tangent generator inside a bracket in " + t.key());
    LinearCombo a = normalize(t.left());
    LinearCombo b = normalize(t.right());
    return bracket_combos(a, b);
}

LinearCombo HallRewriter::bracket_combos(const LinearCombo& a, const LinearCombo& b) {
    // Rewrites [u,v] of the three-term graded Jacobi identity on (u, c, d),
    // solving for [u,[c,d]]:
    //   [u,[c,d]] = -(-1)^{wu(wc+1)+wd(wu+1)} [c,[d,u]]
    //               -(-1)^{wc(wd+1)+wd(wu+1)} [d,[u,c]]
    auto jacobi = [this](const Term& u, const Term& c, const Term& d) {
        const int wu = u.weight(), wc = c.weight(), wd = d.weight();
        const int e1 = wu * (wc + 1) + wd * (wu + 1);
        const int e2 = wc * (wd + 1) + wd * (wu + 1);
        LinearCombo out;
        out += normalize(Term(c, Term(d, u))) * Int(e1 % 2 == 0 ? -1 : 1);
        out += normalize(Term(d, Term(u, c))) * Int(e2 % 2 == 0 ? -1 : 1);
        return out;
    };

    LinearCombo out;
    for (const auto& [u, cu] : a.terms()) {
        for (const auto& [v, cv] : b.terms()) {
            const Int coeff = cu * cv;
            if (u == v) {
                // stuck self-bracket: kept as a normal form; a surrounding
                // bracket destroys it through the Jacobi rewrite below
                out.add(Term(u, v), coeff);
                continue;
            }
            if (is_self_bracket(v)) {
                out += jacobi(u, v.left(), v.right()) * coeff;
                continue;
            }
            if (is_self_bracket(u)) {
                const Int s(swap_sign(u.weight(), v.weight()));
                out += jacobi(v, u.left(), u.right()) * (coeff * s);
                continue;
            }
            if (bp_less(v, u)) {
                const Int s(swap_sign(u.weight(), v.weight()));
                LinearCombo sub = bracket_combos(LinearCombo(v), LinearCombo(u));
                out += sub * (coeff * s);
                continue;
            }
            // now u < v in the Hall order
            if (v.is_leaf() || !bp_less(u, v.left())) {
                out.add(Term(u, v), coeff);  // basic product
                continue;
            }
            out += jacobi(u, v.left(), v.right()) * coeff;
        }
    }
    return reduce_torsion(out);
}

}  // namespace kss
