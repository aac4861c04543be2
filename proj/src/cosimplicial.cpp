#include "kss/cosimplicial.hpp"

#include "kss/config_space.hpp"

namespace kss {

std::string SimplicialDirection::str() const {
    return (kind == MapKind::Coface ? "delta^" : "s^") + std::to_string(l) +
           " at level " + std::to_string(source_level);
}

namespace {
void check_gen_level(const Gen& g, int n) {
    if (g.kind == Gen::Kind::Config) {
        if (g.j > n) throw Error("generator " + g.str() + " does not live at level " + std::to_string(n));
    } else {
        if (g.k > n) throw Error("generator " + g.str() + " does not live at level " + std::to_string(n));
    }
}
}  // namespace

LinearCombo codegeneracy_push(int l, const Gen& g, int n) {
    if (n < 1) throw Error("codegeneracy_push: level must be >= 1");
    if (l < 0 || l > n - 1) throw Error("codegeneracy_push: s^" + std::to_string(l) + " undefined at level " + std::to_string(n));
    check_gen_level(g, n);
    if (g.kind == Gen::Kind::Config) {
        const int i = g.i, j = g.j;
        if (l == i - 1 || l == j - 1) return LinearCombo();
        if (l < i - 1) return LinearCombo(Term(Gen::config(i - 1, j - 1)));
        if (l < j - 1) return LinearCombo(Term(Gen::config(i, j - 1)));
        return LinearCombo(Term(Gen::config(i, j)));
    }
    const int k = g.k;
    if (k == l + 1) return LinearCombo();
    if (k < l + 1) return LinearCombo(Term(Gen::tangent(k)));
    return LinearCombo(Term(Gen::tangent(k - 1)));
}

LinearCombo coface_push(int l, const Gen& g, int n) {
    if (n < 1) throw Error("coface_push: level must be >= 1");
    if (l < 0 || l > n + 1) throw Error("coface_push: delta^" + std::to_string(l) + " undefined at level " + std::to_string(n));
    check_gen_level(g, n);
    LinearCombo out;
    if (g.kind == Gen::Kind::Config) {
        const int i = g.i, j = g.j;
        if (l < i) {
            out.add(Term(Gen::config(i + 1, j + 1)), 1);
        } else if (l == i) {
            out.add(Term(Gen::config(i, j + 1)), 1);
            out.add(Term(Gen::config(i + 1, j + 1)), 1);
        } else if (l < j) {
            out.add(Term(Gen::config(i, j + 1)), 1);
        } else if (l == j) {
            out.add(Term(Gen::config(i, j)), 1);
            out.add(Term(Gen::config(i, j + 1)), 1);
        } else {
            out.add(Term(Gen::config(i, j)), 1);
        }
        return out;
    }
    const int k = g.k;
    if (l < k) {
        out.add(Term(Gen::tangent(k + 1)), 1);
    } else if (l == k) {
        out.add(Term(Gen::config(k, k + 1)), 1);
        out.add(Term(Gen::tangent(k)), 1);
        out.add(Term(Gen::tangent(k + 1)), 1);
    } else {
        out.add(Term(Gen::tangent(k)), 1);
    }
    return out;
}

namespace {
LinearCombo push_gen(const SimplicialDirection& dir, const Gen& g) {
    return dir.kind == MapKind::Coface ? coface_push(dir.l, g, dir.source_level)
                                       : codegeneracy_push(dir.l, g, dir.source_level);
}

BracketExpr build_pushed(const SimplicialDirection& dir, const Term& t) {
    if (t.is_leaf()) return BracketExpr(push_gen(dir, t.gen()));
    return BracketExpr(build_pushed(dir, t.left()), build_pushed(dir, t.right()));
}
}  // namespace

LinearCombo push_through_bracket(const SimplicialDirection& dir, const Term& t) {
    if (t.is_leaf()) return push_gen(dir, t.gen());
    if (!t.config_only()) throw Error("push_through_bracket: Tangent generator inside a bracket in " + t.key());
    LinearCombo expanded = build_pushed(dir, t).expand();
    LinearCombo out;
    for (const auto& [term, c] : expanded.terms()) {
        if (disjoint_support_vanishes(term)) continue;
        out.add(term, c);
    }
    return out;
}

LinearCombo push_through_bracket(const SimplicialDirection& dir, const LinearCombo& c) {
    LinearCombo out;
    for (const auto& [t, k] : c.terms()) out += push_through_bracket(dir, t) * k;
    return out;
}

}  // namespace kss
