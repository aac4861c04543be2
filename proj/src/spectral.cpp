#include "kss/spectral.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace kss {

std::string E1Entry::describe() const {
    std::vector<std::string> parts;
    if (!free_basis.empty()) {
        parts.push_back(free_basis.size() == 1 ? "Z" : "Z^" + std::to_string(free_basis.size()));
    }
    for (const auto& s : other) {
        auto g = s.symbol.known();
        if (!g) {
            parts.push_back(s.symbol.str());
            continue;
        }
        if (g->is_trivial()) continue;
        parts.push_back(g->describe());
    }
    if (parts.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
    return os.str();
}

E1Entry e1_entry(int p, int q) {
    if (p < 0) throw Error("e1_entry: negative column");
    if (q < 2 && !(p == 0 || q < p)) throw Error("e1_entry: need q >= 2");
    E1Entry e;
    e.p = p;
    e.q = q;
    if (p == 0 || q < p) return e;
    std::vector<std::pair<Term, SphereSym>> raw;
    if (p == 1) {
        raw.emplace_back(Term(Gen::tangent(1)), SphereSym{q, 2});
    } else {
        std::vector<Gen> gens;
        for (int i = 1; i < p; ++i) gens.push_back(Gen::config(i, p));
        for (const Term& t : basic_products(gens, q - 1)) {
            // intersecting the codegeneracy kernels keeps exactly the products
            // using every generator of the level at least once
            if (t.multidegree().size() != gens.size()) continue;
            raw.emplace_back(t, SphereSym{q, t.weight() + 1});
        }
    }
    for (const auto& [t, sym] : raw) {
        e.summands.push_back({t, sym});
        auto g = sym.known();
        if (g && g->invariant_factors.empty() && g->free_rank() == 1) {
            e.free_basis.push_back(t);
        } else {
            e.other.push_back({t, sym});
            if (!g) e.fully_known = false;
        }
    }
    return e;
}

namespace {

// all bracket terms on the given leaves up to antisymmetry, keyed canonically
std::vector<Term> canonical_shapes(const std::vector<Term>& leaves) {
    if (leaves.empty()) return {};
    if (leaves.size() == 1) return {leaves[0]};
    std::map<std::string, Term> out;
    const std::size_t n = leaves.size();
    // split off a nonempty proper subset containing position 0
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & 1u) || mask == (1u << n) - 1) continue;
        std::vector<Term> a, b;
        for (std::size_t i = 0; i < n; ++i)
            ((mask >> i) & 1u ? a : b).push_back(leaves[i]);
        for (const Term& ta : canonical_shapes(a))
            for (const Term& tb : canonical_shapes(b)) {
                Term t = antisym_canonical(Term(ta, tb)).first;
                out.emplace(t.key(), t);
            }
    }
    std::vector<Term> v;
    v.reserve(out.size());
    for (const auto& [key, t] : out) v.push_back(t);
    return v;
}

// first indices of the x(.,p-1) leaves of a factor
std::set<int> first_indices(const Term& t, int p) {
    std::set<int> out;
    for (const auto& [key, mult] : t.multidegree()) {
        (void)mult;
        Gen probe = Gen::config(1, 2);
        bool found = false;
        for (int i = 1; i <= p - 2 && !found; ++i)
            if (Gen::config(i, p - 1).str() == key) {
                probe = Gen::config(i, p - 1);
                found = true;
            }
        if (!found) return {};
        out.insert(probe.i);
    }
    return out;
}

DsepElement fill_dsep(const Term& t, int p, int k) {
    return DsepElement{t, p, k, first_indices(t.left(), p), first_indices(t.right(), p)};
}

}  // namespace

std::optional<DsepElement> as_dsep(const Term& t, int p) {
    if (p < 4) return std::nullopt;
    if (t.is_leaf() || !t.config_only()) return std::nullopt;
    if (t.weight() != p - 1) return std::nullopt;
    // every leaf must be x(i,p-1) with 1 <= i <= p-2, each side multilinear
    auto side_ok = [p](const Term& side) {
        for (const auto& [key, mult] : side.multidegree()) {
            if (mult != 1) return false;
            bool found = false;
            for (int i = 1; i <= p - 2; ++i)
                if (Gen::config(i, p - 1).str() == key) found = true;
            if (!found) return false;
        }
        return true;
    };
    if (!side_ok(t.left()) || !side_ok(t.right())) return std::nullopt;
    std::set<int> li = first_indices(t.left(), p), ri = first_indices(t.right(), p);
    std::set<int> common, uni;
    std::set_intersection(li.begin(), li.end(), ri.begin(), ri.end(), std::inserter(common, common.begin()));
    std::set_union(li.begin(), li.end(), ri.begin(), ri.end(), std::inserter(uni, uni.begin()));
    if (common.size() != 1) return std::nullopt;
    if (static_cast<int>(uni.size()) != p - 2) return std::nullopt;
    return fill_dsep(t, p, *common.begin());
}

std::vector<DsepElement> dsep_generators(int p) {
    if (p < 4) throw Error("dsep_generators: defined for p >= 4");
    std::map<std::string, DsepElement> out;
    for (int k = 1; k <= p - 2; ++k) {
        std::vector<int> rest;
        for (int i = 1; i <= p - 2; ++i)
            if (i != k) rest.push_back(i);
        const std::size_t r = rest.size();
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            std::vector<Term> lv{Term(Gen::config(k, p - 1))}, rv{Term(Gen::config(k, p - 1))};
            for (std::size_t i = 0; i < r; ++i)
                ((mask >> i) & 1u ? lv : rv).push_back(Term(Gen::config(rest[i], p - 1)));
            for (const Term& c1 : canonical_shapes(lv))
                for (const Term& c2 : canonical_shapes(rv)) {
                    Term t = antisym_canonical(Term(c1, c2)).first;
                    out.emplace(t.key(), fill_dsep(t, p, k));
                }
        }
    }
    std::vector<DsepElement> v;
    v.reserve(out.size());
    for (const auto& [key, e] : out) v.push_back(e);
    return v;
}

LinearCombo d1_bruteforce(const LinearCombo& w, int p) {
    if (p < 1) throw Error("d1_bruteforce: need p >= 1");
    LinearCombo out;
    for (int l = 0; l <= p; ++l) {
        SimplicialDirection dir{MapKind::Coface, l, p - 1};
        out += push_through_bracket(dir, w) * Int(l % 2 == 0 ? 1 : -1);
    }
    return out;
}

namespace {

Term relabel_leaves(const Term& t, const std::function<Gen(const Gen&)>& f) {
    if (t.is_leaf()) return Term(f(t.gen()));
    return Term(relabel_leaves(t.left(), f), relabel_leaves(t.right(), f));
}

}  // namespace

LinearCombo d1_simplified(const DsepElement& w) {
    const int p = w.p, k = w.k;
    if (as_dsep(w.term, p).has_value() == false) throw Error("d1_simplified: not a separated generator: " + w.term.key());
    // doubling strand k: the copy of x(k,p-1) goes to x(k,p) on one side and
    // x(k+1,p) on the other; the remaining first indices shift around k
    auto shift = [k](int i) { return i < k ? i : i + 1; };
    auto low = [&](const Gen& g) { return Gen::config(g.i == k ? k : shift(g.i), p); };
    auto high = [&](const Gen& g) { return Gen::config(g.i == k ? k + 1 : shift(g.i), p); };
    // doubling strand p-1: one side keeps level p-1 labels, the other moves
    // its second index to p
    auto lift = [&](const Gen& g) { return Gen::config(g.i, p); };

    Term c1 = w.term.left(), c2 = w.term.right();
    LinearCombo out;
    const Int sk(k % 2 == 0 ? 1 : -1);
    out.add(Term(relabel_leaves(c1, low), relabel_leaves(c2, high)), sk);
    out.add(Term(relabel_leaves(c1, high), relabel_leaves(c2, low)), sk);
    const Int sp((p - 1) % 2 == 0 ? 1 : -1);
    out.add(Term(c1, relabel_leaves(c2, lift)), sp);
    out.add(Term(relabel_leaves(c1, lift), c2), sp);
    return out;
}

SuperdiagonalEntry superdiagonal_entry(int p) {
    if (p < 4) throw Error("superdiagonal_entry: defined for p >= 4");
    SuperdiagonalEntry e;
    e.p = p;
    std::vector<Gen> gens;
    for (int i = 1; i <= p - 2; ++i) gens.push_back(Gen::config(i, p - 1));
    auto cap2 = [](const Term& t) {
        for (const auto& [g, m] : t.multidegree())
            if (m > 2) return false;
        return true;
    };
    for (const Term& t : basic_products(gens, p - 1, cap2))
        if (t.weight() == p - 1 && t.multidegree().size() == gens.size()) e.f_basis.push_back(t);
    e.t_basis = multilinear_basic_products(gens);
    return e;
}

namespace {

// Splits the two copies of x(k,p-1) across the top bracket using
// antisymmetry and Jacobi rotations; returns two-factor terms, one copy of
// the repeated generator on each side.
LinearCombo split_repeat(const Term& t, const std::string& rep_key) {
    auto count_rep = [&rep_key](const Term& s) {
        auto md = s.multidegree();
        auto it = md.find(rep_key);
        return it == md.end() ? 0 : it->second;
    };
    if (t.is_leaf()) throw Error("split_repeat: leaf input");
    Term u = t.left(), v = t.right();
    const int cl = count_rep(u), cr = count_rep(v);
    if (cl == 1 && cr == 1) return LinearCombo(t);
    LinearCombo out;
    if (cl == 2) {
        // [(split of u), v] -> rotate v inside
        const LinearCombo split = split_repeat(u, rep_key);
        for (const auto& [s, c] : split.terms()) {
            Term a = s.left(), b = s.right();
            // [[a,b],v] = ss * [v,[a,b]], then the Jacobi rewrite splits it
            const int ss = swap_sign(s.weight(), v.weight());
            const int wu = v.weight(), wc = a.weight(), wd = b.weight();
            const int e1 = wu * (wc + 1) + wd * (wu + 1);
            const int e2 = wc * (wd + 1) + wd * (wu + 1);
            out.add(Term(a, Term(b, v)), c * ss * (e1 % 2 == 0 ? -1 : 1));
            out.add(Term(b, Term(v, a)), c * ss * (e2 % 2 == 0 ? -1 : 1));
        }
        return out;
    }
    if (cr == 2) {
        const LinearCombo split = split_repeat(v, rep_key);
        for (const auto& [s, c] : split.terms()) {
            Term a = s.left(), b = s.right();
            const int wu = u.weight(), wc = a.weight(), wd = b.weight();
            const int e1 = wu * (wc + 1) + wd * (wu + 1);
            const int e2 = wc * (wd + 1) + wd * (wu + 1);
            out.add(Term(a, Term(b, u)), c * (e1 % 2 == 0 ? -1 : 1));
            out.add(Term(b, Term(u, a)), c * (e2 % 2 == 0 ? -1 : 1));
        }
        return out;
    }
    throw Error("split_repeat: repeated generator not split 2+0 or 1+1 in " + t.key());
}

}  // namespace

LinearCombo reduce_to_dsep(const Term& t, int p) {
    if (p < 4) throw Error("reduce_to_dsep: defined for p >= 4");
    if (t.weight() != p - 1 || !t.config_only())
        throw Error("reduce_to_dsep: expected a Config bracket of weight " + std::to_string(p - 1));
    std::string rep_key;
    int singles = 0;
    for (const auto& [key, mult] : t.multidegree()) {
        bool declared = false;
        for (int i = 1; i <= p - 2; ++i)
            if (Gen::config(i, p - 1).str() == key) declared = true;
        if (!declared) throw Error("reduce_to_dsep: generator " + key + " is not x(i," + std::to_string(p - 1) + ")");
        if (mult == 1) {
            ++singles;
        } else if (mult == 2) {
            if (!rep_key.empty()) throw Error("reduce_to_dsep: more than one repeated generator in " + t.key());
            rep_key = key;
        } else {
            throw Error("reduce_to_dsep: generator " + key + " used " + std::to_string(mult) + " times");
        }
    }
    if (rep_key.empty() || singles != p - 3)
        throw Error("reduce_to_dsep: expected one generator twice and the rest once in " + t.key());
    LinearCombo out;
    const LinearCombo split = split_repeat(t, rep_key);
    for (const auto& [s, c] : split.terms()) {
        auto [canon, sign] = antisym_canonical(s);
        if (!as_dsep(canon, p)) throw Error("reduce_to_dsep: produced a non-separated term " + canon.key());
        out.add(canon, c * sign);
    }
    return out;
}

LinearCombo reduce_to_dsep(const LinearCombo& c, int p) {
    LinearCombo out;
    for (const auto& [t, k] : c.terms()) out += reduce_to_dsep(t, p) * k;
    return out;
}

std::vector<LinearCombo> separated_jacobi_instances(int p) {
    std::vector<LinearCombo> out;
    // Jacobi rotation at one internal node below the top: the three-term
    // combination vanishes and each term stays separated.
    std::function<void(const Term&, const std::function<Term(const Term&)>&, int, std::vector<LinearCombo>&)> walk =
        [&](const Term& node, const std::function<Term(const Term&)>& rebuild, int depth,
            std::vector<LinearCombo>& acc) {
            if (node.is_leaf()) return;
            Term u = node.left(), v = node.right();
            if (depth > 0) {
                auto emit = [&](const Term& uu, const Term& cc, const Term& dd, int pre_sign) {
                    const int lu = uu.weight() + 1, lc = cc.weight() + 1, ld = dd.weight() + 1;
                    const int sa = ((ld - 1) * lu) % 2 == 0 ? 1 : -1;
                    const int sb = ((lu - 1) * lc) % 2 == 0 ? 1 : -1;
                    const int sc = ((lc - 1) * ld) % 2 == 0 ? 1 : -1;
                    LinearCombo rel;
                    auto put = [&](const Term& local, int s) {
                        auto [canon, sg] = antisym_canonical(rebuild(local));
                        if (!as_dsep(canon, p)) throw Error("separated_jacobi_instances: left the separated span");
                        rel.add(canon, Int(s * sg * pre_sign));
                    };
                    put(Term(uu, Term(cc, dd)), sa);
                    put(Term(cc, Term(dd, uu)), sb);
                    put(Term(dd, Term(uu, cc)), sc);
                    if (!rel.is_zero()) acc.push_back(rel);
                };
                if (!v.is_leaf()) emit(u, v.left(), v.right(), 1);
                if (!u.is_leaf()) emit(v, u.left(), u.right(), swap_sign(u.weight(), v.weight()));
            }
            walk(u, [&rebuild, v](const Term& s) { return rebuild(Term(s, v)); }, depth + 1, acc);
            walk(v, [&rebuild, u](const Term& s) { return rebuild(Term(u, s)); }, depth + 1, acc);
        };
    for (const DsepElement& w : dsep_generators(p)) {
        walk(w.term, [](const Term& s) { return s; }, 0, out);
    }
    // deduplicate identical relation vectors
    std::map<std::string, LinearCombo> dedup;
    for (const auto& r : out) dedup.emplace(r.str(), r);
    std::vector<LinearCombo> v;
    v.reserve(dedup.size());
    for (const auto& [key, r] : dedup) v.push_back(r);
    return v;
}

}  // namespace kss
