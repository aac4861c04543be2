#include "kss/utg.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kss {

namespace {

constexpr int kUnset = INT_MIN;

// recursive-descent parser for the canonical encoding; shared by decode and
// the enumerators, which assemble graphs from expression strings
struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    int next_node = 0;
    std::vector<std::pair<int, int>> edges;
    int at_end = kUnset;  // endpoint where '@' (the cut mark) sat
    std::set<int> labels;

    explicit ExprParser(const std::string& text, int first_node = 0)
        : s(text), next_node(first_node) {}

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c)
            throw Error("malformed graph encoding: " + s);
        ++pos;
    }

    // parses one expression and connects its root to the parent endpoint
    void expr(int parent) {
        if (pos >= s.size()) throw Error("malformed graph encoding: " + s);
        if (s[pos] == '(') {
            ++pos;
            const int n = next_node++;
            edges.emplace_back(parent, slot_end(n, 0));
            expr(slot_end(n, 1));
            expect(',');
            expr(slot_end(n, 2));
            expect(')');
        } else if (s[pos] == '@') {
            ++pos;
            if (at_end != kUnset) throw Error("malformed graph encoding: " + s);
            at_end = parent;
        } else {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw Error("malformed graph encoding: " + s);
            const int label = std::stoi(s.substr(start, pos - start));
            if (label < 1 || !labels.insert(label).second)
                throw Error("malformed graph encoding: " + s);
            edges.emplace_back(parent, leaf_end(label));
        }
    }
};

}  // namespace

Utg::Utg(int leaves, int nodes, const std::vector<std::pair<int, int>>& edges)
    : leaves_(leaves), nodes_(nodes) {
    const bool tree = nodes == leaves - 2 && leaves >= 2;
    const bool oneloop = nodes == leaves && nodes >= 2;
    if (!tree && !oneloop)
        throw Error("a unitrivalent graph has leaves-2 (tree) or leaves (one-loop) trivalent nodes");
    const std::size_t edge_count = static_cast<std::size_t>(leaves + 3 * nodes) / 2;
    if (edges.size() != edge_count)
        throw Error("wrong number of edges for a unitrivalent graph");

    leaf_opp_.assign(leaves_, kUnset);
    node_opp_.assign(nodes_, {kUnset, kUnset, kUnset});
    auto slot_ref = [&](int e) -> int& {
        if (is_leaf_end(e)) {
            const int label = end_label(e);
            if (label < 1 || label > leaves_) throw Error("leaf label out of range");
            return leaf_opp_[label - 1];
        }
        if (e >= 3 * nodes_) throw Error("node slot out of range");
        return node_opp_[end_node(e)][end_slot(e)];
    };
    for (const auto& [a, b] : edges) {
        if (a == b) throw Error("degenerate edge");
        if (!is_leaf_end(a) && !is_leaf_end(b) && end_node(a) == end_node(b))
            throw Error("self-loops are not supported");
        int& ra = slot_ref(a);
        int& rb = slot_ref(b);
        if (ra != kUnset || rb != kUnset) throw Error("endpoint used twice");
        ra = b;
        rb = a;
    }
    for (int l = 0; l < leaves_; ++l)
        if (leaf_opp_[l] == kUnset) throw Error("leaf left unattached");
    for (int n = 0; n < nodes_; ++n)
        for (int s = 0; s < 3; ++s)
            if (node_opp_[n][s] == kUnset) throw Error("node slot left unattached");

    // connectivity over vertices: leaves 0..L-1, trivalent nodes L..L+N-1
    const int vcount = leaves_ + nodes_;
    auto vid = [&](int e) { return is_leaf_end(e) ? end_label(e) - 1 : leaves_ + end_node(e); };
    std::vector<char> seen(vcount, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        auto visit = [&](int opp) {
            const int w = vid(opp);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        };
        if (v < leaves_) {
            visit(leaf_opp_[v]);
        } else {
            for (int s = 0; s < 3; ++s) visit(node_opp_[v - leaves_][s]);
        }
    }
    if (reached != vcount) throw Error("unitrivalent graph is not connected");

    compute_cycle();
    compute_key();
}

int Utg::opposite(int end) const {
    if (is_leaf_end(end)) {
        const int label = end_label(end);
        if (label < 1 || label > leaves_) throw Error("leaf label out of range");
        return leaf_opp_[label - 1];
    }
    if (end >= 3 * nodes_) throw Error("node slot out of range");
    return node_opp_[end_node(end)][end_slot(end)];
}

int Utg::leaf_node(int label) const {
    const int o = opposite(leaf_end(label));
    return is_leaf_end(o) ? -1 : end_node(o);
}

bool Utg::node_on_cycle(int node) const {
    if (node < 0 || node >= nodes_) throw Error("node index out of range");
    return cycle_node_[node];
}

std::vector<std::pair<int, int>> Utg::edges() const {
    std::vector<std::pair<int, int>> out;
    auto take = [&](int e) {
        const int o = opposite(e);
        if (e < o) out.emplace_back(e, o);
    };
    for (int l = 1; l <= leaves_; ++l) take(leaf_end(l));
    for (int n = 0; n < nodes_; ++n)
        for (int s = 0; s < 3; ++s) take(slot_end(n, s));
    std::sort(out.begin(), out.end());
    return out;
}

void Utg::compute_cycle() {
    cycle_node_.assign(nodes_, false);
    if (!is_oneloop()) return;
    // strip degree-one vertices until only the cycle remains
    const int vcount = leaves_ + nodes_;
    auto vid = [&](int e) { return is_leaf_end(e) ? end_label(e) - 1 : leaves_ + end_node(e); };
    std::vector<std::vector<int>> adj(vcount);
    for (const auto& [a, b] : edges()) {
        adj[vid(a)].push_back(vid(b));
        adj[vid(b)].push_back(vid(a));
    }
    std::vector<int> deg(vcount);
    std::vector<int> stack;
    for (int v = 0; v < vcount; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] <= 1) stack.push_back(v);
    }
    std::vector<char> removed(vcount, 0);
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (removed[v]) continue;
        removed[v] = 1;
        for (int w : adj[v])
            if (!removed[w] && --deg[w] <= 1) stack.push_back(w);
    }
    for (int n = 0; n < nodes_; ++n) cycle_node_[n] = !removed[leaves_ + n];
}

std::string Utg::encode_from(int node, int in_slot, int banned_end) const {
    std::string out = "(";
    for (int k = 1; k <= 2; ++k) {
        const int child = slot_end(node, (in_slot + k) % 3);
        if (child == banned_end) {
            out += '@';
        } else {
            const int o = opposite(child);
            if (is_leaf_end(o))
                out += std::to_string(end_label(o));
            else
                out += encode_from(end_node(o), end_slot(o), banned_end);
        }
        out += (k == 1 ? ',' : ')');
    }
    return out;
}

void Utg::compute_key() {
    if (is_tree()) {
        const int o = opposite(leaf_end(leaves_));
        if (is_leaf_end(o)) {
            key_ = "t:" + std::to_string(end_label(o));
        } else {
            key_ = "t:" + encode_from(end_node(o), end_slot(o), kUnset);
        }
        return;
    }
    // cut each directed cycle edge in turn and keep the smallest tree encoding
    std::string best;
    for (int n = 0; n < nodes_; ++n) {
        if (!cycle_node_[n]) continue;
        for (int s = 0; s < 3; ++s) {
            const int tail = slot_end(n, s);
            const int head = opposite(tail);
            if (is_leaf_end(head) || !cycle_node_[end_node(head)]) continue;
            std::string candidate = encode_from(n, s, head);
            if (best.empty() || candidate < best) best = std::move(candidate);
        }
    }
    key_ = "l:" + best;
}

Utg Utg::decode(const std::string& key) {
    if (key.size() < 3 || key[1] != ':' || (key[0] != 't' && key[0] != 'l'))
        throw Error("malformed graph encoding: " + key);
    const bool tree = key[0] == 't';
    const std::string body = key.substr(2);
    if (tree && body.find('(') == std::string::npos) {
        // a bare label: the two-leaf tree
        if (body != "1") throw Error("malformed graph encoding: " + key);
        return Utg(2, 0, {{leaf_end(1), leaf_end(2)}});
    }
    ExprParser parser(body);
    if (body.empty() || body[0] != '(') throw Error("malformed graph encoding: " + key);
    parser.pos = 1;
    const int root = parser.next_node++;
    parser.expr(slot_end(root, 1));
    parser.expect(',');
    parser.expr(slot_end(root, 2));
    parser.expect(')');
    if (parser.pos != body.size()) throw Error("malformed graph encoding: " + key);
    const int max_label = parser.labels.empty() ? 0 : *parser.labels.rbegin();
    if (tree) {
        if (parser.at_end != kUnset) throw Error("malformed graph encoding: " + key);
        parser.edges.emplace_back(slot_end(root, 0), leaf_end(max_label + 1));
        return Utg(max_label + 1, parser.next_node, parser.edges);
    }
    if (parser.at_end == kUnset) throw Error("malformed graph encoding: " + key);
    parser.edges.emplace_back(slot_end(root, 0), parser.at_end);
    return Utg(max_label, parser.next_node, parser.edges);
}

std::string Utg::dot(const std::string& name, const std::vector<int>& marked_nodes) const {
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    out << "  rankdir=BT;\n";
    out << "  { rank=same;";
    for (int l = 1; l <= leaves_; ++l) out << " leaf" << l << ";";
    out << " }\n";
    for (int l = 1; l <= leaves_; ++l)
        out << "  leaf" << l << " [shape=plaintext, label=\"" << l << "\"];\n";
    for (int n = 0; n < nodes_; ++n) {
        const bool marked =
            std::find(marked_nodes.begin(), marked_nodes.end(), n) != marked_nodes.end();
        out << "  node" << n << " [shape=" << (marked ? "circle, style=filled, label=\"\""
                                                      : "point, label=\"\"")
            << "];\n";
    }
    // invisible chain keeps the leaves in label order
    for (int l = 1; l < leaves_; ++l)
        out << "  leaf" << l << " -- leaf" << l + 1 << " [style=invis];\n";
    auto vname = [&](int e) {
        std::ostringstream v;
        if (is_leaf_end(e))
            v << "leaf" << end_label(e);
        else
            v << "node" << end_node(e);
        return v.str();
    };
    for (const auto& [a, b] : edges())
        out << "  " << vname(a) << " -- " << vname(b) << ";\n";
    out << "}\n";
    return out.str();
}

Utg Utg::flipped(int node) const {
    if (node < 0 || node >= nodes_) throw Error("node index out of range");
    auto remap = [&](int e) {
        if (!is_leaf_end(e) && end_node(e) == node) {
            if (end_slot(e) == 1) return slot_end(node, 2);
            if (end_slot(e) == 2) return slot_end(node, 1);
        }
        return e;
    };
    std::vector<std::pair<int, int>> es;
    for (const auto& [a, b] : edges()) es.emplace_back(remap(a), remap(b));
    return Utg(leaves_, nodes_, es);
}

std::pair<Utg, Utg> Utg::ihx_at(int end) const {
    const int a = end;
    if (is_leaf_end(a)) throw Error("IHX needs an edge between two trivalent nodes");
    const int b = opposite(a);
    if (is_leaf_end(b)) throw Error("IHX needs an edge between two trivalent nodes");
    const int v = end_node(a);
    const int w = end_node(b);
    const int vs1 = slot_end(v, (end_slot(a) + 1) % 3);
    const int vs2 = slot_end(v, (end_slot(a) + 2) % 3);
    const int wt1 = slot_end(w, (end_slot(b) + 1) % 3);
    const int wt2 = slot_end(w, (end_slot(b) + 2) % 3);
    auto rewire = [&](const std::map<int, int>& m) {
        std::vector<std::pair<int, int>> es;
        for (const auto& [x, y] : edges()) {
            auto mx = m.find(x);
            auto my = m.find(y);
            es.emplace_back(mx == m.end() ? x : mx->second, my == m.end() ? y : my->second);
        }
        return Utg(leaves_, nodes_, es);
    };
    // with cyclic orders (e, a1, a2) at v and (e, c1, c2) at w, the two
    // rewirings read (e, a2, c1), (e, c2, a1) and (e, a2, c2), (e, c1, a1)
    const Utg first = rewire({{vs1, wt2}, {vs2, vs1}, {wt1, vs2}, {wt2, wt1}});
    const Utg second = rewire({{vs1, wt2}, {vs2, vs1}, {wt2, vs2}});
    return {first, second};
}

std::pair<Utg, Utg> Utg::stu_at(int leaf_label) const {
    if (!is_oneloop())
        throw Error("STU expansion applies to one-loop graphs only");
    if (leaf_label < 1 || leaf_label > leaves_) throw Error("leaf label out of range");
    const int le = leaf_end(leaf_label);
    const int a = opposite(le);
    const int v = end_node(a);
    if (!cycle_node_[v])
        throw Error("STU at a leaf away from the cycle would disconnect the graph");
    const int e1 = slot_end(v, (end_slot(a) + 1) % 3);
    const int e2 = slot_end(v, (end_slot(a) + 2) % 3);
    auto build = [&](bool first) {
        // first variant: new leaf n at the second edge, n+1 at the first
        std::vector<std::pair<int, int>> es;
        auto remap = [&](int e) {
            if (is_leaf_end(e)) {
                const int label = end_label(e);
                return leaf_end(label > leaf_label ? label + 1 : label);
            }
            if (e == e1) return leaf_end(first ? leaf_label + 1 : leaf_label);
            if (e == e2) return leaf_end(first ? leaf_label : leaf_label + 1);
            return end_node(e) > v ? slot_end(end_node(e) - 1, end_slot(e)) : e;
        };
        for (const auto& [x, y] : edges()) {
            if ((x == le && y == a) || (x == a && y == le)) continue;
            es.emplace_back(remap(x), remap(y));
        }
        return Utg(leaves_ + 1, nodes_ - 1, es);
    };
    return {build(true), build(false)};
}

std::vector<Utg> enumerate_trees(int degree) {
    if (degree < 1) throw Error("tree degree must be positive");
    std::vector<Utg> out;
    if (degree == 1) {
        out.push_back(Utg::decode("t:1"));
        return out;
    }
    // plane binary parenthesizations of each permutation of 1..degree, read as
    // canonical keys rooted at the extra highest leaf
    std::vector<int> labels(degree);
    std::iota(labels.begin(), labels.end(), 1);
    std::function<std::vector<std::string>(int, int)> combine =
        [&](int lo, int hi) -> std::vector<std::string> {
        if (lo == hi) return {std::to_string(labels[lo])};
        std::vector<std::string> all;
        for (int mid = lo; mid < hi; ++mid) {
            const auto left = combine(lo, mid);
            const auto right = combine(mid + 1, hi);
            for (const auto& l : left)
                for (const auto& r : right) all.push_back("(" + l + "," + r + ")");
        }
        return all;
    };
    std::set<std::string> keys;
    do {
        for (const auto& body : combine(0, degree - 1)) keys.insert("t:" + body);
    } while (std::next_permutation(labels.begin(), labels.end()));
    out.reserve(keys.size());
    for (const auto& k : keys) {
        Utg g = Utg::decode(k);
        if (g.key() != k) throw Error("tree enumeration produced a non-canonical key");
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Utg> enumerate_oneloop(int degree) {
    if (degree < 2) throw Error("one-loop enumeration needs degree at least two");
    const int d = degree;
    std::map<std::string, Utg> found;

    for (int c = 2; c <= d; ++c) {
        // assign each label to one of the c cycle positions, none left empty
        std::vector<int> assign(d, 0);
        while (true) {
            std::vector<std::vector<int>> branch_labels(c);
            for (int l = 0; l < d; ++l) branch_labels[assign[l]].push_back(l + 1);
            bool ok = true;
            for (const auto& bl : branch_labels) ok = ok && !bl.empty();
            if (ok) {
                // all planted plane trees per branch, as expression strings
                std::vector<std::vector<std::string>> branch_exprs(c);
                for (int i = 0; i < c; ++i) {
                    std::vector<int> perm = branch_labels[i];
                    std::sort(perm.begin(), perm.end());
                    std::set<std::string> exprs;
                    std::function<std::vector<std::string>(const std::vector<int>&, int, int)>
                        combine = [&](const std::vector<int>& lab, int lo,
                                      int hi) -> std::vector<std::string> {
                        if (lo == hi) return {std::to_string(lab[lo])};
                        std::vector<std::string> all;
                        for (int mid = lo; mid < hi; ++mid)
                            for (const auto& l : combine(lab, lo, mid))
                                for (const auto& r : combine(lab, mid + 1, hi))
                                    all.push_back("(" + l + "," + r + ")");
                        return all;
                    };
                    do {
                        for (const auto& e : combine(perm, 0, static_cast<int>(perm.size()) - 1))
                            exprs.insert(e);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    branch_exprs[i].assign(exprs.begin(), exprs.end());
                }
                // pick one expression per branch and one orientation per node
                std::vector<std::size_t> pick(c, 0);
                while (true) {
                    for (int orient = 0; orient < (1 << c); ++orient) {
                        std::vector<std::pair<int, int>> edges;
                        int next_node = c;
                        bool parsed = true;
                        for (int i = 0; i < c && parsed; ++i) {
                            const int next_slot = (orient >> i & 1) ? 2 : 1;
                            const int branch_slot = (orient >> i & 1) ? 1 : 2;
                            edges.emplace_back(slot_end(i, next_slot),
                                               slot_end((i + 1) % c, 0));
                            const std::string& body = branch_exprs[i][pick[i]];
                            ExprParser parser(body, next_node);
                            parser.expr(slot_end(i, branch_slot));
                            if (parser.pos != body.size()) parsed = false;
                            next_node = parser.next_node;
                            edges.insert(edges.end(), parser.edges.begin(), parser.edges.end());
                        }
                        if (!parsed) continue;
                        Utg g(d, next_node, edges);
                        found.emplace(g.key(), std::move(g));
                    }
                    int i = 0;
                    while (i < c && ++pick[i] == branch_exprs[i].size()) pick[i++] = 0;
                    if (i == c) break;
                }
            }
            int l = 0;
            while (l < d && ++assign[l] == c) assign[l++] = 0;
            if (l == d) break;
        }
    }
    std::vector<Utg> out;
    out.reserve(found.size());
    for (auto& [k, g] : found) out.push_back(std::move(g));
    return out;
}

std::string MarkedUtg::key() const {
    return graph.key() + "|m" + std::to_string(i) + "," + std::to_string(j);
}

std::optional<MarkedUtg> as_marked(const Utg& g, int i, int j) {
    if (!g.is_oneloop()) return std::nullopt;
    if (i < 1 || i >= j || j != g.leaf_count()) return std::nullopt;
    const int vi = g.leaf_node(i);
    const int vj = g.leaf_node(j);
    if (vi < 0 || vj < 0 || !g.node_on_cycle(vi) || !g.node_on_cycle(vj)) return std::nullopt;
    return MarkedUtg{g, i, j};
}

std::vector<MarkedUtg> enumerate_marked(int j) {
    if (j < 3) throw Error("marked graphs need degree at least three");
    const auto loops = enumerate_oneloop(j);
    std::vector<MarkedUtg> out;
    for (int i = 1; i < j; ++i)
        for (const auto& g : loops)
            if (auto m = as_marked(g, i, j)) out.push_back(std::move(*m));
    return out;
}

namespace {

SparseVec gather(const std::map<int, Int>& acc) {
    SparseVec row;
    for (const auto& [col, coeff] : acc)
        if (coeff != 0) row.emplace_back(col, coeff);
    return row;
}

template <typename Gen>
std::map<std::string, int> index_of(const std::vector<Gen>& gens) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!index.emplace(gens[i].key(), static_cast<int>(i)).second)
            throw Error("duplicate generator key");
    }
    return index;
}

int lookup(const std::map<std::string, int>& index, const std::string& key) {
    auto it = index.find(key);
    if (it == index.end())
        throw Error("relation output is not in the generator list: " + key);
    return it->second;
}

// every edge joining two trivalent nodes, one endpoint each
std::vector<int> internal_edge_ends(const Utg& g) {
    std::vector<int> ends;
    for (const auto& [a, b] : g.edges())
        if (!is_leaf_end(a) && !is_leaf_end(b)) ends.push_back(a);
    return ends;
}

}  // namespace

std::vector<SparseVec> tree_relation_rows(const std::vector<Utg>& gens, RelKind kind) {
    if (kind == RelKind::IHXsep)
        throw Error("the separated IHX relation needs marked generators");
    const auto index = index_of(gens);
    std::vector<SparseVec> rows;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Utg& g = gens[gi];
        if (kind == RelKind::AS) {
            for (int n = 0; n < g.node_count(); ++n) {
                std::map<int, Int> acc;
                acc[static_cast<int>(gi)] += 1;
                acc[lookup(index, g.flipped(n).key())] += 1;
                rows.push_back(gather(acc));
            }
        } else {
            for (int end : internal_edge_ends(g)) {
                const auto [first, second] = g.ihx_at(end);
                std::map<int, Int> acc;
                acc[static_cast<int>(gi)] += 1;
                acc[lookup(index, first.key())] -= 1;
                acc[lookup(index, second.key())] += 1;
                SparseVec row = gather(acc);
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<SparseVec> marked_relation_rows(const std::vector<MarkedUtg>& gens, RelKind kind) {
    if (kind == RelKind::IHX)
        throw Error("marked generators use the separated IHX relation");
    const auto index = index_of(gens);
    std::vector<SparseVec> rows;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const MarkedUtg& g = gens[gi];
        if (kind == RelKind::AS) {
            for (int n = 0; n < g.graph.node_count(); ++n) {
                auto flipped = as_marked(g.graph.flipped(n), g.i, g.j);
                if (!flipped) throw Error("orientation flip left the marked class");
                std::map<int, Int> acc;
                acc[static_cast<int>(gi)] += 1;
                acc[lookup(index, flipped->key())] += 1;
                rows.push_back(gather(acc));
            }
        } else {
            const int vi = g.mark_i_node();
            const int vj = g.mark_j_node();
            for (int end : internal_edge_ends(g.graph)) {
                const int v = end_node(end);
                const int w = end_node(g.graph.opposite(end));
                if (v == vi || v == vj || w == vi || w == vj) continue;
                const auto [first, second] = g.graph.ihx_at(end);
                auto m1 = as_marked(first, g.i, g.j);
                auto m2 = as_marked(second, g.i, g.j);
                if (!m1 || !m2) throw Error("separated IHX left the marked class");
                std::map<int, Int> acc;
                acc[static_cast<int>(gi)] += 1;
                acc[lookup(index, m1->key())] -= 1;
                acc[lookup(index, m2->key())] += 1;
                SparseVec row = gather(acc);
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::vector<SparseVec> stu2_rows(const std::vector<Utg>& oneloop_gens,
                                 const std::vector<Utg>& tree_gens) {
    const auto index = index_of(tree_gens);
    std::vector<SparseVec> rows;
    for (const Utg& g : oneloop_gens) {
        std::vector<int> usable;
        for (int l = 1; l <= g.leaf_count(); ++l) {
            const int v = g.leaf_node(l);
            if (v >= 0 && g.node_on_cycle(v)) usable.push_back(l);
        }
        for (std::size_t ai = 0; ai < usable.size(); ++ai) {
            for (std::size_t bi = ai + 1; bi < usable.size(); ++bi) {
                const auto [a1, a2] = g.stu_at(usable[ai]);
                const auto [b1, b2] = g.stu_at(usable[bi]);
                std::map<int, Int> acc;
                acc[lookup(index, a1.key())] += 1;
                acc[lookup(index, a2.key())] -= 1;
                acc[lookup(index, b1.key())] -= 1;
                acc[lookup(index, b2.key())] += 1;
                SparseVec row = gather(acc);
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

GroupPresentation quotient_group(std::size_t generator_count,
                                 const std::vector<std::vector<SparseVec>>& row_blocks) {
    std::vector<SparseVec> rows;
    for (const auto& block : row_blocks)
        rows.insert(rows.end(), block.begin(), block.end());
    return cokernel_of_rows(generator_count, rows);
}

}  // namespace kss
