#include "kss/bracket.hpp"

#include <sstream>

namespace kss {

Gen Gen::config(int i, int j) {
    if (i >= j) throw Error("Gen::config requires i < j, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (i < 1) throw Error("Gen::config indices must be positive");
    Gen g;
    g.kind = Kind::Config;
    g.i = i;
    g.j = j;
    return g;
}

Gen Gen::tangent(int k) {
    if (k < 1) throw Error("Gen::tangent index must be positive");
    Gen g;
    g.kind = Kind::Tangent;
    g.k = k;
    return g;
}

std::string Gen::str() const {
    if (kind == Kind::Config) return "x(" + std::to_string(i) + "," + std::to_string(j) + ")";
    return "y(" + std::to_string(k) + ")";
}

std::set<int> Gen::support() const {
    if (kind == Kind::Config) return {i, j};
    return {k};
}

bool operator==(const Gen& a, const Gen& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Gen::Kind::Config) return a.i == b.i && a.j == b.j;
    return a.k == b.k;
}

bool operator<(const Gen& a, const Gen& b) {
    if (a.kind != b.kind) return a.kind == Gen::Kind::Config;
    if (a.kind == Gen::Kind::Config) {
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }
    return a.k < b.k;
}

struct Term::Node {
    bool leaf = true;
    Gen gen;
    std::shared_ptr<const Node> left, right;
    int weight = 1;
    std::set<int> support;
    std::string key;
    bool config_only = true;
};

Term::Term(const Gen& g) {
    auto n = std::make_shared<Node>();
    n->leaf = true;
    n->gen = g;
    n->weight = 1;
    n->support = g.support();
    n->key = g.str();
    n->config_only = (g.kind == Gen::Kind::Config);
    n_ = std::move(n);
}

Term::Term(const Term& left, const Term& right) {
    auto n = std::make_shared<Node>();
    n->leaf = false;
    n->left = left.n_;
    n->right = right.n_;
    n->weight = left.n_->weight + right.n_->weight;
    n->support = left.n_->support;
    n->support.insert(right.n_->support.begin(), right.n_->support.end());
    n->key = "[" + left.n_->key + "," + right.n_->key + "]";
    n->config_only = left.n_->config_only && right.n_->config_only;
    n_ = std::move(n);
}

bool Term::is_leaf() const { return n_->leaf; }

const Gen& Term::gen() const {
    if (!n_->leaf) throw Error("Term::gen called on a bracket node");
    return n_->gen;
}

Term Term::left() const {
    if (n_->leaf) throw Error("Term::left called on a leaf");
    return Term(n_->left);
}

Term Term::right() const {
    if (n_->leaf) throw Error("Term::right called on a leaf");
    return Term(n_->right);
}

int Term::weight() const { return n_->weight; }
const std::set<int>& Term::support() const { return n_->support; }
bool Term::config_only() const { return n_->config_only; }
const std::string& Term::key() const { return n_->key; }

namespace {
void collect_multidegree(const Term& t, std::map<std::string, int>& out) {
    if (t.is_leaf()) {
        ++out[t.gen().str()];
        return;
    }
    collect_multidegree(t.left(), out);
    collect_multidegree(t.right(), out);
}
}  // namespace

std::map<std::string, int> Term::multidegree() const {
    std::map<std::string, int> out;
    collect_multidegree(*this, out);
    return out;
}

bool operator==(const Term& a, const Term& b) { return a.key() == b.key(); }
bool operator!=(const Term& a, const Term& b) { return !(a == b); }
bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

int swap_sign(int w1, int w2) {
    // classes of weight w sit in homotopy dimension w+1
    return ((w1 + 1) * (w2 + 1)) % 2 == 0 ? 1 : -1;
}

LinearCombo::LinearCombo(const Term& t, const Int& c) { add(t, c); }

void LinearCombo::add(const Term& t, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LinearCombo& LinearCombo::operator+=(const LinearCombo& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
}

LinearCombo& LinearCombo::operator-=(const LinearCombo& o) {
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
}

LinearCombo LinearCombo::operator+(const LinearCombo& o) const {
    LinearCombo r = *this;
    r += o;
    return r;
}

LinearCombo LinearCombo::operator-(const LinearCombo& o) const {
    LinearCombo r = *this;
    r -= o;
    return r;
}

LinearCombo LinearCombo::operator*(const Int& c) const {
    LinearCombo r;
    if (c == 0) return r;
    for (const auto& [t, k] : terms_) r.terms_.emplace(t, k * c);
    return r;
}

bool LinearCombo::is_zero() const { return terms_.empty(); }
std::size_t LinearCombo::size() const { return terms_.size(); }
const std::map<Term, Int>& LinearCombo::terms() const { return terms_; }

std::string LinearCombo::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        Int a = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1) os << a.str() << "*";
        os << t.key();
    }
    return os.str();
}

bool operator==(const LinearCombo& a, const LinearCombo& b) { return a.terms_ == b.terms_; }
bool operator!=(const LinearCombo& a, const LinearCombo& b) { return !(a == b); }

struct BracketExpr::Node {
    bool leaf = true;
    LinearCombo combo;
    std::shared_ptr<const Node> left, right;
};

BracketExpr::BracketExpr(const LinearCombo& leaf) {
    auto n = std::make_shared<Node>();
    n->leaf = true;
    n->combo = leaf;
    n_ = std::move(n);
}

BracketExpr::BracketExpr(const BracketExpr& a, const BracketExpr& b) {
    auto n = std::make_shared<Node>();
    n->leaf = false;
    n->left = a.n_;
    n->right = b.n_;
    n_ = std::move(n);
}

LinearCombo BracketExpr::expand() const { return expand_node(n_.get()); }

LinearCombo BracketExpr::expand_node(const Node* n) {
    if (n->leaf) return n->combo;
    return expand_bilinear(expand_node(n->left.get()), expand_node(n->right.get()));
}

LinearCombo expand_bilinear(const LinearCombo& a, const LinearCombo& b) {
    LinearCombo out;
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) out.add(Term(ta, tb), ca * cb);
    return out;
}

std::pair<Term, int> antisym_canonical(const Term& t) {
    if (t.is_leaf()) return {t, 1};
    auto [l, sl] = antisym_canonical(t.left());
    auto [r, sr] = antisym_canonical(t.right());
    int sign = sl * sr;
    if (r.key() < l.key()) {
        sign *= swap_sign(l.weight(), r.weight());
        std::swap(l, r);
    }
    return {Term(l, r), sign};
}

}  // namespace kss
