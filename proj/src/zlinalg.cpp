#include "kss/zlinalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace kss {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
        if (at(j, c) != 0) at(i, c) += k * at(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
        if (at(r, j) != 0) at(r, i) += k * at(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (std::size_t j = 0; j < cols_; ++j)
            os << at(i, j) << (j + 1 < cols_ ? ", " : "");
        os << "]" << (i + 1 < rows_ ? "\n" : "]");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// x*a + y*b = g = gcd(a,b), g >= 0.
void egcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int t = r0 - q * r1; r0 = r1; r1 = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
    g = r0; x = x0; y = y0;
}

// rows (i, j) of m are replaced by (a*r_i + b*r_j, c*r_i + d*r_j);
// callers pass a unimodular 2x2.
void row_transform(IntMatrix& m, std::size_t i, std::size_t j,
                   const Int& a, const Int& b, const Int& c, const Int& d) {
    for (std::size_t col = 0; col < m.cols(); ++col) {
        Int vi = m.at(i, col), vj = m.at(j, col);
        m.at(i, col) = a * vi + b * vj;
        m.at(j, col) = c * vi + d * vj;
    }
}

}  // namespace

std::vector<Int> SmithResult::diagonal() const {
    std::vector<Int> out;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) out.push_back(d.at(i, i));
    return out;
}

SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult res{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;
    std::size_t nmin = std::min(d.rows(), d.cols());

    for (std::size_t t = 0; t < nmin; ++t) {
        // Pivot: entry of minimal absolute value in the trailing submatrix.
        bool found = false;
        std::size_t pr = t, pc = t;
        Int best = 0;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                Int a = abs_int(d.at(i, j));
                if (!found || a < best) { found = true; best = a; pr = i; pc = j; }
            }
        if (!found) break;
        d.swap_rows(t, pr); u.swap_rows(t, pr);
        d.swap_cols(t, pc); v.swap_cols(t, pc);

        // Clear row and column t; a nonzero remainder becomes the new,
        // strictly smaller pivot, so this loop terminates.
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                d.add_row(i, t, -q); u.add_row(i, t, -q);
                if (d.at(i, t) != 0) {
                    d.swap_rows(t, i); u.swap_rows(t, i);
                    again = true;
                }
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                d.add_col(j, t, -q); v.add_col(j, t, -q);
                if (d.at(t, j) != 0) {
                    d.swap_cols(t, j); v.swap_cols(t, j);
                    again = true;
                }
            }
            if (!again) break;
        }
    }

    for (std::size_t t = 0; t < nmin; ++t)
        if (d.at(t, t) < 0) { d.negate_row(t); u.negate_row(t); }

    // Divisibility chain: absorb gcds leftward pair by pair.
    for (std::size_t i = 0; i < nmin; ++i) {
        if (d.at(i, i) == 0) break;
        for (std::size_t j = i + 1; j < nmin; ++j) {
            if (d.at(j, j) == 0) break;
            if (d.at(j, j) % d.at(i, i) == 0) continue;
            Int a = d.at(i, i), b = d.at(j, j), g, x, y;
            // col i += col j, then a 2x2 unimodular row transform brings
            // gcd(a,b) to (i,i) and lcm(a,b) to (j,j).
            d.add_col(i, j, 1); v.add_col(i, j, 1);
            egcd(a, b, g, x, y);
            row_transform(d, i, j, x, y, -b / g, a / g);
            row_transform(u, i, j, x, y, -b / g, a / g);
            Int q = y * b / g;
            d.add_col(j, i, -q); v.add_col(j, i, -q);
        }
    }
    return res;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant: square matrix required");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a.at(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = t / prev;  // Bareiss: division is exact
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

SparseVec sparse_from_dense(const std::vector<Int>& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.emplace_back(static_cast<int>(i), v[i]);
    return out;
}

std::vector<Int> sparse_to_dense(const SparseVec& v, std::size_t n) {
    std::vector<Int> out(n);
    for (const auto& [c, val] : v) {
        if (c < 0 || static_cast<std::size_t>(c) >= n)
            throw Error("sparse_to_dense: column out of range");
        out[c] = val;
    }
    return out;
}

namespace {

// r += k * p, both sorted by column.
SparseVec sparse_axpy(const SparseVec& r, const Int& k, const SparseVec& p) {
    SparseVec out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, k * p[j].second);
            ++j;
        } else {
            Int v = r[i].second + k * p[j].second;
            if (v != 0) out.emplace_back(r[i].first, std::move(v));
            ++i; ++j;
        }
    }
    return out;
}

const Int* sparse_get(const SparseVec& v, int col) {
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != v.end() && it->first == col) return &it->second;
    return nullptr;
}

}  // namespace

std::string GroupPresentation::describe() const {
    std::ostringstream os;
    std::size_t fr = free_rank();
    if (fr == 0 && invariant_factors.empty()) return "0";
    if (fr == 1) os << "Z";
    else if (fr > 1) os << "Z^" << fr;
    bool first = (fr == 0);
    for (const Int& f : invariant_factors) {
        if (!first || fr > 0) os << " + ";
        os << "Z/" << f;
        first = false;
    }
    return os.str();
}

GroupPresentation cokernel_of_rows(std::size_t generator_count,
                                   const std::vector<SparseVec>& rows) {
    GroupPresentation pres;
    pres.generator_count = generator_count;
    pres.relations = rows;

    std::vector<SparseVec> work;
    for (const auto& r : rows) {
        for (const auto& [c, v] : r) {
            (void)v;
            if (c < 0 || static_cast<std::size_t>(c) >= generator_count)
                throw Error("cokernel: relation column out of range");
        }
        if (!r.empty()) work.push_back(r);
    }

    std::vector<bool> alive(work.size(), true);
    std::map<int, std::set<std::size_t>> col_rows;
    for (std::size_t i = 0; i < work.size(); ++i)
        for (const auto& [c, v] : work[i]) { (void)v; col_rows[c].insert(i); }

    // Phase 1: eliminate with +-1 pivots, cheapest fill first. Each step
    // splits off a unit invariant factor.
    std::size_t unit_pivots = 0;
    for (;;) {
        std::size_t best_row = 0;
        int best_col = -1;
        std::size_t best_cost = 0;
        bool found = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (!alive[i]) continue;
            for (const auto& [c, v] : work[i]) {
                if (v != 1 && v != -1) continue;
                std::size_t cost = (work[i].size() - 1) * (col_rows[c].size() - 1);
                if (!found || cost < best_cost ||
                    (cost == best_cost && work[i].size() < work[best_row].size())) {
                    found = true; best_cost = cost; best_row = i; best_col = c;
                }
            }
        }
        if (!found) break;

        const Int pivot_val = *sparse_get(work[best_row], best_col);  // +-1
        SparseVec pivot = work[best_row];
        alive[best_row] = false;
        for (const auto& [c, v] : pivot) { (void)v; col_rows[c].erase(best_row); }

        std::set<std::size_t> touch = col_rows[best_col];
        for (std::size_t r : touch) {
            if (!alive[r]) continue;
            Int coef = -(*sparse_get(work[r], best_col)) * pivot_val;
            for (const auto& [c, v] : work[r]) { (void)v; col_rows[c].erase(r); }
            work[r] = sparse_axpy(work[r], coef, pivot);
            if (work[r].empty()) alive[r] = false;
            else
                for (const auto& [c, v] : work[r]) { (void)v; col_rows[c].insert(r); }
        }
        ++unit_pivots;
    }

    // Phase 2: dense Smith form on whatever is left.
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < work.size(); ++i)
        if (alive[i]) live.push_back(i);
    std::vector<Int> residual_diag;
    if (!live.empty()) {
        std::map<int, std::size_t> colmap;
        for (std::size_t i : live)
            for (const auto& [c, v] : work[i]) { (void)v; colmap.emplace(c, 0); }
        std::size_t nc = 0;
        for (auto& [c, idx] : colmap) { (void)c; idx = nc++; }
        IntMatrix res(live.size(), nc);
        for (std::size_t r = 0; r < live.size(); ++r)
            for (const auto& [c, v] : work[live[r]]) res.at(r, colmap[c]) = v;
        residual_diag = smith_normal_form(res).diagonal();
    }

    pres.rank = unit_pivots + residual_diag.size();
    for (const Int& f : residual_diag)
        if (f > 1) pres.invariant_factors.push_back(f);
    std::sort(pres.invariant_factors.begin(), pres.invariant_factors.end());
    return pres;
}

GroupPresentation cokernel_invariants(const IntMatrix& m) {
    std::vector<SparseVec> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) rows[i].emplace_back(static_cast<int>(j), m.at(i, j));
    return cokernel_of_rows(m.cols(), rows);
}

IntMatrix hermite_column_form(const IntMatrix& g) {
    IntMatrix h = g;
    std::size_t next = 0;  // next pivot column slot
    for (std::size_t r = 0; r < h.rows() && next < h.cols(); ++r) {
        // Euclid on the entries of row r among columns >= next.
        for (;;) {
            std::size_t jmin = h.cols();
            Int best = 0;
            std::size_t nonzero = 0;
            for (std::size_t j = next; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                ++nonzero;
                Int a = abs_int(h.at(r, j));
                if (jmin == h.cols() || a < best) { jmin = j; best = a; }
            }
            if (nonzero == 0) break;
            h.swap_cols(next, jmin);
            if (nonzero == 1) break;
            for (std::size_t j = next + 1; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                Int q = h.at(r, j) / h.at(r, next);
                h.add_col(j, next, -q);
            }
        }
        if (h.at(r, next) == 0) continue;
        if (h.at(r, next) < 0) h.negate_col(next);
        // Canonical reduction of earlier columns in the pivot row.
        for (std::size_t j = 0; j < next; ++j) {
            Int q = h.at(r, j) / h.at(r, next);
            Int rem = h.at(r, j) - q * h.at(r, next);
            if (rem < 0) q -= 1;
            h.add_col(j, next, -q);
        }
        ++next;
    }
    // Drop zero columns (they are all at positions >= next).
    IntMatrix out(h.rows(), next);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < next; ++j) out.at(i, j) = h.at(i, j);
    return out;
}

Subgroup::Subgroup(std::size_t ambient_dim, const std::vector<SparseVec>& generators)
    : n_(ambient_dim) {
    auto lead = [](const SparseVec& v) { return v.front().first; };
    for (const auto& gen : generators) {
        for (const auto& [c, v] : gen) {
            (void)v;
            if (c < 0 || static_cast<std::size_t>(c) >= n_)
                throw Error("subgroup: generator column out of range");
        }
        SparseVec v = gen;
        while (!v.empty()) {
            int lc = lead(v);
            auto it = std::find_if(basis_.begin(), basis_.end(),
                                   [&](const SparseVec& b) { return b.front().first == lc; });
            if (it == basis_.end()) {
                auto pos = std::find_if(basis_.begin(), basis_.end(),
                                        [&](const SparseVec& b) { return b.front().first > lc; });
                basis_.insert(pos, v);
                break;
            }
            const Int& bl = it->front().second;
            const Int& vl = v.front().second;
            if (vl % bl == 0) {
                v = sparse_axpy(v, -(vl / bl), *it);
            } else {
                Int g, x, y;
                egcd(bl, vl, g, x, y);
                // Unimodular mix: new basis row has lead g, remainder drops lc.
                SparseVec nb = sparse_axpy([&] {
                    SparseVec s;
                    for (auto& [c, val] : *it) s.emplace_back(c, x * val);
                    return s;
                }(), y, v);
                SparseVec nv = sparse_axpy([&] {
                    SparseVec s;
                    for (auto& [c, val] : v) s.emplace_back(c, bl / g * val);
                    return s;
                }(), -(vl / g), *it);
                SparseVec clean;
                for (auto& [c, val] : nb)
                    if (val != 0) clean.emplace_back(c, val);
                *it = clean;
                v.clear();
                for (auto& [c, val] : nv)
                    if (val != 0) v.emplace_back(c, val);
            }
        }
    }
    // Positive leads, then reduce every non-pivot entry in a pivot column.
    for (auto& b : basis_)
        if (b.front().second < 0)
            for (auto& [c, val] : b) { (void)c; val = -val; }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        int pc = basis_[i].front().first;
        const Int& pv = basis_[i].front().second;
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            if (i == j) continue;
            const Int* e = sparse_get(basis_[j], pc);
            if (!e) continue;
            Int q = *e / pv;
            Int rem = *e - q * pv;
            if (rem < 0) q -= 1;
            if (q != 0) basis_[j] = sparse_axpy(basis_[j], -q, basis_[i]);
        }
    }
}

bool Subgroup::contains(const SparseVec& v) const {
    SparseVec w = v;
    for (const auto& b : basis_) {
        if (w.empty()) return true;
        if (w.front().first < b.front().first) return false;
        if (w.front().first > b.front().first) continue;
        if (w.front().second % b.front().second != 0) return false;
        w = sparse_axpy(w, -(w.front().second / b.front().second), b);
    }
    return w.empty();
}

bool Subgroup::operator==(const Subgroup& o) const {
    return n_ == o.n_ && basis_ == o.basis_;
}

bool subgroup_equal(std::size_t ambient_dim,
                    const std::vector<SparseVec>& a,
                    const std::vector<SparseVec>& b) {
    return Subgroup(ambient_dim, a) == Subgroup(ambient_dim, b);
}

bool subgroup_equal(std::size_t ambient_dim,
                    const std::vector<std::vector<Int>>& a,
                    const std::vector<std::vector<Int>>& b) {
    auto to_sparse = [ambient_dim](const std::vector<std::vector<Int>>& gens) {
        std::vector<SparseVec> out;
        out.reserve(gens.size());
        for (const auto& g : gens) {
            if (g.size() != ambient_dim)
                throw Error("subgroup_equal: generator length " + std::to_string(g.size()) +
                            " does not match ambient dimension " + std::to_string(ambient_dim));
            out.push_back(sparse_from_dense(g));
        }
        return out;
    };
    return subgroup_equal(ambient_dim, to_sparse(a), to_sparse(b));
}

}  // namespace kss
