#pragma once

// Exact linear algebra over the integers: dense matrices with unbounded
// entries, Smith normal form with transform certificates, Hermite column
// form as the canonical representation of a subgroup of Z^n, and finitely
// generated abelian groups presented by relation matrices.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kss {

using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transposed() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += k * row j, and the column version.
    void add_row(std::size_t i, std::size_t j, const Int& k);
    void add_col(std::size_t i, std::size_t j, const Int& k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// U * m * V = D with U, V unimodular and D diagonal, each diagonal entry
// nonnegative and dividing the next.
struct SmithResult {
    IntMatrix u, d, v;
    std::vector<Int> diagonal() const;  // nonzero entries of d, in order
};

SmithResult smith_normal_form(const IntMatrix& m);

// Fraction-free (Bareiss) determinant; square input required.
Int determinant(const IntMatrix& m);

// A sparse integer row: (column, value) pairs sorted by column, values nonzero.
using SparseVec = std::vector<std::pair<int, Int>>;

SparseVec sparse_from_dense(const std::vector<Int>& v);
std::vector<Int> sparse_to_dense(const SparseVec& v, std::size_t n);

// Cokernel of the row span: Z^generators / <rows>.
struct GroupPresentation {
    std::size_t generator_count = 0;
    std::vector<SparseVec> relations;   // as given, one sparse row each
    std::size_t rank = 0;               // rank of the relation matrix
    std::vector<Int> invariant_factors; // torsion coefficients d1 | d2 | ..., all > 1

    std::size_t free_rank() const { return generator_count - rank; }
    bool is_trivial() const { return free_rank() == 0 && invariant_factors.empty(); }
    // "0", "Z", "Z^4", "Z^2 + Z/2 + Z/6", ...
    std::string describe() const;
    bool same_group(const GroupPresentation& o) const {
        return free_rank() == o.free_rank() && invariant_factors == o.invariant_factors;
    }
};

GroupPresentation cokernel_invariants(const IntMatrix& m);
GroupPresentation cokernel_of_rows(std::size_t generator_count,
                                   const std::vector<SparseVec>& rows);

// Canonical column-style Hermite form of the subgroup of Z^n spanned by the
// columns of g: zero columns dropped, pivots positive, entries to the right
// of each pivot reduced into [0, pivot). Two generating sets span the same
// subgroup iff their Hermite forms are identical.
IntMatrix hermite_column_form(const IntMatrix& g);

// Subgroup of Z^n handled through sparse generator rows.
class Subgroup {
public:
    Subgroup(std::size_t ambient_dim, const std::vector<SparseVec>& generators);

    std::size_t ambient_dim() const { return n_; }
    std::size_t rank() const { return basis_.size(); }
    bool contains(const SparseVec& v) const;
    bool operator==(const Subgroup& o) const;

private:
    std::size_t n_;
    // Reduced echelon basis rows sorted by pivot column (row-style Hermite).
    std::vector<SparseVec> basis_;
};

bool subgroup_equal(std::size_t ambient_dim,
                    const std::vector<SparseVec>& a,
                    const std::vector<SparseVec>& b);

// Dense convenience overload; every generator must have length ambient_dim.
bool subgroup_equal(std::size_t ambient_dim,
                    const std::vector<std::vector<Int>>& a,
                    const std::vector<std::vector<Int>>& b);

}  // namespace kss
