#pragma once

#include "phyloinv/errors.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stop_token>
#include <utility>
#include <vector>

namespace phyloinv {

using Integer = mpz_class;

/// Dense exact integer matrix, row-major.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntegerMatrix transpose() const;
    bool is_zero() const;
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

/// Cooperative cancellation for long factorizations.
struct FactorOptions {
    std::stop_token stop;
};

struct HnfResult {
    IntegerMatrix H;
    IntegerMatrix U;
};

/// Row-style Hermite normal form: H = U*A, H in echelon form with positive
/// pivots and entries above each pivot reduced into [0, pivot). Zero rows are
/// kept at the bottom.
HnfResult hnf(const IntegerMatrix& a, const FactorOptions& opts = {});

struct SnfResult {
    IntegerMatrix D;
    IntegerMatrix U;
    IntegerMatrix V;
};

/// D = U*A*V diagonal with nonnegative d_i and d_i | d_{i+1}.
SnfResult snf(const IntegerMatrix& a, const FactorOptions& opts = {});

/// Nonzero invariant factors of A (without transforms).
std::vector<Integer> elementary_divisors(const IntegerMatrix& a, const FactorOptions& opts = {});

Integer determinant(const IntegerMatrix& a);
std::size_t rank(const IntegerMatrix& a);

// ---------------------------------------------------------------------------
// Sparse vectors and lattices

/// (coordinate, nonzero value) pairs sorted by coordinate.
using SparseVector = std::vector<std::pair<std::size_t, Integer>>;

SparseVector to_sparse(const std::vector<long long>& dense);
std::vector<Integer> to_dense(const SparseVector& v, std::size_t dim);

/// A free Z-module in Z^n given by linearly independent rows.
class LatticeBasis {
public:
    explicit LatticeBasis(std::size_t ambient_dim) : dim_(ambient_dim) {}

    /// Z-basis of the lattice generated by arbitrary (possibly dependent)
    /// vectors, obtained by unimodular row reduction; rows come out in
    /// echelon form.
    static LatticeBasis from_generators(std::size_t ambient_dim, const std::vector<SparseVector>& gens,
                                        const FactorOptions& opts = {});
    /// Takes rows as given; throws InputError if they are dependent.
    static LatticeBasis from_independent_rows(std::size_t ambient_dim, std::vector<SparseVector> rows);

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<SparseVector>& rows() const noexcept { return rows_; }

    /// Canonical form: the nonzero rows of the HNF of the basis matrix.
    IntegerMatrix hnf_matrix(const FactorOptions& opts = {}) const;

private:
    friend LatticeBasis kernel_lattice(const IntegerMatrix&, const FactorOptions&);
    std::size_t dim_;
    std::vector<SparseVector> rows_;
};

/// Basis of {x in Z^cols : A x = 0}. Vectors are produced by incremental
/// column reduction of A, so the result is saturated by construction.
LatticeBasis kernel_lattice(const IntegerMatrix& a, const FactorOptions& opts = {});

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b, const FactorOptions& opts = {});

/// Raised by spans() for a vector outside the rational span of the lattice,
/// as opposed to a proper sublattice (which is a plain false).
class NotInRationalSpan : public InputError {
public:
    explicit NotInRationalSpan(std::size_t which)
        : InputError("vector " + std::to_string(which) + " lies outside the rational span of the lattice"),
          which_(which) {}
    std::size_t which() const noexcept { return which_; }

private:
    std::size_t which_;
};

/// True iff the Z-span of `vectors` equals L.
bool spans(const std::vector<SparseVector>& vectors, const LatticeBasis& l, const FactorOptions& opts = {});

/// (L_super : L_sub), or nullopt when the ranks differ (infinite index).
/// Throws InputError when L_sub is not contained in L_super.
std::optional<Integer> sublattice_index(const LatticeBasis& super, const LatticeBasis& sub,
                                        const FactorOptions& opts = {});

/// Elementary divisors of the matrix whose rows are `rows` (n columns),
/// eliminating unit pivots sparsely (Markowitz order) and finishing any
/// remaining block with a dense Smith form. Returns the nonzero invariant
/// factors in divisibility order.
std::vector<Integer> sparse_elementary_divisors(const std::vector<SparseVector>& rows, std::size_t n,
                                                const FactorOptions& opts = {});

/// Outcome of comparing a generating set against ker(A).
struct KernelSpanCheck {
    bool all_in_kernel = true;
    std::vector<std::size_t> outside; // indices of vectors with A x != 0
    std::size_t kernel_rank = 0;
    std::size_t generated_rank = 0;
    /// Product of the elementary divisors of the generator matrix; 1 exactly
    /// when the generated lattice is saturated.
    Integer torsion = 1;
    bool spans = false;
};

/// Decides whether `vectors` Z-span ker(A) without forming a kernel basis.
/// The generated lattice L lies in ker(A) and ker(A) is saturated, so
/// L = ker(A) iff rank L = cols - rank A and all elementary divisors of L's
/// generator matrix are 1.
KernelSpanCheck check_kernel_span(const IntegerMatrix& a, const std::vector<SparseVector>& vectors,
                                  const FactorOptions& opts = {});

/// A*x for a sparse x.
std::vector<Integer> image(const IntegerMatrix& a, const SparseVector& x);

} // namespace phyloinv
