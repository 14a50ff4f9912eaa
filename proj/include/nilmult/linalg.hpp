#pragma once

#include "nilmult/integer.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilmult {

/// Dense integer matrix, row-major.
class IntMatrix
{
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& m);

struct SmithForm
{
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

/// U * M * V = D, D diagonal with d1 | d2 | ... and nonnegative entries,
/// U and V unimodular.
SmithForm smith_normal_form(const IntMatrix& m);

/// True when `sf` satisfies every Smith normal form postcondition for `m`.
bool verify_smith_form(const IntMatrix& m, const SmithForm& sf);

/// Finitely generated abelian group: Z^free_rank + Z/d1 + ... + Z/dt with
/// d1 | d2 | ... | dt and every di >= 2.
struct AbelianInvariants
{
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  /// Canonical form from arbitrary cyclic orders (0 = infinite cyclic;
  /// orders 1 are dropped).
  static AbelianInvariants from_cyclic_orders(const std::vector<Integer>& orders);

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Order of a finite group; throws for infinite.
  Integer order() const;
  /// Prime powers of the primary decomposition, sorted.
  std::vector<std::pair<Integer, int>> primary_components() const;

  bool operator==(const AbelianInvariants&) const = default;
};

/// Direct sum.
AbelianInvariants operator+(const AbelianInvariants& a, const AbelianInvariants& b);

/// Formats as `Z^2 + Z/2 + Z/6`; the trivial group prints as `0`.
std::string to_string(const AbelianInvariants& a);

/// Sparse row: sorted (column, nonzero value) pairs.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

/// Invariants of Z^n / (row lattice of `relations`).
AbelianInvariants cokernel_invariants(const IntMatrix& relations);
AbelianInvariants cokernel_invariants(const std::vector<SparseRow>& relations, std::size_t n);

/// Rank and nonunit elementary divisors of a sparse integer matrix, by
/// sparse unimodular elimination (never forms transforms).
struct ElementaryDivisors
{
  std::size_t rank = 0;
  std::vector<Integer> divisors;  // every nonzero pivot magnitude, units included
};
ElementaryDivisors elementary_divisors(std::vector<SparseRow> rows, std::size_t n_cols);

/// Incrementally maintained Hermite echelon basis of a sublattice of Z^n.
///
/// Rows are keyed by pivot column with positive pivots; after
/// `fully_reduce` every entry above a pivot lies in [0, pivot).
class LatticeEchelon
{
public:
  explicit LatticeEchelon(std::size_t n_cols) : n_cols_(n_cols) {}

  std::size_t n_cols() const { return n_cols_; }
  void insert(SparseRow v);
  /// Canonical representative of v modulo the lattice (needs fully_reduce
  /// for canonicity across calls).
  SparseRow reduce(SparseRow v) const;
  void fully_reduce();
  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }
  /// Pivot value at a column, or 0 when the column has no pivot.
  Integer pivot(std::size_t col) const;

private:
  std::size_t n_cols_;
  std::map<std::size_t, SparseRow> rows_;
};

/// a += k * b for sparse rows.
void axpy(SparseRow& a, const Integer& k, const SparseRow& b);

/// Result of comparing finite abelian groups.
struct AbelianComparison
{
  bool is_direct_factor = false;
  bool embeds_as_subgroup = false;
  bool is_quotient = false;
};

class InfiniteGroupError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// X as a direct factor of Y: primary cyclic components of X form a
/// sub-multiset of those of Y and free ranks compare.
bool is_direct_factor(const AbelianInvariants& x, const AbelianInvariants& y);
/// Finite only: for every prime the exponent partition of X fits under Y.
bool embeds_as_subgroup(const AbelianInvariants& x, const AbelianInvariants& y);
/// Finite only; equivalent to embeds_as_subgroup by duality.
bool is_quotient(const AbelianInvariants& x, const AbelianInvariants& y);
/// All three tests; the finite-only ones throw InfiniteGroupError.
AbelianComparison abelian_tests(const AbelianInvariants& x, const AbelianInvariants& y);

/// Prime factorisation by trial division.
std::vector<std::pair<Integer, int>> factorize(Integer n);

}  // namespace nilmult
