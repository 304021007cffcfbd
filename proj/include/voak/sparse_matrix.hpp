#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "voak/rational.hpp"

namespace voak {

struct Triplet {
  int row;
  int col;
  Rational value;
};

// Sparse matrix over the rationals. Rows hold (col, value) pairs sorted by
// column; zero values are never stored.
class SparseMatrix {
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, Rational>>> data_;

public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);
  static SparseMatrix identity(int n);
  static SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& ts);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, const Rational& v);
  void add_to(int r, int c, const Rational& v);
  Rational get(int r, int c) const;
  const std::vector<std::pair<int, Rational>>& row(int r) const { return data_[r]; }

  std::vector<Triplet> entries() const;
  long nnz() const;
  bool is_zero() const;

  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  SparseMatrix transpose() const;
  SparseMatrix mul(const SparseMatrix& b) const;
  SparseMatrix plus(const SparseMatrix& b, const Rational& scale = Rational(1)) const;
  SparseMatrix scaled(const Rational& c) const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
};

struct RrefResult {
  SparseMatrix reduced;
  std::vector<int> pivots;
  int rank = 0;
};

// Reduced row echelon form with deterministic pivoting: columns left to
// right, topmost unused row with a nonzero entry.
RrefResult rref(const SparseMatrix& m);

// Particular solution of m x = rhs with free variables set to zero, or
// nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const SparseMatrix& m,
                                           const std::vector<Rational>& rhs);

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m);

// Incrementally maintained reduced row space; the workhorse for span
// computations.
class RowSpan {
  int width_;
  // rows kept reduced; pivots_[i] is the pivot column of rows_[i], strictly
  // increasing is NOT maintained, row order is insertion order
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivots_;

public:
  explicit RowSpan(int width) : width_(width) {}
  int width() const { return width_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v in place against the span; afterwards v is the residual.
  void reduce(std::vector<Rational>& v) const;
  bool contains(std::vector<Rational> v) const;
  // Returns true when the rank grew.
  bool insert(std::vector<Rational> v);

  std::vector<int> pivot_cols_sorted() const;
  std::vector<int> free_cols() const;
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
};

std::vector<Rational> dense_zero(int n);
void axpy(std::vector<Rational>& y, const Rational& a, const std::vector<Rational>& x);
bool is_zero_vec(const std::vector<Rational>& v);

}  // namespace voak
