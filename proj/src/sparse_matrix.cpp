#include "voak/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace voak {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative shape");
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
  SparseMatrix m(rows, cols);
  for (const auto& t : ts) m.add_to(t.row, t.col, t.value);
  return m;
}

static std::pair<int, Rational>* find_col(std::vector<std::pair<int, Rational>>& row, int c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != row.end() && it->first == c) return &*it;
  return nullptr;
}

void SparseMatrix::set(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseMatrix::set");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != row.end() && it->first == c) {
    if (v.is_zero())
      row.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void SparseMatrix::add_to(int r, int c, const Rational& v) {
  if (v.is_zero()) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseMatrix::add_to");
  auto& row = data_[r];
  if (auto* p = find_col(row, c)) {
    p->second += v;
    if (p->second.is_zero()) set(r, c, Rational(0));
  } else {
    set(r, c, v);
  }
}

Rational SparseMatrix::get(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("SparseMatrix::get");
  for (const auto& [col, val] : data_[r])
    if (col == c) return val;
  return Rational(0);
}

std::vector<Triplet> SparseMatrix::entries() const {
  std::vector<Triplet> out;
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out.push_back({r, c, v});
  return out;
}

long SparseMatrix::nnz() const {
  long n = 0;
  for (const auto& row : data_) n += static_cast<long>(row.size());
  return n;
}

bool SparseMatrix::is_zero() const { return nnz() == 0; }

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("SparseMatrix::apply: size mismatch");
  std::vector<Rational> y(rows_);
  for (int r = 0; r < rows_; ++r) {
    Rational acc(0);
    for (const auto& [c, v] : data_[r]) acc += v * x[c];
    y[r] = acc;
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  return t;
}

SparseMatrix SparseMatrix::mul(const SparseMatrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("SparseMatrix::mul: shape mismatch");
  SparseMatrix out(rows_, b.cols_);
  std::vector<Rational> acc(b.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (auto& a : acc) a = Rational(0);
    for (const auto& [k, v] : data_[r])
      for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
    for (int c = 0; c < b.cols_; ++c)
      if (!acc[c].is_zero()) out.data_[r].emplace_back(c, acc[c]);
  }
  return out;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix& b, const Rational& scale) const {
  if (rows_ != b.rows_ || cols_ != b.cols_)
    throw std::invalid_argument("SparseMatrix::plus: shape mismatch");
  SparseMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out.add_to(r, c, v);
    for (const auto& [c, v] : b.data_[r]) out.add_to(r, c, scale * v);
  }
  return out;
}

SparseMatrix SparseMatrix::scaled(const Rational& c) const {
  SparseMatrix out(rows_, cols_);
  if (c.is_zero()) return out;
  for (int r = 0; r < rows_; ++r)
    for (const auto& [col, v] : data_[r]) out.data_[r].emplace_back(col, c * v);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

std::vector<std::vector<Rational>> to_dense_rows(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), dense_zero(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) rows[r][c] = v;
  return rows;
}

}  // namespace

RrefResult rref(const SparseMatrix& m) {
  auto rows = to_dense_rows(m);
  const int nr = m.rows(), nc = m.cols();
  std::vector<int> pivots;
  int next_row = 0;
  for (int c = 0; c < nc && next_row < nr; ++c) {
    int pr = -1;
    for (int r = next_row; r < nr; ++r)
      if (!rows[r][c].is_zero()) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(rows[next_row], rows[pr]);
    Rational inv = rows[next_row][c].inverse();
    for (int j = c; j < nc; ++j)
      if (!rows[next_row][j].is_zero()) rows[next_row][j] *= inv;
    for (int r = 0; r < nr; ++r) {
      if (r == next_row || rows[r][c].is_zero()) continue;
      Rational f = rows[r][c];
      for (int j = c; j < nc; ++j)
        if (!rows[next_row][j].is_zero()) rows[r][j] -= f * rows[next_row][j];
    }
    pivots.push_back(c);
    ++next_row;
  }
  SparseMatrix red(nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (!rows[r][c].is_zero()) red.set(r, c, rows[r][c]);
  return {std::move(red), pivots, static_cast<int>(pivots.size())};
}

std::optional<std::vector<Rational>> solve(const SparseMatrix& m,
                                           const std::vector<Rational>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows())
    throw std::invalid_argument("solve: rhs size mismatch");
  SparseMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
    aug.set(r, m.cols(), rhs[r]);
  }
  RrefResult rr = rref(aug);
  std::vector<Rational> x(m.cols());
  for (int i = 0; i < rr.rank; ++i) {
    if (rr.pivots[i] == m.cols()) return std::nullopt;  // pivot in rhs column
    x[rr.pivots[i]] = rr.reduced.get(i, m.cols());
  }
  return x;
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = Rational(1);
    for (int i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.reduced.get(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

void RowSpan::reduce(std::vector<Rational>& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    Rational f = c;
    axpy(v, -f, rows_[i]);
  }
}

bool RowSpan::contains(std::vector<Rational> v) const {
  reduce(v);
  return is_zero_vec(v);
}

bool RowSpan::insert(std::vector<Rational> v) {
  if (static_cast<int>(v.size()) != width_)
    throw std::invalid_argument("RowSpan::insert: width mismatch");
  reduce(v);
  int p = -1;
  for (int j = 0; j < width_; ++j)
    if (!v[j].is_zero()) { p = j; break; }
  if (p < 0) return false;
  Rational inv = v[p].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  // back-reduce existing rows against the new one
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& c = rows_[i][p];
    if (!c.is_zero()) {
      Rational f = c;
      axpy(rows_[i], -f, v);
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

std::vector<int> RowSpan::pivot_cols_sorted() const {
  std::vector<int> ps = pivots_;
  std::sort(ps.begin(), ps.end());
  return ps;
}

std::vector<int> RowSpan::free_cols() const {
  std::vector<bool> piv(width_, false);
  for (int p : pivots_) piv[p] = true;
  std::vector<int> out;
  for (int j = 0; j < width_; ++j)
    if (!piv[j]) out.push_back(j);
  return out;
}

std::vector<Rational> dense_zero(int n) { return std::vector<Rational>(n); }

void axpy(std::vector<Rational>& y, const Rational& a, const std::vector<Rational>& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!x[i].is_zero()) y[i] += a * x[i];
  }
}

bool is_zero_vec(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace voak
