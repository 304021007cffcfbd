#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voak/report.hpp"
#include "voak/sparse_matrix.hpp"

using namespace voak;

TEST_CASE("rational basics") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational::parse("7/3") == Rational(7, 3));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("a"));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3) == Rational(1));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(binomial(-1, 3) == Rational(-1));
  CHECK(binomial(-2, 3) == Rational(-4));
  CHECK(binomial(5, 2) == Rational(10));
  CHECK(binomial(3, 5) == Rational(0));
  CHECK(factorial(5) == Rational(120));
}

TEST_CASE("rref examples") {
  // identity 3x3 -> itself
  auto id3 = SparseMatrix::identity(3);
  auto r = rref(id3);
  CHECK(r.rank == 3);
  CHECK(r.pivots == std::vector<int>{0, 1, 2});
  CHECK(r.reduced == id3);

  // zero 2x4 -> zero, rank 0
  SparseMatrix z(2, 4);
  auto rz = rref(z);
  CHECK(rz.rank == 0);
  CHECK(rz.pivots.empty());
  CHECK(rz.reduced == z);

  // [[1,2],[2,4]] -> [[1,2],[0,0]], rank 1
  SparseMatrix m(2, 2);
  m.set(0, 0, Rational(1));
  m.set(0, 1, Rational(2));
  m.set(1, 0, Rational(2));
  m.set(1, 1, Rational(4));
  auto rm = rref(m);
  CHECK(rm.rank == 1);
  CHECK(rm.reduced.get(0, 0) == Rational(1));
  CHECK(rm.reduced.get(0, 1) == Rational(2));
  CHECK(rm.reduced.get(1, 0) == Rational(0));
  CHECK(rm.reduced.get(1, 1) == Rational(0));
}

TEST_CASE("solve examples") {
  auto id2 = SparseMatrix::identity(2);
  auto x = solve(id2, {Rational(1), Rational(0)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1));
  CHECK((*x)[1] == Rational(0));

  // [[1,1]] rhs [2] -> [2, 0]: free variable zeroed
  SparseMatrix m(1, 2);
  m.set(0, 0, Rational(1));
  m.set(0, 1, Rational(1));
  auto y = solve(m, {Rational(2)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] == Rational(2));
  CHECK((*y)[1] == Rational(0));

  // [[1],[1]] rhs [1,2] -> inconsistent
  SparseMatrix n(2, 1);
  n.set(0, 0, Rational(1));
  n.set(1, 0, Rational(1));
  CHECK(!solve(n, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(SparseMatrix::identity(3)).empty());
  CHECK(kernel_basis(SparseMatrix(1, 2)).size() == 2);

  SparseMatrix m(1, 2);
  m.set(0, 0, Rational(1));
  m.set(0, 1, Rational(2));
  auto kb = kernel_basis(m);
  REQUIRE(kb.size() == 1);
  // [-2, 1] up to scalar
  CHECK(kb[0][0] * Rational(1) == kb[0][1] * Rational(-2));
}

namespace {

SparseMatrix random_sparse(Rng& rng, int rows, int cols) {
  SparseMatrix m(rows, cols);
  long fills = static_cast<long>(rng.below(rows * cols + 1));
  for (long f = 0; f < fills; ++f) {
    int r = static_cast<int>(rng.below(rows));
    int c = static_cast<int>(rng.below(cols));
    long num = static_cast<long>(rng.below(11)) - 5;
    long den = static_cast<long>(rng.below(4)) + 1;
    m.set(r, c, Rational(num, den));
  }
  return m;
}

}  // namespace

TEST_CASE("rank-nullity and idempotence on random instances") {
  Rng rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + static_cast<int>(rng.below(7));
    int cols = 1 + static_cast<int>(rng.below(7));
    SparseMatrix m = random_sparse(rng, rows, cols);
    auto r = rref(m);
    auto kb = kernel_basis(m);
    CHECK(r.rank + static_cast<int>(kb.size()) == cols);
    // kernel vectors really are in the kernel
    for (const auto& v : kb) CHECK(is_zero_vec(m.apply(v)));
    // rref is idempotent
    auto r2 = rref(r.reduced);
    CHECK(r2.reduced == r.reduced);
    CHECK(r2.rank == r.rank);
    // solve exactness: use m * (random x) as rhs
    std::vector<Rational> x0(cols);
    for (int c = 0; c < cols; ++c)
      x0[c] = Rational(static_cast<long>(rng.below(7)) - 3);
    auto rhs = m.apply(x0);
    auto x = solve(m, rhs);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == rhs);
  }
}

TEST_CASE("row span") {
  RowSpan s(3);
  CHECK(s.insert({Rational(1), Rational(2), Rational(0)}));
  CHECK(s.insert({Rational(0), Rational(1), Rational(1)}));
  CHECK(!s.insert({Rational(1), Rational(3), Rational(1)}));  // dependent
  CHECK(s.rank() == 2);
  CHECK(s.contains({Rational(2), Rational(5), Rational(1)}));
  CHECK(!s.contains({Rational(0), Rational(0), Rational(1)}));
  CHECK(s.free_cols().size() == 1);
}
