#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voak/mode_calc.hpp"
#include "voak/models.hpp"
#include "voak/zhu.hpp"

using namespace voak;

TEST_CASE("circle family instance: wt 1, n = 0") {
  // a_{-2} u + a_{-1} u for the weight-1 generator
  auto h = build_heisenberg(4);
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  GVec vac = h->elem_vec(h->vacuum_elem);
  auto r = zhu_circle(*h, alpha, vac, 0);
  REQUIRE(r.ok);
  auto t1 = act(*h, h->adjoint, alpha, -2, vac);
  auto t2 = act(*h, h->adjoint, alpha, -1, vac);
  REQUIRE(t1.ok);
  REQUIRE(t2.ok);
  GVec expect = t1.value;
  expect.add(t2.value);
  expect.add(r.value, Rational(-1));
  CHECK(expect.is_zero());
}

TEST_CASE("vacuum instances contribute nothing to the circle family") {
  auto h = build_heisenberg(3);
  GVec u = h->elem_vec(h->elem_id(*h->space->key_of(Rational(1)), 0));
  auto r = zhu_circle(*h, h->vacuum_elem, u, 0);
  REQUIRE(r.ok);
  CHECK(r.value.is_zero());  // binom(0,i) hits 1_{-2+i}, all zero modes
}

TEST_CASE("ising A_0: dimension stabilizes at 3, commutative, unital") {
  auto builder = [](long L) { return build_minimal_model(3, 4, L); };
  auto stab = zhu_dim_stabilization(builder, 8, 0);
  REQUIRE(stab.dims.size() == 3);
  CHECK(stab.dims[0] == 3);
  CHECK(stab.dims[1] == 3);
  CHECK(stab.dims[2] == 3);
  CHECK(stab.stable);

  auto ising = build_minimal_model(3, 4, 8);
  auto q = zhu_algebra(ising, 0);
  CHECK(q.dim() == 3);
  CHECK(q.table_complete);
  CHECK(q.associative);
  // commutative
  for (long i = 0; i < q.dim(); ++i)
    for (long j = 0; j < q.dim(); ++j) CHECK(q.star_table[i][j] == q.star_table[j][i]);
  // identity: 1 * x = x
  for (long j = 0; j < q.dim(); ++j) {
    std::vector<Rational> prod(q.dim());
    for (long i = 0; i < q.dim(); ++i) {
      if (q.identity_coords[i].is_zero()) continue;
      for (long k = 0; k < q.dim(); ++k)
        prod[k] += q.identity_coords[i] * q.star_table[i][j][k];
    }
    std::vector<Rational> ej(q.dim());
    ej[j] = Rational(1);
    CHECK(prod == ej);
  }
}

TEST_CASE("heisenberg A_0 is truncation-unstable (polynomial algebra)") {
  auto builder = [](long L) { return build_heisenberg(L); };
  auto stab = zhu_dim_stabilization(builder, 6, 0);
  REQUIRE(stab.dims.size() == 3);
  CHECK(!stab.stable);
  CHECK(stab.dims[0] < stab.dims[1]);
  CHECK(stab.dims[1] < stab.dims[2]);
}

TEST_CASE("o(v)o(u) = o(v*u) on low levels of the adjoint module") {
  auto ising = build_minimal_model(3, 4, 8);
  auto q = zhu_algebra(ising, 0);
  REQUIRE(q.dim() == 3);
  for (long i = 0; i < q.dim(); ++i)
    for (long j = 0; j < q.dim(); ++j) {
      GradedMap oi = o_operator(*ising, ising->adjoint, q.reps[i], 0);
      GradedMap oj = o_operator(*ising, ising->adjoint, q.reps[j], 0);
      GradedMap lhs = oi.composed_after(oj);
      auto star = zhu_star(*ising, q.reps[i], q.reps[j], 0);
      REQUIRE(star.ok);
      GradedMap rhs = o_operator(*ising, ising->adjoint, star.value, 0);
      CHECK(compare_maps_in_window(lhs, rhs).empty());
    }
}

TEST_CASE("class of the circle element acts as zero through o()") {
  auto ising = build_minimal_model(3, 4, 8);
  // every generator of O_0 has o(.) = 0 on level 0
  for (int ve = 0; ve < ising->elem_count() && ve < 8; ++ve) {
    for (const auto& [ukey, ud] : ising->space->levels) {
      if (ising->elem_weight(ve) + ising->space->weight_of(ukey) + Rational(1) >
          ising->space->cutoff)
        continue;
      for (int ui = 0; ui < ud; ++ui) {
        auto r = zhu_circle(*ising, ve, GVec::unit(ising->space, ukey, ui), 0);
        if (!r.ok || r.value.is_zero()) continue;
        GradedMap o = o_operator(*ising, ising->adjoint, r.value, 0);
        CHECK(o.is_zero_in_window());
      }
    }
  }
}

TEST_CASE("o tilde span on the adjoint module contains the positive-wt circle family") {
  auto ising = build_minimal_model(3, 4, 6);
  FlatSpan ot = o_tilde_span(*ising, ising->adjoint, 0);
  OnSpanOptions opt;
  opt.positive_only = true;
  opt.include_l_family = false;
  FlatSpan on = o_n_span(*ising, 0, opt);
  for (const auto& row : on.span.rows()) {
    GVec g{ising->space, {}};
    int off = 0;
    for (long key : on.flat.keys) {
      int d = ising->space->dim(key);
      std::vector<Rational> part(row.begin() + off, row.begin() + off + d);
      if (!is_zero_vec(part)) g.parts[key] = part;
      off += d;
    }
    CHECK(ot.contains(g));
  }
}

TEST_CASE("B + O~ spanning check on the ising adjoint module") {
  auto ising = build_minimal_model(3, 4, 8);
  // B: homogeneous complement of C_2(W)
  auto cm = cm_subspace(*ising, ising->adjoint, 2);
  std::vector<GVec> b_basis;
  b2_complement(*ising, cm.span, &b_basis);
  // L' = L - (2N+2) * (max generator weight) = 8 - 2*2 = 4
  auto rep = b_plus_otilde_check(*ising, ising->adjoint, 0, b_basis, Rational(4));
  CHECK(rep.precondition_ok);
  CHECK(rep.passed);

  // B = full space: trivially passes
  std::vector<GVec> full;
  for (const auto& [k, d] : ising->space->levels)
    for (int i = 0; i < d; ++i) full.push_back(GVec::unit(ising->space, k, i));
  auto rep2 = b_plus_otilde_check(*ising, ising->adjoint, 0, full, Rational(4));
  CHECK(rep2.passed);

  // B = 0 fails the precondition (C_2 misses the vacuum) and the coverage
  auto rep3 = b_plus_otilde_check(*ising, ising->adjoint, 0, {}, Rational(4));
  CHECK(!rep3.passed);
}

TEST_CASE("omega ideal reduction on the ising A_0") {
  auto ising = build_minimal_model(3, 4, 8);
  auto q = zhu_algebra(ising, 0);
  REQUIRE(q.dim() == 3);
  // keeping all three eigenvalues keeps the whole semisimple algebra
  auto dims = omega_ideal_reduction(q, ising->simple_weights, 2);
  REQUIRE(dims.size() == 2);
  CHECK(dims[0] == 3);
  CHECK(dims[1] == 3);
  // keeping only the vacuum eigenvalue leaves one block
  auto dims1 = omega_ideal_reduction(q, {Rational(0)}, 2);
  CHECK(dims1[0] == 1);
  CHECK(dims1[1] == 1);
  // keeping nothing kills everything (ideal generated by the unit)
  auto dims0 = omega_ideal_reduction(q, {}, 1);
  CHECK(dims0[0] == 0);
}
