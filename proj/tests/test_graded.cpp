#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voak/mode_calc.hpp"
#include "voak/models.hpp"

using namespace voak;

TEST_CASE("restricted dual of the heisenberg adjoint module") {
  auto h = build_heisenberg(5);
  SpacePtr dual_space;
  TruncatedModule dual = restricted_dual(*h, h->adjoint, &dual_space);

  // graded dimensions preserved level by level
  for (const auto& [k, d] : h->space->levels) CHECK(dual_space->dim(k) == d);

  // <a'_n w', w> = -<w', a_{-n} w> for the weight-1 generator with L(1)a = 0
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  {
    auto l1a = act_L(*h, h->adjoint, 1, h->elem_vec(alpha));
    REQUIRE(l1a.ok);
    CHECK(l1a.value.is_zero());
  }
  for (long n = -4; n <= 4; ++n) {
    const GradedMap* dn = dual.mode(alpha, n);
    GradedMap expect = GradedMap::zero(dual_space, dual_space, -Rational(n));
    const GradedMap* prim = h->adjoint.mode(alpha, -n);
    if (prim) {
      for (const auto& [k, b] : prim->blocks) {
        auto tk = prim->target_key(k);
        if (!tk) continue;
        expect.blocks[*tk] = b.transpose().scaled(Rational(-1));
      }
    }
    GradedMap got = dn ? *dn : GradedMap::zero(dual_space, dual_space, -Rational(n));
    CHECK(compare_maps_in_window(got, expect).empty());
  }

  // vacuum acts as the identity on the dual
  const GradedMap* v1 = dual.mode(h->vacuum_elem, -1);
  REQUIRE(v1 != nullptr);
  CHECK(compare_maps_in_window(*v1, GradedMap::identity(dual_space)).empty());

  // double dual: graded dimensions again equal
  SpacePtr dd_space;
  TruncatedModule dd = restricted_dual(*h, dual, &dd_space);
  for (const auto& [k, d] : h->space->levels) CHECK(dd_space->dim(k) == d);

  // the dual is a module: axioms hold
  AxiomCheckConfig cfg;
  cfg.weight_budget = 3;
  cfg.sample_count = 5;
  auto rep = check_module_axioms(*h, dual, cfg);
  CHECK(rep.failed == 0);
}

TEST_CASE("dual mode degree relation for general elements") {
  // for homogeneous v with L(1)v = 0 and weight k:
  // v'_m = (-1)^k transpose of v_{2k-m-2}
  auto v = build_virasoro(Rational(1, 2), 5);
  TruncatedModule dual = restricted_dual(*v, v->adjoint);
  int om = v->elem_id(*v->space->key_of(Rational(2)), 0);
  // L(1) omega = 0
  auto l1o = act_L(*v, v->adjoint, 1, v->omega);
  REQUIRE(l1o.ok);
  REQUIRE(l1o.value.is_zero());
  for (long m = -3; m <= 5; ++m) {
    const GradedMap* dn = dual.mode(om, m);
    GradedMap got = dn ? *dn : GradedMap::zero(dual.space, dual.space,
                                               Rational(2) - Rational(m) - Rational(1));
    GradedMap expect =
        GradedMap::zero(dual.space, dual.space, Rational(2) - Rational(m) - Rational(1));
    const GradedMap* prim = v->adjoint.mode(om, 2 * 2 - m - 2);
    if (prim)
      for (const auto& [k, b] : prim->blocks) {
        auto tk = prim->target_key(k);
        if (tk) expect.blocks[*tk] = b.transpose();
      }
    CHECK(compare_maps_in_window(got, expect).empty());
  }
}

TEST_CASE("l0_split") {
  auto h = build_heisenberg(3);
  // diagonal L(0): nilpotent part zero
  std::map<long, SparseMatrix> op;
  for (const auto& [k, d] : h->space->levels)
    op[k] = SparseMatrix::identity(d).scaled(h->space->weight_of(k));
  auto split = l0_split(op, *h->space);
  for (const auto& [k, n] : split.nilpotent) CHECK(n.is_zero());

  // 2x2 Jordan block at some level
  auto m2 = build_fock_module(h, Rational(1), 2, 3);
  std::map<long, SparseMatrix> op2;
  for (const auto& [k, d] : m2->space->levels) {
    SparseMatrix b = SparseMatrix::identity(d).scaled(m2->space->weight_of(k));
    auto it = m2->space->l0_nil.find(k);
    if (it != m2->space->l0_nil.end()) b = b.plus(it->second);
    op2[k] = b;
  }
  auto split2 = l0_split(op2, *m2->space);
  bool some_nonzero = false;
  for (const auto& [k, n] : split2.nilpotent) {
    if (!n.is_zero()) some_nonzero = true;
    // nilpotency: N^dim = 0 verified inside l0_split; double-check N^2 = 0 here
    CHECK(n.mul(n).is_zero());
  }
  CHECK(some_nonzero);

  // level block with a wrong eigenvalue is rejected
  std::map<long, SparseMatrix> bad = op;
  bad.begin()->second.add_to(0, 0, Rational(1, 3));
  CHECK_THROWS_AS(l0_split(bad, *h->space), NotGeneralizedEigen);
}

TEST_CASE("fock modules are modules") {
  auto h = build_heisenberg(4);
  AxiomCheckConfig cfg;
  cfg.weight_budget = 3;
  cfg.sample_count = 5;

  auto f1 = build_fock_module(h, Rational(1), 1, 4);
  auto repf = check_module_axioms(*h, *f1, cfg);
  CHECK(repf.failed == 0);

  // rank-2 Jordan zero mode
  auto m2 = build_fock_module(h, Rational(1, 2), 2, 4);
  auto repm = check_module_axioms(*h, *m2, cfg);
  CHECK(repm.failed == 0);
  CHECK(m2->space->has_jordan_levels());

  // borcherds too
  auto repb = borcherds_sweep(*h, *m2, 3);
  CHECK(repb.failed == 0);
  CHECK(repb.passed > 50);
}

TEST_CASE("fock weights are shifted by a^2/2") {
  auto h = build_heisenberg(3);
  auto f = build_fock_module(h, Rational(1, 2), 1, 3);
  Rational off(1, 8);
  auto dims = graded_dimension(*f->space);
  REQUIRE(dims.size() == 4);
  for (int n = 0; n <= 3; ++n) {
    CHECK(dims[n].first == off + Rational(n));
  }
}
