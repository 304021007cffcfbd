#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voak/mode_calc.hpp"
#include "voak/models.hpp"

using namespace voak;

TEST_CASE("heisenberg borcherds residuals vanish in-window") {
  auto h = build_heisenberg(4);
  auto rep = borcherds_sweep(*h, h->adjoint, 4);
  CHECK(rep.failed == 0);
  CHECK(rep.passed > 100);
}

TEST_CASE("vacuum element makes every borcherds instance trivial") {
  auto h = build_heisenberg(3);
  GVec u = h->elem_vec(h->vacuum_elem);
  for (long p = -3; p <= 3; ++p)
    for (long q = -3; q <= 3; ++q)
      for (long n = -3; n <= 3; ++n) {
        auto r = borcherds_residual(*h, h->adjoint, h->vacuum_elem, h->vacuum_elem, u, p,
                                    q, n);
        if (r.ok) CHECK(r.value.is_zero());
      }
}

TEST_CASE("derived heisenberg bracket [a_m, a_n] = m d_{m+n,0}") {
  auto h = build_heisenberg(5);
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  for (long m = -4; m <= 4; ++m)
    for (long n = -4; n <= 4; ++n) {
      auto got = bracket_operator(*h, h->adjoint, alpha, alpha, m, n);
      if (!got.ok) continue;
      GradedMap expect = GradedMap::zero(h->space, h->space, Rational(-m - n));
      if (m + n == 0) {
        for (const auto& [k, d] : h->space->levels)
          expect.blocks[k] = SparseMatrix::identity(d).scaled(Rational(m));
      }
      CHECK(compare_maps_in_window(got.value, expect).empty());
    }
}

TEST_CASE("derived virasoro bracket [L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3-m) d") {
  Rational c(1, 2);
  auto v = build_virasoro(c, 8);
  int om = v->elem_id(*v->space->key_of(Rational(2)), 0);
  for (long m = -4; m <= 4; ++m)
    for (long n = -4; n <= 4; ++n) {
      // bracket of omega modes: [omega_{m+1}, omega_{n+1}]
      auto got = bracket_operator(*v, v->adjoint, om, om, m + 1, n + 1);
      if (!got.ok) continue;
      GradedMap expect = elem_mode_map(*v, v->adjoint, v->omega, m + n + 1)
                             .scaled(Rational(m - n));
      if (m + n == 0) {
        Rational central = c * Rational(m * m * m - m, 12);
        expect = expect.plus(GradedMap::identity(v->space), central);
      }
      CHECK(compare_maps_in_window(got.value, expect).empty());
    }
}

TEST_CASE("commutator examples") {
  auto h = build_heisenberg(4);
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  GVec vac = h->elem_vec(h->vacuum_elem);
  // [a_1, a_{-1}] |0> = |0>
  auto r = commutator_residual(*h, h->adjoint, alpha, alpha, 1, -1, vac);
  REQUIRE(r.ok);
  CHECK(r.value.is_zero());  // residual of the identity instance

  auto vir = build_virasoro(Rational(7), 5);
  int om = vir->elem_id(*vir->space->key_of(Rational(2)), 0);
  GVec v0 = vir->elem_vec(vir->vacuum_elem);
  // [L_0, L_{-2}] |0> = 2 L_{-2} |0>
  auto l2 = act_L(*vir, vir->adjoint, -2, v0);
  REQUIRE(l2.ok);
  auto left = act_L(*vir, vir->adjoint, 0, l2.value);
  REQUIRE(left.ok);
  GVec expect = l2.value;
  expect.scale(Rational(2));
  expect.add(left.value, Rational(-1));
  CHECK(expect.is_zero());
  // commutator residual form
  auto cr = commutator_residual(*vir, vir->adjoint, om, om, 1, -1, v0);
  REQUIRE(cr.ok);
  CHECK(cr.value.is_zero());
}

TEST_CASE("normal products") {
  auto h = build_heisenberg(5);
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  Field fa = field_of_elem(*h, h->adjoint, alpha);
  Field id = identity_field(h->space);

  // vacuum field: 1 *_n b = 0 for n >= 0, and 1 *_{-1} b = b
  Field z0 = normal_product(id, 0, fa);
  for (const auto& [n, g] : z0.modes) CHECK(g.is_zero_in_window());
  Field back = normal_product(id, -1, fa);
  CHECK(back.same_as(fa));

  // a *_0 a = field of a_0 a = 0
  Field a0a = normal_product(fa, 0, fa);
  for (const auto& [n, g] : a0a.modes) CHECK(g.is_zero_in_window());

  // a *_{-1} a = field of a_{-1} a: compare against the table
  Field composite = normal_product(fa, -1, fa);
  auto k2 = h->space->key_of(Rational(2));
  auto parts2 = h->elem_vec(h->elem_id(*k2, 1));  // a[-1]^2 |0>
  Field expect = field_of_vec(*h, h->adjoint, parts2);
  CHECK(composite.same_as(expect));

  // omega *_1 omega = field of 2 omega on the virasoro side
  auto v = build_virasoro(Rational(3), 6);
  Field fo = field_of_vec(*v, v->adjoint, v->omega);
  Field o1o = normal_product(fo, 1, fo);
  GVec two = v->omega;
  two.scale(Rational(2));
  Field expect2 = field_of_vec(*v, v->adjoint, two);
  CHECK(o1o.same_as(expect2));
}

TEST_CASE("locality orders") {
  auto h = build_heisenberg(5);
  Field id = identity_field(h->space);
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  Field fa = field_of_elem(*h, h->adjoint, alpha);
  auto r0 = locality_order(id, id, 5);
  CHECK(r0.found);
  CHECK(r0.order == 0);
  auto r1 = locality_order(fa, fa, 5);
  CHECK(r1.found);
  CHECK(r1.order == 2);

  auto v = build_virasoro(Rational(1, 2), 6);
  Field fo = field_of_vec(*v, v->adjoint, v->omega);
  auto r2 = locality_order(fo, fo, 6);
  CHECK(r2.found);
  CHECK(r2.order == 4);

  // bound exceeded reporting
  auto rb = locality_order(fo, fo, 2);
  CHECK(!rb.found);
  CHECK(rb.bound == 2);
}

TEST_CASE("module axiom suite on shipped models") {
  auto h = build_heisenberg(4);
  AxiomCheckConfig cfg;
  cfg.weight_budget = 4;
  cfg.sample_count = 10;
  auto rep = check_module_axioms(*h, h->adjoint, cfg);
  CHECK(rep.failed == 0);

  auto ising = build_minimal_model(3, 4, 6);
  AxiomCheckConfig cfg2;
  cfg2.weight_budget = 4;
  cfg2.sample_count = 10;
  auto rep2 = check_module_axioms(*ising, ising->adjoint, cfg2);
  CHECK(rep2.failed == 0);
}

TEST_CASE("corrupted table is detected") {
  auto h = build_heisenberg(4);
  TruncatedVOA broken = *h;
  // perturb one structure constant: a_{-1} acting level 0 -> 1
  int alpha = h->elem_id(*h->space->key_of(Rational(1)), 0);
  auto key = std::make_pair(alpha, -1L);
  auto it = broken.adjoint.action.find(key);
  REQUIRE(it != broken.adjoint.action.end());
  auto k0 = h->space->key_of(Rational(0));
  SparseMatrix b = *it->second.block(*k0);
  b.add_to(0, 0, Rational(1));
  it->second.set_block(*k0, b);
  AxiomCheckConfig cfg;
  cfg.weight_budget = 3;
  cfg.sample_count = 0;
  auto rep = check_module_axioms(broken, broken.adjoint, cfg);
  CHECK(rep.failed > 0);
}

TEST_CASE("skew symmetry of the derived bracket") {
  auto v = build_virasoro(Rational(2), 6);
  // [v_m, u_n] + [u_n, v_m] = 0: the two bracket expansions agree up to sign
  for (int ve = 0; ve < v->elem_count() && ve < 5; ++ve)
    for (int ue = 0; ue < v->elem_count() && ue < 5; ++ue)
      for (long m = -2; m <= 2; ++m)
        for (long n = -2; n <= 2; ++n) {
          auto a = bracket_operator(*v, v->adjoint, ve, ue, m, n);
          auto b = bracket_operator(*v, v->adjoint, ue, ve, n, m);
          if (!a.ok || !b.ok) continue;
          CHECK(compare_maps_in_window(a.value, b.value.scaled(Rational(-1))).empty());
        }
}

TEST_CASE("L(-1)-derivative as a table identity") {
  auto h = build_heisenberg(4);
  for (int ve = 0; ve < h->elem_count(); ++ve) {
    auto lv = act_L(*h, h->adjoint, -1, h->elem_vec(ve));
    if (!lv.ok) continue;
    for (long n = -3; n <= 3; ++n) {
      GradedMap lhs = elem_mode_map(*h, h->adjoint, lv.value, n);
      GradedMap rhs =
          field_of_elem(*h, h->adjoint, ve).mode_or_zero(n - 1).scaled(Rational(-n));
      CHECK(compare_maps_in_window(lhs, rhs).empty());
    }
  }
}
