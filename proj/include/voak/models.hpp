#pragma once

#include "voak/module.hpp"

namespace voak {

// Free boson (rank 1 Heisenberg) vacuum VOA, c = 1, truncated at L.
VOAPtr build_heisenberg(long L);

// Vacuum Virasoro VOA (Verma module modulo L(-1)|0>) at central charge c.
VOAPtr build_virasoro(const Rational& c, long L);

// Simple quotient L(c_{p,q}, 0): vacuum Virasoro modulo the kernel of the
// level-wise contravariant form. p, q coprime, >= 2.
VOAPtr build_minimal_model(long p, long q, long L);

// Fock module over the Heisenberg VOA with zero mode a*I + J on a
// mult-dimensional multiplicity space (J the single Jordan shift cell).
// depth = number of oscillator levels kept; lowest weight is a^2/2.
ModulePtr build_fock_module(const VOAPtr& heis, const Rational& a, int mult, int depth);

// C_m(W): span of v_{-m} w over wt(v) > 0, intersected with the window.
struct CmResult {
  Subspace span;
  long quotient_dim;
  std::map<long, int> quotient_dim_by_level;  // level key -> dim of W/C_m
};
CmResult cm_subspace(const TruncatedVOA& v, const TruncatedModule& w, long m);

// Weight-homogeneous complement of C_2(V) in the window (greedy per level).
Subspace b2_complement(const TruncatedVOA& v, const Subspace& c2span,
                       std::vector<GVec>* basis_out = nullptr);

struct SpanningCheckLevel {
  Rational weight;
  int submodule_dim;
  int spanned_dim;
  bool ok;
};
struct SpanningCheckReport {
  bool passed;
  std::vector<SpanningCheckLevel> levels;
};

// Checks that ordered monomials v^1_{n_1} ... v^k_{n_k} w with v^i from the
// supplied complement and n_1 < ... < n_k span the submodule generated by w.
SpanningCheckReport c2_spanning_check(const TruncatedVOA& v, const TruncatedModule& w,
                                      const GVec& generator,
                                      const std::vector<GVec>& b2_basis,
                                      const Rational& level_bound);

}  // namespace voak
