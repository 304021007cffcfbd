#pragma once

#include <functional>

#include "voak/module.hpp"

namespace voak {

// Reduced span of (possibly non-homogeneous) vectors over the flattened
// window coordinates.
struct FlatSpan {
  SpacePtr ambient;
  FlatIndex flat;
  RowSpan span;

  // descending weight order: pivots land on high-weight coordinates, so
  // quotient representatives concentrate at low weight
  explicit FlatSpan(SpacePtr s) : ambient(s), flat(*s, std::nullopt, true), span(flat.total) {}
  bool insert(const GVec& v) { return span.insert(v.flatten(flat.keys)); }
  bool contains(const GVec& v) const { return span.contains(v.flatten(flat.keys)); }
  int rank() const { return span.rank(); }
  long codim() const { return flat.total - span.rank(); }
};

// Res_z Y(v,z)u (1+z)^{wt v + n} / z^{2n+2}
//   = sum_i binom(wt v + n, i) v_{i-2n-2} u
Windowed<GVec> zhu_circle(const TruncatedVOA& v, int velem, const GVec& u, long n);

// n-th star product; x may be non-homogeneous (extended by linearity)
Windowed<GVec> zhu_star(const TruncatedVOA& v, const GVec& x, const GVec& u, long n);

struct OnSpanOptions {
  // default: the standard O_n families, all v plus (L(-1)+L(0))V;
  // positive_only restricts the circle family to wt(v) > 0
  bool positive_only = false;
  bool include_l_family = true;
};

FlatSpan o_n_span(const TruncatedVOA& v, long n, const OnSpanOptions& opt = {});

// module counterpart: span of sum_i binom(wt v + N, i) v^W_{-2N-2+i} w
FlatSpan o_tilde_span(const TruncatedVOA& v, const TruncatedModule& w, long n);

struct ZhuQuotient {
  VOAPtr voa;
  long n = 0;
  FlatSpan span;                      // computed O_n at this cutoff
  std::vector<int> rep_flat_indices;  // free coordinates
  std::vector<GVec> reps;             // homogeneous representatives
  std::vector<std::vector<std::vector<Rational>>> star_table;  // [i][j] -> coords
  std::vector<Rational> identity_coords;  // class of the vacuum
  bool table_complete = true;         // false when some product left the window
  bool associative = false;

  long dim() const { return static_cast<long>(reps.size()); }
  std::vector<Rational> reduce(const GVec& x) const;
};

ZhuQuotient zhu_algebra(const VOAPtr& v, long n, const OnSpanOptions& opt = {});

struct StabilizationResult {
  std::vector<long> dims;  // at cutoffs L-2, L-1, L
  bool stable = false;
};
StabilizationResult zhu_dim_stabilization(const std::function<VOAPtr(long)>& builder,
                                          long L, long n, const OnSpanOptions& opt = {});

// o(x) = grade-preserving mode, summed over homogeneous components of x,
// restricted to the first n+1 module levels.
GradedMap o_operator(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                     long n);

struct BOtildeLevel {
  Rational weight;
  int ambient_dim;
  int covered_dim;
  bool ok;
};
struct BOtildeReport {
  bool precondition_ok = true;   // B + C_{2N+2}(W) = W on checked levels
  bool passed = true;
  std::vector<BOtildeLevel> levels;
};

// checks B + O~_{N,N}(W) >= W on levels <= level_bound
BOtildeReport b_plus_otilde_check(const TruncatedVOA& v, const TruncatedModule& w, long N,
                                  const std::vector<GVec>& b_basis,
                                  const Rational& level_bound);

// Reduced algebra dims: quotient by the two-sided ideal generated by
// prod_c (omega - c)^{*s} over the kept eigenvalues c. The ideal swallows
// every omega-block outside `keep`, so the quotient retains exactly the
// kept generalized eigenspaces once s is large enough. Returns dims for
// s = 1..s_max; the first stable s is the reported reduction order.
std::vector<long> omega_ideal_reduction(const ZhuQuotient& q,
                                        const std::vector<Rational>& keep, long s_max);

}  // namespace voak
