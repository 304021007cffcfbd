#pragma once

#include "voak/module.hpp"
#include "voak/report.hpp"

namespace voak {

// A field acting on a module: mode family n -> map, with a formal weight so
// that mode n has degree weight - n - 1.
struct Field {
  SpacePtr space;
  Rational weight;
  std::map<long, GradedMap> modes;
  bool exact = false;  // absent modes are exactly zero, not truncated away

  GradedMap mode_or_zero(long n) const;
  bool same_as(const Field& o) const;  // equal modes in-window
};

Field field_of_elem(const TruncatedVOA& v, const TruncatedModule& m, int elem);
Field field_of_vec(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x);
Field identity_field(SpacePtr s);
Field zero_field(SpacePtr s, const Rational& weight);

// Memo for structure constants v_k w, shared across identity instances.
struct VoaProductCache {
  const TruncatedVOA& voa;
  std::map<std::tuple<int, long, int>, Windowed<GVec>> memo;
  explicit VoaProductCache(const TruncatedVOA& v) : voa(v) {}
  const Windowed<GVec>& get(int velem, long k, int welem);
};

// LHS - RHS of the Borcherds identity instance (v, w, u; p, q, n) on a
// module; ok = false when the instance left the window.
Windowed<GVec> borcherds_residual(const TruncatedVOA& v, const TruncatedModule& m,
                                  int velem, int welem, const GVec& u, long p, long q,
                                  long n, VoaProductCache* cache = nullptr);

// [v_mm, u_nn] t  -  sum_i binom(mm,i) (v_i u)_{mm+nn-i} t
Windowed<GVec> commutator_residual(const TruncatedVOA& v, const TruncatedModule& m,
                                   int velem, int uelem, long mm, long nn, const GVec& t,
                                   VoaProductCache* cache = nullptr);

// The derived bracket sum_i binom(mm,i) (v_i u)_{mm+nn-i} as an operator;
// ok = false when a required structure constant left the window.
Windowed<GradedMap> bracket_operator(const TruncatedVOA& v, const TruncatedModule& m,
                                     int velem, int uelem, long mm, long nn);

// n-th normal (residue) product of two fields.
Field normal_product(const Field& a, long n, const Field& b);

struct LocalityResult {
  bool found = false;
  long order = 0;        // minimal N with (x-z)^N [a(z), b(x)] = 0 at truncation
  long bound = 0;
  long skipped_oow = 0;
};
LocalityResult locality_order(const Field& a, const Field& b, long bound);

struct AxiomCheckConfig {
  long weight_budget = 6;     // exhaustive below, sampled above
  long sample_count = 200;    // per check family, above budget
  std::uint64_t seed = 1;
  bool include_borcherds = true;
  bool keep_passes = false;
};

CheckReport check_module_axioms(const TruncatedVOA& v, const TruncatedModule& m,
                                const AxiomCheckConfig& cfg = {});

// Exhaustive Borcherds sweep: all (v,w,u) with weight sum <= budget and all
// window-compatible (p,q,n).
CheckReport borcherds_sweep(const TruncatedVOA& v, const TruncatedModule& m,
                            long weight_budget, bool keep_passes = false);

// Compare two degree-equal operators on the in-window levels where both are
// known; returns a human-readable mismatch or empty string.
std::string compare_maps_in_window(const GradedMap& a, const GradedMap& b);

}  // namespace voak
