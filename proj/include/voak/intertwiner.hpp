#pragma once

#include <optional>

#include "voak/mode_calc.hpp"
#include "voak/module.hpp"
#include "voak/report.hpp"

namespace voak {

// Log-free mode family of type (W: U -> T); modes[welem][r] has degree
// wt(w) - r - 1. Absent modes are zero in-window (boundary handled on read).
struct ModeFamily {
  ModulePtr W, U, T;
  std::vector<std::map<Rational, GradedMap>> modes;

  ModeFamily() = default;
  ModeFamily(ModulePtr w, ModulePtr u, ModulePtr t);
  int welem_count() const { return static_cast<int>(modes.size()); }
  Rational welem_weight(int welem) const;
  GradedMap mode_or_zero(int welem, const Rational& r) const;
  void set_mode(int welem, const Rational& r, GradedMap g);
  bool is_zero_in_window() const;
  bool same_as(const ModeFamily& o) const;
  // family of a general W-vector, by linearity
  GradedMap vec_mode(const GVec& w, const Rational& r) const;
};

struct LogIntertwiner {
  std::string name;
  VOAPtr voa;
  ModulePtr W, U, T;
  int K = 0;
  std::vector<ModeFamily> comp;  // comp[i] = the log^i component, i = 0..K

  const ModeFamily& component(int i) const { return comp.at(i); }
};

// (z L(-1) - z d/dz) on a log-free family, with L(-1) taken in the
// commutativity-derived form L^T(-1) F - F L^U(-1).
ModeFamily lminus_shift_operator(const TruncatedVOA& v, const ModeFamily& f);

struct NilpotencyResult {
  bool found = false;
  long order = 0;  // smallest k with A^k f = 0 at truncation
  long bound = 0;
};
NilpotencyResult nilpotency_order(const TruncatedVOA& v, const ModeFamily& f, long bound);

// Full log intertwiner from an L(-1)-nilpotent component-zero family.
// Throws NotNilpotent when the bound is exhausted.
struct NotNilpotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
LogIntertwiner reconstruct(const VOAPtr& voa, const ModeFamily& y0, long bound = 16);

// log^m component; verifies the differential relation
//   (i+1) w_{(r,i+1)} = N^T w_{(r,i)} - w_{(r,i)} N^U - (N^W w)_{(r,i)}
// coefficientwise before returning. Throws RelationViolated on failure.
struct RelationViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
ModeFamily log_component(const TruncatedVOA& v, const LogIntertwiner& y, int m);

struct IntertwinerCheckConfig {
  long weight_budget = 4;
  bool include_borcherds = true;
  bool keep_passes = false;
};
CheckReport check_intertwiner_axioms(const LogIntertwiner& y,
                                     const IntertwinerCheckConfig& cfg = {});

// the module vertex operator Y^M viewed as an ordinary intertwiner
LogIntertwiner intertwiner_from_module(const VOAPtr& voa, const ModulePtr& m,
                                       const std::string& name);

// Free-field intertwiner of type (F_lambda : U -> T) where U is the Fock
// module with zero mode J (Jordan cell, mult components) and T the one with
// zero mode lambda + J. Log degree = mult - 1 for lambda != 0.
LogIntertwiner fock_intertwiner(const VOAPtr& heis, const Rational& lambda, int mult,
                                int depth, const std::string& name);

// post-compose with a module map T -> T2 (f must intertwine the actions)
LogIntertwiner compose_with_map(const LogIntertwiner& y, const ModulePtr& t2,
                                const GradedMap& f, const std::string& name);

LogIntertwiner scaled_intertwiner(const LogIntertwiner& y, const Rational& c,
                                  const std::string& name);

struct JoinResult {
  LogIntertwiner joined;
  GradedMap p1;  // T -> T1
  GradedMap p2;  // T -> T2
};
JoinResult join(const LogIntertwiner& y1, const LogIntertwiner& y2,
                const std::string& name);

// solves for f : T2 -> T1 with f(Y2(w,z)u) = Y1(w,z)u; the witness is
// verified (mode equations and V-linearity) before it is returned
std::optional<GradedMap> dominates(const LogIntertwiner& y2, const LogIntertwiner& y1);

bool surjectivity(const LogIntertwiner& y);

}  // namespace voak
