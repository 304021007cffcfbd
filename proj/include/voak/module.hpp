#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "voak/graded.hpp"

namespace voak {

// Mode-action tables of a VOA on a graded space, truncated at the space
// cutoff. Keys are (basis element id in the acting VOA, mode n).
struct TruncatedModule {
  std::string name;
  SpacePtr space;
  std::map<std::pair<int, long>, GradedMap> action;

  const GradedMap* mode(int elem, long n) const;
};

using ModulePtr = std::shared_ptr<const TruncatedModule>;

struct TruncatedVOA {
  std::string name;
  SpacePtr space;
  TruncatedModule adjoint;   // V acting on itself
  int vacuum_elem = -1;
  GVec omega;                // Virasoro element as a combination of basis elements
  Rational central_charge;
  std::vector<Rational> simple_weights;  // model metadata
  FlatIndex flat;            // element ids = flat indices into `space`

  explicit TruncatedVOA(SpacePtr s) : space(s), omega(GVec::zero(s)), flat(*s) {}

  int elem_count() const { return flat.total; }
  long elem_level(int id) const;
  int elem_index_in_level(int id) const;
  Rational elem_weight(int id) const { return space->weight_of(elem_level(id)); }
  std::string elem_label(int id) const;
  GVec elem_vec(int id) const;
  int elem_id(long level_key, int i) const { return flat.index(level_key, i); }
};

using VOAPtr = std::shared_ptr<const TruncatedVOA>;

// Applies mode n of a basis element; window-aware even when the table has
// no entry for (elem, n).
Windowed<GVec> act(const TruncatedVOA& v, const TruncatedModule& m, int elem, long n,
                   const GVec& u);

// Same for a general element of V given as a vector (by linearity).
Windowed<GVec> act_elem(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                        long n, const GVec& u);

// Virasoro modes: L(k) = omega_{k+1}.
Windowed<GVec> act_L(const TruncatedVOA& v, const TruncatedModule& m, long k, const GVec& u);

// Mode map of a general element as a GradedMap (sum of scaled basis maps).
GradedMap elem_mode_map(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x,
                        long n);

// The element v_n w of V, computed from the adjoint tables.
Windowed<GVec> voa_product(const TruncatedVOA& v, int elem, long n, const GVec& w);

// Restricted dual: same graded dimensions, adjoint mode action
//   <v'_m w', w> built from Y(e^{zL(1)} (-z^-2)^{L(0)} v, z^{-1}).
// Requires integral L(0)-semisimple weights on V (true for the shipped VOAs).
TruncatedModule restricted_dual(const TruncatedVOA& v, const TruncatedModule& m,
                                SpacePtr* dual_space_out = nullptr);

// graded_dimension: (weight, dim) pairs sorted by weight, levels <= cutoff.
std::vector<std::pair<Rational, int>> graded_dimension(const GradedSpace& s);

// Restricts a module (and its tables) to a smaller cutoff.
SpacePtr restrict_space(const GradedSpace& s, const Rational& cutoff);
TruncatedModule restrict_module(const TruncatedModule& m, SpacePtr target);

// Homogeneous subspace of a graded space, one reduced row space per level.
struct Subspace {
  SpacePtr ambient;
  std::map<long, RowSpan> per_level;

  explicit Subspace(SpacePtr a) : ambient(std::move(a)) {}
  void insert_homogeneous(const GVec& v);
  bool contains(const GVec& v) const;
  int rank_at(long key) const;
  long total_rank() const;
  // dim(ambient/this) restricted to levels <= cutoff
  long codim() const;
};

}  // namespace voak
