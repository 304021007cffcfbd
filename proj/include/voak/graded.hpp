#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "voak/sparse_matrix.hpp"

namespace voak {

// Weight-graded space truncated at a cutoff. Weights are rationals with a
// common denominator `denom`, so levels are keyed by the integer
// key = weight * denom.
struct GradedSpace {
  Rational cutoff;
  long denom = 1;
  std::map<long, int> levels;                          // key -> dimension
  std::map<long, std::vector<std::string>> labels;     // optional, per level
  std::map<long, SparseMatrix> l0_nil;                 // nilpotent part of L(0), optional

  Rational weight_of(long key) const { return Rational(key, denom); }
  std::optional<long> key_of(const Rational& w) const;
  int dim(long key) const;
  long total_dim() const;
  bool has_jordan_levels() const;
  std::string label(long key, int i) const;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// Vector in a graded space, stored per level; zero parts pruned.
struct GVec {
  SpacePtr space;
  std::map<long, std::vector<Rational>> parts;

  static GVec zero(SpacePtr s) { return GVec{std::move(s), {}}; }
  static GVec unit(SpacePtr s, long key, int i);

  bool is_zero() const;
  void add(const GVec& o, const Rational& scale = Rational(1));
  void scale(const Rational& c);
  void prune();
  // flattened coordinates over sorted level keys restricted to `keys`
  std::vector<Rational> flatten(const std::vector<long>& keys) const;
};

template <typename T>
struct Windowed {
  T value;
  bool ok = true;  // false: the computation left the truncation window
};

// Homogeneous degree-d map between graded spaces; blocks keyed by the
// source level. Levels in `oow` carry no usable block (lost to truncation).
struct GradedMap {
  SpacePtr src;
  SpacePtr dst;
  Rational degree;
  std::map<long, SparseMatrix> blocks;
  std::set<long> oow;
  // exact: the blocks describe the map at every level, nothing was lost to
  // truncation (identity, exact zero). Lets compositions with an exact zero
  // stay exactly zero instead of inheriting unknowns.
  bool exact = false;

  static GradedMap zero(SpacePtr src, SpacePtr dst, const Rational& degree,
                        bool exact = false);
  static GradedMap identity(SpacePtr s);

  bool is_exactly_zero() const { return exact && blocks.empty() && oow.empty(); }

  // target level key in dst for a given source key, if representable
  std::optional<long> target_key(long src_key) const;
  bool in_window(long src_key) const;

  const SparseMatrix* block(long src_key) const;
  void set_block(long src_key, SparseMatrix b);
  void mark_oow(long src_key) { oow.insert(src_key); blocks.erase(src_key); }
  // marks every source level whose target leaves the window as unknown
  void mark_boundary();

  Windowed<GVec> apply(const GVec& v) const;
  bool is_zero_in_window() const;

  GradedMap composed_after(const GradedMap& first) const;  // this ∘ first
  GradedMap plus(const GradedMap& o, const Rational& scale = Rational(1)) const;
  GradedMap scaled(const Rational& c) const;
  GradedMap transposed_dual() const;  // blocks transposed, for dual modules

  friend bool operator==(const GradedMap& a, const GradedMap& b);
};

// Flattened coordinates for a window of a graded space.
struct FlatIndex {
  std::vector<long> keys;
  std::map<long, int> offset;
  int total = 0;

  explicit FlatIndex(const GradedSpace& s, std::optional<Rational> up_to = std::nullopt,
                     bool descending = false);
  int index(long key, int i) const;
};

struct L0SplitResult {
  std::map<long, Rational> semisimple;   // level key -> weight
  std::map<long, SparseMatrix> nilpotent;
};

struct NotGeneralizedEigen : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits a level-preserving operator into wt*id + N with N nilpotent;
// throws NotGeneralizedEigen when a level block has a different eigenvalue.
L0SplitResult l0_split(const std::map<long, SparseMatrix>& op, const GradedSpace& s);

}  // namespace voak
