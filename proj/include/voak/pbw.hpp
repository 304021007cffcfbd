#pragma once

#include <functional>
#include <map>
#include <vector>

#include "voak/module.hpp"

namespace voak {

// Partitions of n into parts >= minpart, descending parts,
// descending-lex order.
std::vector<std::vector<int>> partitions_of(int n, int minpart);

std::string monomial_label(const std::vector<int>& parts, const std::string& gen,
                           const std::string& vac);

// Basis bookkeeping for a PBW-monomial VOA space: one monomial per
// partition, optional multiplicity components.
struct PBWBasis {
  int gen_weight = 1;
  int mult = 1;
  std::vector<std::vector<int>> parts_by_slot;  // per (level, partition) slot
  std::map<std::vector<int>, int> slot_of;

  // elem id of (partition, component) given the flat index of the space
  int elem_of(const FlatIndex& flat, long level_key, int part_idx, int comp) const {
    return flat.index(level_key, part_idx * mult + comp);
  }
};

// Builds the space of PBW monomials: level weight = offset + n, dimensions
// = (#partitions) * mult, up to oscillator depth `depth`.
SpacePtr make_pbw_space(int gen_weight, int mult, const Rational& offset, int depth,
                        const std::string& gen_symbol, const std::string& vac_symbol,
                        PBWBasis* basis_out);

// Composite mode-action tables on a module from the generator mode maps.
//
// For v = gen_{-n} u the field of v is the normally ordered product of the
// (n - gen_weight)-th derivative field of the generator with the field of u;
// blocks that cannot be computed inside the window are marked out-of-window.
std::map<std::pair<int, long>, GradedMap> build_composite_action(
    const GradedSpace& vspace, const FlatIndex& vflat, const PBWBasis& vbasis,
    SpacePtr mspace, const std::map<long, GradedMap>& gen_modes);

// Marks every source level whose target leaves the window.
void mark_boundary_oow(GradedMap& g);

}  // namespace voak
