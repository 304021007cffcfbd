#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "voak/models.hpp"
#include "voak/pbw.hpp"

namespace voak {

namespace {

void partitions_rec(int n, int maxpart, int minpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= minpart; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, minpart, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> partitions_of(int n, int minpart) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (n >= 0) partitions_rec(n, n, minpart, cur, out);
  return out;
}

std::string monomial_label(const std::vector<int>& parts, const std::string& gen,
                           const std::string& vac) {
  if (parts.empty()) return vac;
  std::string s;
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    s += gen + "[-" + std::to_string(parts[i]) + "]";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s + vac;
}

SpacePtr make_pbw_space(int gen_weight, int mult, const Rational& offset, int depth,
                        const std::string& gen_symbol, const std::string& vac_symbol,
                        PBWBasis* basis_out) {
  auto s = std::make_shared<GradedSpace>();
  Rational den(offset.den_str() == "1" ? 1 : std::stol(offset.den_str()));
  s->denom = den.to_long();
  s->cutoff = offset + Rational(depth);
  PBWBasis basis;
  basis.gen_weight = gen_weight;
  basis.mult = mult;
  for (int n = 0; n <= depth; ++n) {
    auto parts = partitions_of(n, gen_weight);
    if (parts.empty()) continue;
    Rational w = offset + Rational(n);
    long key = (w * Rational(s->denom)).to_long();
    s->levels[key] = static_cast<int>(parts.size()) * mult;
    std::vector<std::string> labels;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
      basis.slot_of[parts[pi]] = static_cast<int>(basis.parts_by_slot.size());
      basis.parts_by_slot.push_back(parts[pi]);
      for (int c = 0; c < mult; ++c) {
        std::string l = monomial_label(parts[pi], gen_symbol, vac_symbol);
        if (mult > 1) l += "@" + std::to_string(c);
        labels.push_back(l);
      }
    }
    s->labels[key] = std::move(labels);
  }
  if (basis_out) *basis_out = std::move(basis);
  return s;
}

void mark_boundary_oow(GradedMap& g) { g.mark_boundary(); }

namespace {

long osc_span(const GradedSpace& s) {
  if (s.levels.empty()) return 0;
  Rational lo = s.weight_of(s.levels.begin()->first);
  Rational hi = s.weight_of(s.levels.rbegin()->first);
  Rational d = hi - lo;
  return d.is_integer() ? d.to_long() : 0;
}

}  // namespace

std::map<std::pair<int, long>, GradedMap> build_composite_action(
    const GradedSpace& vspace, const FlatIndex& vflat, const PBWBasis& vbasis,
    SpacePtr mspace, const std::map<long, GradedMap>& gen_modes) {
  if (vbasis.mult != 1)
    throw std::invalid_argument("build_composite_action: VOA basis must have mult 1");
  std::map<std::pair<int, long>, GradedMap> out;
  const long span = osc_span(*mspace);
  const int h = vbasis.gen_weight;

  auto gen_mode = [&](long j) -> GradedMap {
    auto it = gen_modes.find(j);
    if (it != gen_modes.end()) return it->second;
    return GradedMap::zero(mspace, mspace, Rational(h) - Rational(j) - Rational(1));
  };
  auto stored_mode = [&](int elem, long n, const Rational& wt_u) -> GradedMap {
    auto it = out.find({elem, n});
    if (it != out.end()) return it->second;
    return GradedMap::zero(mspace, mspace, wt_u - Rational(n) - Rational(1));
  };

  // slots grouped by level, processed in increasing weight
  int slot = 0;
  for (long key : vflat.keys) {
    int nparts = vspace.dim(key);
    Rational wt_v = vspace.weight_of(key);
    for (int pi = 0; pi < nparts; ++pi, ++slot) {
      const auto& parts = vbasis.parts_by_slot[slot];
      int elem = vflat.index(key, pi);
      if (parts.empty()) {
        out[{elem, -1}] = GradedMap::identity(mspace);  // vacuum field
        continue;
      }
      const int n1 = parts[0];
      std::vector<int> rest(parts.begin() + 1, parts.end());
      const long wu = wt_v.to_long() - n1;
      auto uit = vbasis.slot_of.find(rest);
      if (uit == vbasis.slot_of.end())
        throw std::logic_error("build_composite_action: missing sub-monomial");
      // slot -> (level position) of the sub-monomial
      auto ukey = vspace.key_of(Rational(wu));
      if (!ukey) throw std::logic_error("build_composite_action: bad sub-level");
      // index of rest within its level
      int upos = 0;
      {
        auto uparts = partitions_of(wu, h);
        auto f = std::find(uparts.begin(), uparts.end(), rest);
        if (f == uparts.end()) throw std::logic_error("build_composite_action: lost partition");
        upos = static_cast<int>(f - uparts.begin());
      }
      int uelem = vflat.index(*ukey, upos);
      Rational wt_u(wu);

      const long k = n1 - h + 1;
      Rational sign = ((k - 1) % 2 == 0) ? Rational(1) : Rational(-1);

      for (long deg = -span; deg <= span; ++deg) {
        long m = wt_v.to_long() - 1 - deg;
        GradedMap acc = GradedMap::zero(mspace, mspace, Rational(deg));
        // creation part of the derivative field, applied last
        for (long s = -(span + k + h + 2); s <= -1; ++s) {
          Rational cf = sign * binomial(s, k - 1);
          if (cf.is_zero()) continue;
          GradedMap gj = gen_mode(s - k + 1);
          GradedMap um = stored_mode(uelem, m - s - 1, wt_u);
          if (um.blocks.empty() && um.oow.empty()) continue;
          acc = acc.plus(gj.composed_after(um), cf);
        }
        // annihilation part, applied first
        for (long s = k - 1; s <= span + k + h + 2; ++s) {
          Rational cf = sign * binomial(s, k - 1);
          if (cf.is_zero()) continue;
          GradedMap gj = gen_mode(s - k + 1);
          if (gj.blocks.empty() && gj.oow.empty()) continue;
          GradedMap um = stored_mode(uelem, m - s - 1, wt_u);
          acc = acc.plus(um.composed_after(gj), cf);
        }
        acc.mark_boundary();
        if (!acc.blocks.empty() || !acc.oow.empty()) out[{elem, m}] = std::move(acc);
      }
    }
  }
  return out;
}

namespace {

// generator mode maps alpha_j on a Fock space with zero mode a*I + J
std::map<long, GradedMap> fock_gen_modes(SpacePtr s, const PBWBasis& basis,
                                         const Rational& a, int mult) {
  std::map<long, GradedMap> out;
  long span = osc_span(*s);
  // partition lists per level, in space order
  std::map<long, std::vector<std::vector<int>>> parts_at;
  for (const auto& [key, d] : s->levels) {
    Rational w = s->weight_of(key);
    // oscillator level = weight - offset; offset = lowest weight
    Rational off = s->weight_of(s->levels.begin()->first);
    parts_at[key] = partitions_of((w - off).to_long(), 1);
  }
  auto index_of = [&](long key, const std::vector<int>& p, int c) -> int {
    const auto& ps = parts_at[key];
    auto f = std::find(ps.begin(), ps.end(), p);
    if (f == ps.end()) return -1;
    return static_cast<int>(f - ps.begin()) * mult + c;
  };

  for (long j = -span - 2; j <= span + 2; ++j) {
    GradedMap g = GradedMap::zero(s, s, Rational(-j));
    for (const auto& [key, d] : s->levels) {
      auto tk = g.target_key(key);
      if (!g.in_window(key)) continue;
      if (!tk || !s->levels.count(*tk)) continue;
      SparseMatrix b(s->dim(*tk), d);
      const auto& ps = parts_at[key];
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        for (int c = 0; c < mult; ++c) {
          int col = static_cast<int>(pi) * mult + c;
          if (j < 0) {
            std::vector<int> q = ps[pi];
            q.push_back(-j);
            std::sort(q.begin(), q.end(), std::greater<int>());
            int r = index_of(*tk, q, c);
            if (r >= 0) b.add_to(r, col, Rational(1));
          } else if (j > 0) {
            int count = static_cast<int>(std::count(ps[pi].begin(), ps[pi].end(), j));
            if (count > 0) {
              std::vector<int> q = ps[pi];
              q.erase(std::find(q.begin(), q.end(), static_cast<int>(j)));
              int r = index_of(*tk, q, c);
              if (r >= 0) b.add_to(r, col, Rational(j) * Rational(count));
            }
          } else {
            // zero mode: a*I + J, J e_c = e_{c-1}
            int r0 = index_of(*tk, ps[pi], c);
            if (r0 >= 0 && !a.is_zero()) b.add_to(r0, col, a);
            if (c >= 1) {
              int r1 = index_of(*tk, ps[pi], c - 1);
              if (r1 >= 0) b.add_to(r1, col, Rational(1));
            }
          }
        }
      }
      if (!b.is_zero()) g.blocks[key] = std::move(b);
    }
    mark_boundary_oow(g);
    out[j] = std::move(g);
  }
  return out;
}

}  // namespace

VOAPtr build_heisenberg(long L) {
  if (L < 0) throw std::invalid_argument("build_heisenberg: negative cutoff");
  PBWBasis basis;
  SpacePtr space = make_pbw_space(1, 1, Rational(0), static_cast<int>(L), "a", "|0>", &basis);
  auto gen = fock_gen_modes(space, basis, Rational(0), 1);
  auto voa = std::make_shared<TruncatedVOA>(space);
  auto tables = build_composite_action(*space, voa->flat, basis, space, gen);

  voa->name = "heisenberg";
  voa->adjoint.name = "heisenberg";
  voa->adjoint.space = space;
  voa->adjoint.action = std::move(tables);
  voa->central_charge = Rational(1);
  voa->vacuum_elem = voa->elem_id(*space->key_of(Rational(0)), 0);
  voa->simple_weights = {Rational(0)};
  if (L >= 2) {
    auto key2 = space->key_of(Rational(2));
    auto parts2 = partitions_of(2, 1);
    int pos = 0;
    for (std::size_t i = 0; i < parts2.size(); ++i)
      if (parts2[i] == std::vector<int>{1, 1}) pos = static_cast<int>(i);
    GVec om = GVec::unit(space, *key2, pos);
    om.scale(Rational(1, 2));
    voa->omega = om;
  }
  return voa;
}

ModulePtr build_fock_module(const VOAPtr& heis, const Rational& a, int mult, int depth) {
  if (mult < 1) throw std::invalid_argument("build_fock_module: mult >= 1");
  Rational offset = a * a * Rational(1, 2);
  PBWBasis mbasis;
  std::string vac = "|" + a.str() + ">";
  SpacePtr mspace = make_pbw_space(1, mult, offset, depth, "a", vac, &mbasis);

  // L(0) nilpotent part: a*J + J^2/2 on the multiplicity space
  {
    auto ms = std::const_pointer_cast<GradedSpace>(mspace);
    for (const auto& [key, d] : ms->levels) {
      SparseMatrix n(d, d);
      int nparts = d / mult;
      for (int pi = 0; pi < nparts; ++pi)
        for (int c = 0; c < mult; ++c) {
          if (c >= 1) n.add_to(pi * mult + c - 1, pi * mult + c, a);
          if (c >= 2) n.add_to(pi * mult + c - 2, pi * mult + c, Rational(1, 2));
        }
      if (!n.is_zero()) ms->l0_nil[key] = std::move(n);
    }
  }

  auto gen = fock_gen_modes(mspace, mbasis, a, mult);
  PBWBasis vbasis;
  {
    // regenerate the VOA-side partition bookkeeping
    PBWBasis tmp;
    long L = (heis->space->cutoff).to_long();
    make_pbw_space(1, 1, Rational(0), static_cast<int>(L), "a", "|0>", &tmp);
    vbasis = std::move(tmp);
  }
  auto m = std::make_shared<TruncatedModule>();
  m->name = "fock(" + a.str() + (mult > 1 ? ",d" + std::to_string(mult) : "") + ")";
  m->space = mspace;
  m->action = build_composite_action(*heis->space, heis->flat, vbasis, mspace, gen);
  return m;
}

}  // namespace voak
