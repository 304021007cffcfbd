#include <algorithm>
#include <stdexcept>

#include "voak/models.hpp"
#include "voak/pbw.hpp"

namespace voak {

namespace {

using Mono = std::vector<int>;            // descending parts >= 2
using Combo = std::map<Mono, Rational>;   // exact linear combination

void combo_add(Combo& a, const Mono& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = a.find(m);
  if (it == a.end()) {
    a[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) a.erase(it);
  }
}

// PBW straightening for the vacuum Virasoro module (L(-1)|0> = 0).
struct VirStraighten {
  Rational c;
  std::map<std::pair<long, Mono>, Combo> memo;

  Combo apply(long m, const Mono& mu) {
    auto key = std::make_pair(m, mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Combo out;
    if (mu.empty()) {
      if (m <= -2) combo_add(out, Mono{static_cast<int>(-m)}, Rational(1));
      // L_m |0> = 0 for m >= -1
    } else {
      int n1 = mu[0];
      Mono rest(mu.begin() + 1, mu.end());
      if (m <= -2 && -m >= n1) {
        Mono pre{static_cast<int>(-m)};
        pre.insert(pre.end(), mu.begin(), mu.end());
        combo_add(out, pre, Rational(1));
      } else {
        // L_m L_{-n1} = L_{-n1} L_m + (m+n1) L_{m-n1} + d_{m,n1} c/12 (m^3-m)
        Combo inner = apply(m, rest);
        for (const auto& [mn, cf] : inner) {
          Combo att = apply(-static_cast<long>(n1), mn);
          for (const auto& [mn2, cf2] : att) combo_add(out, mn2, cf * cf2);
        }
        Combo tail = apply(m - n1, rest);
        for (const auto& [mn, cf] : tail)
          combo_add(out, mn, cf * Rational(m + n1));
        if (m == n1) {
          Rational central = c * Rational(m * m * m - m, 12);
          for (const auto& [mn, cf] : Combo{{rest, Rational(1)}})
            combo_add(out, mn, cf * central);
        }
      }
    }
    memo[key] = out;
    return out;
  }

  Combo apply_combo(long m, const Combo& x) {
    Combo out;
    for (const auto& [mn, cf] : x) {
      Combo y = apply(m, mn);
      for (const auto& [mn2, cf2] : y) combo_add(out, mn2, cf * cf2);
    }
    return out;
  }
};

std::map<long, GradedMap> virasoro_gen_modes(SpacePtr s, VirStraighten& str) {
  std::map<long, GradedMap> out;
  long span = 0;
  if (!s->levels.empty())
    span = (s->weight_of(s->levels.rbegin()->first) -
            s->weight_of(s->levels.begin()->first))
               .to_long();
  std::map<long, std::vector<Mono>> parts_at;
  for (const auto& [key, d] : s->levels)
    parts_at[key] = partitions_of(static_cast<int>(s->weight_of(key).to_long()), 2);
  auto index_of = [&](long key, const Mono& p) -> int {
    auto it = parts_at.find(key);
    if (it == parts_at.end()) return -1;
    auto f = std::find(it->second.begin(), it->second.end(), p);
    if (f == it->second.end()) return -1;
    return static_cast<int>(f - it->second.begin());
  };
  // omega_j = L_{j-1}
  for (long j = -span - 2; j <= span + 2; ++j) {
    GradedMap g = GradedMap::zero(s, s, Rational(1 - j));
    for (const auto& [key, d] : s->levels) {
      if (!g.in_window(key)) continue;
      auto tk = g.target_key(key);
      if (!tk || !s->levels.count(*tk)) continue;
      SparseMatrix b(s->dim(*tk), d);
      const auto& ps = parts_at[key];
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        Combo y = str.apply(j - 1, ps[pi]);
        for (const auto& [mn, cf] : y) {
          int r = index_of(*tk, mn);
          if (r >= 0) b.add_to(r, static_cast<int>(pi), cf);
        }
      }
      if (!b.is_zero()) g.blocks[key] = std::move(b);
    }
    mark_boundary_oow(g);
    out[j] = std::move(g);
  }
  return out;
}

VOAPtr assemble_virasoro(const Rational& c, long L, const std::string& name,
                         std::vector<Rational> simple_weights, SpacePtr* internal_out,
                         TruncatedModule* internal_adjoint_out) {
  if (L < 0) throw std::invalid_argument("virasoro: negative cutoff");
  long margin = L / 2 + 1;
  PBWBasis ibasis;
  SpacePtr ispace =
      make_pbw_space(2, 1, Rational(0), static_cast<int>(L + margin), "L", "|0>", &ibasis);
  PBWBasis pbasis;
  SpacePtr pspace = make_pbw_space(2, 1, Rational(0), static_cast<int>(L), "L", "|0>", &pbasis);

  VirStraighten str{c, {}};
  auto gen = virasoro_gen_modes(ispace, str);

  auto voa = std::make_shared<TruncatedVOA>(pspace);
  auto internal_tables = build_composite_action(*pspace, voa->flat, pbasis, ispace, gen);

  TruncatedModule internal;
  internal.name = name;
  internal.space = ispace;
  internal.action = std::move(internal_tables);

  voa->name = name;
  voa->adjoint = restrict_module(internal, pspace);
  voa->adjoint.name = name;
  voa->central_charge = c;
  voa->vacuum_elem = voa->elem_id(*pspace->key_of(Rational(0)), 0);
  voa->simple_weights = std::move(simple_weights);
  if (L >= 2) {
    auto key2 = pspace->key_of(Rational(2));
    voa->omega = GVec::unit(pspace, *key2, 0);  // the single partition [2]
  }
  if (internal_out) *internal_out = ispace;
  if (internal_adjoint_out) *internal_adjoint_out = std::move(internal);
  return voa;
}

}  // namespace

VOAPtr build_virasoro(const Rational& c, long L) {
  return assemble_virasoro(c, L, "virasoro(c=" + c.str() + ")", {Rational(0)}, nullptr,
                           nullptr);
}

VOAPtr build_minimal_model(long p, long q, long L) {
  if (p < 2 || q < 2) throw std::invalid_argument("minimal model: p,q >= 2");
  {
    long a = p, b = q;
    while (b) { long t = a % b; a = b; b = t; }
    if (a != 1) throw std::invalid_argument("minimal model: p,q must be coprime");
  }
  Rational c = Rational(1) - Rational(6 * (p - q) * (p - q), p * q);
  std::vector<Rational> hs;
  for (long r = 1; r < p; ++r)
    for (long s = 1; s < q; ++s) {
      Rational h = Rational((q * r - p * s) * (q * r - p * s) - (p - q) * (p - q), 4 * p * q);
      if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
    }
  std::sort(hs.begin(), hs.end());

  std::string name = "minimal(" + std::to_string(p) + "," + std::to_string(q) + ")";
  VOAPtr generic = assemble_virasoro(c, L, name, hs, nullptr, nullptr);
  SpacePtr gs = generic->space;

  // level-wise contravariant form; adjoint of L_n is L_{-n}
  VirStraighten str{c, {}};
  std::map<long, std::vector<Mono>> parts_at;
  for (const auto& [key, d] : gs->levels)
    parts_at[key] = partitions_of(static_cast<int>(gs->weight_of(key).to_long()), 2);

  auto pairing = [&](const Mono& lam, const Mono& mu) -> Rational {
    Combo state{{mu, Rational(1)}};
    for (auto it = lam.begin(); it != lam.end() && !state.empty(); ++it)
      state = str.apply_combo(*it, state);
    auto f = state.find(Mono{});
    return f == state.end() ? Rational(0) : f->second;
  };

  // projection / embedding per level from the kernel of the form
  std::map<long, SparseMatrix> proj, embed;
  auto quo = std::make_shared<GradedSpace>();
  quo->cutoff = gs->cutoff;
  quo->denom = gs->denom;
  for (const auto& [key, d] : gs->levels) {
    const auto& ps = parts_at[key];
    SparseMatrix gram(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational v = pairing(ps[i], ps[j]);
        if (!v.is_zero()) gram.set(i, j, v);
      }
    auto kb = kernel_basis(gram);
    RowSpan ker(d);
    for (auto& v : kb) ker.insert(v);
    auto piv = ker.pivot_cols_sorted();
    auto freec = ker.free_cols();
    int dq = static_cast<int>(freec.size());
    if (dq == 0) continue;
    quo->levels[key] = dq;
    std::vector<std::string> labels;
    for (int f : freec) labels.push_back(gs->label(key, f));
    quo->labels[key] = labels;

    SparseMatrix P(dq, d), E(d, dq);
    for (int qi = 0; qi < dq; ++qi) E.set(freec[qi], qi, Rational(1));
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> e = dense_zero(d);
      e[j] = Rational(1);
      ker.reduce(e);
      for (int qi = 0; qi < dq; ++qi)
        if (!e[freec[qi]].is_zero()) P.set(qi, j, e[freec[qi]]);
    }
    proj[key] = std::move(P);
    embed[key] = std::move(E);
  }

  auto voa = std::make_shared<TruncatedVOA>(quo);
  voa->name = name;
  voa->central_charge = c;
  voa->simple_weights = hs;
  voa->adjoint.name = name;
  voa->adjoint.space = quo;

  // surviving element ids: (level, position among free columns)
  std::map<int, int> old_to_new;  // old elem id -> new elem id
  {
    FlatIndex oldflat(*gs);
    for (const auto& [key, dq] : quo->levels) {
      RowSpan dummy(0);
      (void)dummy;
      // free columns at this level
      const auto& E = embed.at(key);
      for (int qi = 0; qi < dq; ++qi) {
        int oldpos = -1;
        for (const auto& t : E.entries())
          if (t.col == qi) oldpos = t.row;
        old_to_new[oldflat.index(key, oldpos)] = voa->flat.index(key, qi);
      }
    }
  }

  for (const auto& [keypair, g] : generic->adjoint.action) {
    auto nit = old_to_new.find(keypair.first);
    if (nit == old_to_new.end()) continue;  // representative died
    GradedMap h = GradedMap::zero(quo, quo, g.degree);
    for (const auto& [src, b] : g.blocks) {
      if (!quo->levels.count(src)) continue;
      auto tk = h.target_key(src);
      if (!tk || !quo->levels.count(*tk)) continue;
      SparseMatrix nb = proj.at(*tk).mul(b).mul(embed.at(src));
      if (!nb.is_zero()) h.blocks[src] = std::move(nb);
    }
    if (!h.blocks.empty()) voa->adjoint.action[{nit->second, keypair.second}] = std::move(h);
  }

  {
    auto k0 = quo->key_of(Rational(0));
    if (!k0 || quo->dim(*k0) != 1)
      throw std::logic_error("minimal model: vacuum did not survive the quotient");
    voa->vacuum_elem = voa->elem_id(*k0, 0);
  }
  if (L >= 2) {
    auto k2 = quo->key_of(Rational(2));
    if (!k2 || quo->dim(*k2) < 1)
      throw std::logic_error("minimal model: omega did not survive the quotient");
    voa->omega = GVec::unit(quo, *k2, 0);
  }
  return voa;
}

}  // namespace voak
