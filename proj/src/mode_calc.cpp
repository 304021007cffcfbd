#include "voak/mode_calc.hpp"

#include <algorithm>
#include <sstream>

namespace voak {

namespace {

long level_span(const GradedSpace& s) {
  if (s.levels.empty()) return 0;
  Rational d = s.weight_of(s.levels.rbegin()->first) - s.weight_of(s.levels.begin()->first);
  return d.is_integer() ? d.to_long() : (d * Rational(s.denom)).to_long();
}

Rational min_weight(const GradedSpace& s) {
  if (s.levels.empty()) return Rational(0);
  return s.weight_of(s.levels.begin()->first);
}

std::string gvec_str(const TruncatedVOA& v, const GVec& x) {
  std::string s;
  for (const auto& [k, p] : x.parts)
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (!p[i].is_zero()) {
        if (!s.empty()) s += " + ";
        s += p[i].str() + "*" + x.space->label(k, i);
      }
  (void)v;
  return s.empty() ? "0" : s;
}

}  // namespace

GradedMap Field::mode_or_zero(long n) const {
  auto it = modes.find(n);
  if (it != modes.end()) return it->second;
  GradedMap g = GradedMap::zero(space, space, weight - Rational(n) - Rational(1), exact);
  g.mark_boundary();
  return g;
}

bool Field::same_as(const Field& o) const {
  if (space != o.space) return false;
  std::set<long> keys;
  for (const auto& [n, g] : modes) keys.insert(n);
  for (const auto& [n, g] : o.modes) keys.insert(n);
  for (long n : keys) {
    GradedMap a = mode_or_zero(n);
    GradedMap b = o.mode_or_zero(n);
    if (!compare_maps_in_window(a, b).empty()) return false;
  }
  return true;
}

Field field_of_elem(const TruncatedVOA& v, const TruncatedModule& m, int elem) {
  Field f{m.space, v.elem_weight(elem), {}};
  for (const auto& [key, g] : m.action)
    if (key.first == elem) f.modes[key.second] = g;
  return f;
}

Field field_of_vec(const TruncatedVOA& v, const TruncatedModule& m, const GVec& x) {
  Field f{m.space, Rational(0), {}};
  bool wt_set = false;
  std::set<long> all_modes;
  for (const auto& [k, p] : x.parts) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (!p[i].is_zero()) {
        if (!wt_set) {
          f.weight = v.space->weight_of(k);
          wt_set = true;
        } else if (!(f.weight == v.space->weight_of(k))) {
          throw std::invalid_argument("field_of_vec: element must be homogeneous");
        }
      }
  }
  for (const auto& [key, g] : m.action) all_modes.insert(key.second);
  for (long n : all_modes) {
    GradedMap g = elem_mode_map(v, m, x, n);
    if (!g.blocks.empty() || !g.oow.empty()) f.modes[n] = std::move(g);
  }
  return f;
}

Field identity_field(SpacePtr s) {
  Field f{s, Rational(0), {}};
  f.exact = true;
  f.modes[-1] = GradedMap::identity(s);
  return f;
}

Field zero_field(SpacePtr s, const Rational& weight) { return Field{s, weight, {}}; }

const Windowed<GVec>& VoaProductCache::get(int velem, long k, int welem) {
  auto key = std::make_tuple(velem, k, welem);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  auto r = voa_product(voa, velem, k, voa.elem_vec(welem));
  return memo.emplace(key, std::move(r)).first->second;
}

Windowed<GVec> borcherds_residual(const TruncatedVOA& v, const TruncatedModule& m,
                                  int velem, int welem, const GVec& u, long p, long q,
                                  long n, VoaProductCache* cache) {
  Windowed<GVec> out{GVec::zero(m.space), true};
  const Rational wtv = v.elem_weight(velem);
  const Rational wtw = v.elem_weight(welem);
  const Rational minw = min_weight(*m.space);

  // LHS: sum_i binom(q,i) (v_{p+i} w)_{q+n-i} u
  {
    long imax = (wtv + wtw).to_long() - 1 - p;  // beyond: v_{p+i} w = 0 by weight
    for (long i = 0; i <= imax; ++i) {
      Rational c = binomial(q, i);
      if (c.is_zero()) continue;
      Windowed<GVec> vw_local{GVec::zero(v.space), true};
      const Windowed<GVec>* vw = &vw_local;
      if (cache) {
        vw = &cache->get(velem, p + i, welem);
      } else {
        vw_local = voa_product(v, velem, p + i, v.elem_vec(welem));
      }
      if (!vw->ok) { out.ok = false; continue; }
      if (vw->value.is_zero()) continue;
      auto t = act_elem(v, m, vw->value, q + n - i, u);
      if (!t.ok) { out.ok = false; continue; }
      out.value.add(t.value, c);
    }
  }
  // RHS: sum_i (-1)^i binom(p,i) ( v_{p+q-i} w_{n+i} u - (-1)^p w_{p+n-i} v_{q+i} u )
  {
    Rational topu(0);
    for (const auto& [k, part] : u.parts)
      if (!is_zero_vec(part)) topu = m.space->weight_of(k);
    long bound1 = (wtw + topu - minw).to_long() - n + 1;  // w_{n+i} u = 0 beyond
    long bound2 = (wtv + topu - minw).to_long() - q + 1;  // v_{q+i} u = 0 beyond
    long imax = std::max({bound1, bound2, 0L});
    Rational psign = (p % 2 == 0) ? Rational(1) : Rational(-1);
    for (long i = 0; i <= imax; ++i) {
      Rational c = binomial(p, i);
      if (c.is_zero()) continue;
      if (i % 2 == 1) c = -c;
      auto wu = act(v, m, welem, n + i, u);
      if (!wu.ok)
        out.ok = false;
      else if (!wu.value.is_zero()) {
        auto t = act(v, m, velem, p + q - i, wu.value);
        if (!t.ok)
          out.ok = false;
        else
          out.value.add(t.value, -c);
      }
      auto vu = act(v, m, velem, q + i, u);
      if (!vu.ok)
        out.ok = false;
      else if (!vu.value.is_zero()) {
        auto t = act(v, m, welem, p + n - i, vu.value);
        if (!t.ok)
          out.ok = false;
        else
          out.value.add(t.value, c * psign);
      }
    }
  }
  return out;
}

Windowed<GVec> commutator_residual(const TruncatedVOA& v, const TruncatedModule& m,
                                   int velem, int uelem, long mm, long nn, const GVec& t,
                                   VoaProductCache* cache) {
  Windowed<GVec> out{GVec::zero(m.space), true};
  auto ut = act(v, m, uelem, nn, t);
  if (!ut.ok) out.ok = false;
  if (ut.ok && !ut.value.is_zero()) {
    auto r = act(v, m, velem, mm, ut.value);
    if (!r.ok) out.ok = false; else out.value.add(r.value);
  }
  auto vt = act(v, m, velem, mm, t);
  if (!vt.ok) out.ok = false;
  if (vt.ok && !vt.value.is_zero()) {
    auto r = act(v, m, uelem, nn, vt.value);
    if (!r.ok) out.ok = false; else out.value.add(r.value, Rational(-1));
  }
  long imax = (v.elem_weight(velem) + v.elem_weight(uelem)).to_long() - 1;
  for (long i = 0; i <= imax; ++i) {
    Rational c = binomial(mm, i);
    if (c.is_zero()) continue;
    Windowed<GVec> vu_local{GVec::zero(v.space), true};
    const Windowed<GVec>* vu = &vu_local;
    if (cache) {
      vu = &cache->get(velem, i, uelem);
    } else {
      vu_local = voa_product(v, velem, i, v.elem_vec(uelem));
    }
    if (!vu->ok) { out.ok = false; continue; }
    if (vu->value.is_zero()) continue;
    auto r = act_elem(v, m, vu->value, mm + nn - i, t);
    if (!r.ok) { out.ok = false; continue; }
    out.value.add(r.value, -c);
  }
  return out;
}

Windowed<GradedMap> bracket_operator(const TruncatedVOA& v, const TruncatedModule& m,
                                     int velem, int uelem, long mm, long nn) {
  Rational deg = v.elem_weight(velem) + v.elem_weight(uelem) - Rational(mm + nn) - Rational(2);
  Windowed<GradedMap> out{GradedMap::zero(m.space, m.space, deg), true};
  long imax = (v.elem_weight(velem) + v.elem_weight(uelem)).to_long() - 1;
  for (long i = 0; i <= imax; ++i) {
    Rational c = binomial(mm, i);
    if (c.is_zero()) continue;
    auto vu = voa_product(v, velem, i, v.elem_vec(uelem));
    if (!vu.ok) { out.ok = false; continue; }
    if (vu.value.is_zero()) continue;
    out.value = out.value.plus(elem_mode_map(v, m, vu.value, mm + nn - i), c);
  }
  return out;
}

Field normal_product(const Field& a, long n, const Field& b) {
  if (a.space != b.space) throw std::invalid_argument("normal_product: space mismatch");
  Field out{a.space, a.weight + b.weight - Rational(n) - Rational(1), {}};
  long span = level_span(*a.space);
  // j ranges: a_j or b_{m+j} vanish by weight once they lower below the bottom
  long ja_max = (a.weight + Rational(span)).to_long() + 2;
  for (long deg_i = -span; deg_i <= span; ++deg_i) {
    // mode m with degree deg_i
    Rational mr = out.weight - Rational(deg_i) - Rational(1);
    if (!mr.is_integer()) continue;
    long m = mr.to_long();
    GradedMap acc = GradedMap::zero(a.space, a.space, Rational(deg_i));
    long jb_max = (b.weight + Rational(span)).to_long() - m + 2;
    long jmax = std::max({ja_max, jb_max, 0L});
    if (n >= 0) jmax = std::min(jmax, n);
    bool any = false;
    for (long j = 0; j <= jmax; ++j) {
      Rational c = binomial(n, j);
      if (c.is_zero()) continue;
      if (j % 2 == 1) c = -c;
      GradedMap bm = b.mode_or_zero(m + j);
      if (!bm.blocks.empty() || !bm.oow.empty()) {
        acc = acc.plus(a.mode_or_zero(n - j).composed_after(bm), c);
        any = true;
      }
      GradedMap aj = a.mode_or_zero(j);
      if (!aj.blocks.empty() || !aj.oow.empty()) {
        Rational c2 = (n % 2 == 0) ? -c : c;  // -(-1)^n * (+-binom)
        acc = acc.plus(b.mode_or_zero(n + m - j).composed_after(aj), c2);
        any = true;
      }
    }
    if (any && (!acc.blocks.empty() || !acc.oow.empty())) out.modes[m] = std::move(acc);
  }
  return out;
}

LocalityResult locality_order(const Field& a, const Field& b, long bound) {
  LocalityResult res;
  res.bound = bound;
  long span = level_span(*a.space);
  long wa = a.weight.is_integer() ? a.weight.to_long() : 0;
  long wb = b.weight.is_integer() ? b.weight.to_long() : 0;
  for (long N = 0; N <= bound; ++N) {
    bool all_zero = true;
    // sum_j (-1)^j binom(N,j) [a_{r+j}, b_{s+N-j}] = 0 for all r, s
    for (long r0 = wa - 1 - span - N; r0 <= wa - 1 + span && all_zero; ++r0) {
      for (long s0 = wb - 1 - span - N; s0 <= wb - 1 + span && all_zero; ++s0) {
        Rational deg = a.weight + b.weight - Rational(r0 + s0 + N) - Rational(2);
        GradedMap acc = GradedMap::zero(a.space, a.space, deg);
        for (long j = 0; j <= N; ++j) {
          Rational c = binomial(N, j);
          if (j % 2 == 1) c = -c;
          GradedMap ar = a.mode_or_zero(r0 + j);
          GradedMap bs = b.mode_or_zero(s0 + N - j);
          acc = acc.plus(ar.composed_after(bs), c);
          acc = acc.plus(bs.composed_after(ar), -c);
        }
        res.skipped_oow += static_cast<long>(acc.oow.size());
        for (const auto& [k, blk] : acc.blocks)
          if (!blk.is_zero()) { all_zero = false; break; }
      }
    }
    if (all_zero) {
      res.found = true;
      res.order = N;
      return res;
    }
  }
  return res;
}

std::string compare_maps_in_window(const GradedMap& a, const GradedMap& b) {
  if (a.is_zero_in_window() && b.is_zero_in_window()) return "";
  if (!(a.degree == b.degree)) return "degree mismatch";
  std::set<long> keys;
  for (const auto& [k, blk] : a.blocks) keys.insert(k);
  for (const auto& [k, blk] : b.blocks) keys.insert(k);
  for (long k : keys) {
    if (a.oow.count(k) || b.oow.count(k)) continue;
    if (!a.in_window(k) || !b.in_window(k)) continue;
    const SparseMatrix* pa = a.block(k);
    const SparseMatrix* pb = b.block(k);
    if (pa && pb) {
      if (!(*pa == *pb)) return "blocks differ at source level key " + std::to_string(k);
    } else if (pa && !pa->is_zero()) {
      return "left nonzero, right zero at level key " + std::to_string(k);
    } else if (pb && !pb->is_zero()) {
      return "left zero, right nonzero at level key " + std::to_string(k);
    }
  }
  return "";
}

namespace {

struct InstanceEnum {
  // deterministic enumeration of (velem, welem, ubasis) triples with weight sums
  std::vector<std::tuple<int, int, long, int>> triples;  // velem, welem, ukey, uidx
};

}  // namespace

CheckReport borcherds_sweep(const TruncatedVOA& v, const TruncatedModule& m,
                            long weight_budget, bool keep_passes) {
  CheckReport rep;
  rep.title = "borcherds(" + m.name + ", budget=" + std::to_string(weight_budget) + ")";
  rep.keep_passes = keep_passes;
  long span = level_span(*m.space);
  Rational minw_r = min_weight(*m.space);
  VoaProductCache cache(v);
  for (int ve = 0; ve < v.elem_count(); ++ve) {
    long wv = v.elem_weight(ve).to_long();
    for (int we = 0; we < v.elem_count(); ++we) {
      long ww = v.elem_weight(we).to_long();
      for (const auto& [ukey, ud] : m.space->levels) {
        Rational wu_rel = m.space->weight_of(ukey) - minw_r;
        if (Rational(wv + ww) + wu_rel > Rational(weight_budget)) continue;
        long wu = wu_rel.to_long();  // relative level of u
        for (int ui = 0; ui < ud; ++ui) {
          GVec u = GVec::unit(m.space, ukey, ui);
          // modes outside this box act as zero on every in-window instance
          long lo = -(span + 2), hi = wv + ww + span + 1;
          for (long p = lo; p <= hi; ++p) {
            bool has_lhs = (wv + ww - 1 - p) >= 0;
            for (long q = lo; q <= hi; ++q) {
              bool has_rhs2 = (wv + wu - q - 1) >= 0;
              for (long n = lo; n <= hi; ++n) {
                long outrel = wv + ww + wu - (p + q + n) - 3;
                if (outrel < 0 || outrel > span) continue;
                bool has_rhs1 = (ww + wu - n - 1) >= 0;
                if (!has_lhs && !has_rhs1 && !has_rhs2) continue;  // vacuous
                auto r = borcherds_residual(v, m, ve, we, u, p, q, n, &cache);
                std::string desc = "v=" + v.elem_label(ve) + " w=" + v.elem_label(we) +
                                   " u=" + m.space->label(ukey, ui) + " p=" +
                                   std::to_string(p) + " q=" + std::to_string(q) +
                                   " n=" + std::to_string(n);
                if (!r.ok) {
                  rep.add_skip();
                } else if (r.value.is_zero()) {
                  rep.add_pass("borcherds", desc);
                } else {
                  rep.add_fail("borcherds", desc, "residual " + gvec_str(v, r.value));
                }
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

CheckReport check_module_axioms(const TruncatedVOA& v, const TruncatedModule& m,
                                const AxiomCheckConfig& cfg) {
  CheckReport rep;
  rep.title = "module axioms(" + m.name + ")";
  rep.keep_passes = cfg.keep_passes;
  long span = level_span(*m.space);
  Rational minw = min_weight(*m.space);

  // vacuum: Y(1,z) = id
  {
    for (long n = -span - 2; n <= span + 2; ++n) {
      const GradedMap* g = m.mode(v.vacuum_elem, n);
      GradedMap expect = (n == -1)
                             ? GradedMap::identity(m.space)
                             : GradedMap::zero(m.space, m.space, -Rational(n) - Rational(1));
      GradedMap got = g ? *g : GradedMap::zero(m.space, m.space, -Rational(n) - Rational(1));
      std::string diff = compare_maps_in_window(got, expect);
      std::string desc = "vacuum mode n=" + std::to_string(n);
      if (diff.empty())
        rep.add_pass("vacuum", desc);
      else
        rep.add_fail("vacuum", desc, diff);
    }
  }

  // grading: omega_1 = wt*id + N per level
  {
    GradedMap l0 = elem_mode_map(v, m, v.omega, 1);
    bool okall = true;
    std::string why;
    for (const auto& [k, d] : m.space->levels) {
      SparseMatrix expect = SparseMatrix::identity(d).scaled(m.space->weight_of(k));
      auto nit = m.space->l0_nil.find(k);
      if (nit != m.space->l0_nil.end()) expect = expect.plus(nit->second);
      const SparseMatrix* got = l0.block(k);
      SparseMatrix g = got ? *got : SparseMatrix(d, d);
      if (!(g == expect)) {
        okall = false;
        why = "level " + m.space->weight_of(k).str();
        break;
      }
    }
    if (okall)
      rep.add_pass("grading", "omega_1 = L(0)");
    else
      rep.add_fail("grading", "omega_1 = L(0)", why);
  }

  // L(-1)-derivative: (L(-1)v)_n = -n v_{n-1}
  {
    for (int ve = 0; ve < v.elem_count(); ++ve) {
      auto lv = act_L(v, v.adjoint, -1, v.elem_vec(ve));
      if (!lv.ok) { rep.add_skip(); continue; }
      for (long n = -span - 2; n <= span + 2; ++n) {
        GradedMap lhs = elem_mode_map(v, m, lv.value, n);
        GradedMap rhs = field_of_elem(v, m, ve).mode_or_zero(n - 1).scaled(Rational(-n));
        std::string diff = compare_maps_in_window(lhs, rhs);
        std::string desc = "v=" + v.elem_label(ve) + " n=" + std::to_string(n);
        if (diff.empty())
          rep.add_pass("l-1-derivative", desc);
        else
          rep.add_fail("l-1-derivative", desc, diff);
      }
    }
  }

  // commutativity + associativity instances, exhaustive below the budget,
  // seeded sample above
  struct Inst { int ve, we; long ukey; int ui; };
  std::vector<Inst> low, high;
  for (int ve = 0; ve < v.elem_count(); ++ve)
    for (int we = 0; we < v.elem_count(); ++we)
      for (const auto& [ukey, ud] : m.space->levels)
        for (int ui = 0; ui < ud; ++ui) {
          Rational tot = v.elem_weight(ve) + v.elem_weight(we) +
                         (m.space->weight_of(ukey) - minw);
          (tot <= Rational(cfg.weight_budget) ? low : high).push_back({ve, we, ukey, ui});
        }
  std::vector<Inst> chosen = low;
  {
    Rng rng(cfg.seed);
    for (long i = 0; i < cfg.sample_count && !high.empty(); ++i)
      chosen.push_back(high[rng.below(high.size())]);
  }

  VoaProductCache cache(v);
  for (const auto& inst : chosen) {
    GVec t = GVec::unit(m.space, inst.ukey, inst.ui);
    long wv = v.elem_weight(inst.ve).to_long();
    long ww = v.elem_weight(inst.we).to_long();
    long wt_rel = (m.space->weight_of(inst.ukey) - minw).to_long();
    for (long mm = wv - 1 - span - 2; mm <= wv - 1 + span + ww + 2; ++mm)
      for (long nn = ww - 1 - span - 2; nn <= ww - 1 + span + wv + 2; ++nn) {
        long outrel = wv + ww + wt_rel - (mm + nn) - 2;
        if (outrel < 0 || outrel > span) continue;
        auto r = commutator_residual(v, m, inst.ve, inst.we, mm, nn, t, &cache);
        std::string desc = "v=" + v.elem_label(inst.ve) + " u=" + v.elem_label(inst.we) +
                           " t=" + m.space->label(inst.ukey, inst.ui) + " m=" +
                           std::to_string(mm) + " n=" + std::to_string(nn);
        if (!r.ok)
          rep.add_skip();
        else if (r.value.is_zero())
          rep.add_pass("commutativity", desc);
        else
          rep.add_fail("commutativity", desc, "residual " + gvec_str(v, r.value));
      }
    // associativity (n >= 0): the Borcherds instance p = n', q = 0
    for (long nprime = 0; nprime <= wv + ww + span + 1; ++nprime)
      for (long r0 = -span - 2; r0 <= wv + ww + span + 1; ++r0) {
        long outrel = wv + ww + wt_rel - (nprime + r0) - 2;
        if (outrel < 0 || outrel > span) continue;
        auto r = borcherds_residual(v, m, inst.ve, inst.we, t, nprime, 0, r0, &cache);
        std::string desc = "v=" + v.elem_label(inst.ve) + " w=" + v.elem_label(inst.we) +
                           " u=" + m.space->label(inst.ukey, inst.ui) + " n=" +
                           std::to_string(nprime) + " r=" + std::to_string(r0);
        if (!r.ok)
          rep.add_skip();
        else if (r.value.is_zero())
          rep.add_pass("associativity", desc);
        else
          rep.add_fail("associativity", desc, "residual " + gvec_str(v, r.value));
      }
  }

  if (cfg.include_borcherds) {
    CheckReport b = borcherds_sweep(v, m, std::min<long>(cfg.weight_budget, 4),
                                    cfg.keep_passes);
    rep.merge(b);
  }
  return rep;
}

}  // namespace voak
